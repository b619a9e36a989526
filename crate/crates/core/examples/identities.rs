//! Checks the product expansions coefficient by coefficient: Euler's two
//! expansions for each product, and the partition sums of `u^|λ|/|Aut(λ)|`.
//!
//! `cargo run --release --example identities [degree]`

use std::time::Instant;

use clp::exactnum::{identity_check, int, IdentityTag};

fn main() -> clp::Result<()> {
    let degree = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let start = Instant::now();
    for q in [2, 3, 4, 5] {
        for tag in IdentityTag::ALL {
            let report = identity_check(tag, &int(q), degree)?;
            let status = if report.passed() { "ok" } else { "FAILED" };
            println!(
                "q={q} {:<11} degree {degree}: {status} (enclosure width <= {:.1e})",
                tag.name(),
                clp::exactnum::to_f64(&report.max_enclosure_width)
            );
            for m in report.mismatches.iter().take(3) {
                println!("    u^{}: sum side {} product side {}", m.degree, m.sum_side, m.product_side);
            }
        }
    }
    println!("{:.2?}", start.elapsed());
    Ok(())
}
