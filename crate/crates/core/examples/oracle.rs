//! Enumerates small classical groups and compares the exact law of the
//! Jordan type at eigenvalue 1 with the closed-form table.
//!
//! `cargo run --release --example oracle`

use std::time::Instant;

use clp::ffgroups::oracle_compare;
use clp::measures::Family;

fn main() -> clp::Result<()> {
    let targets: &[(Family, &[u32], &[u64])] = &[
        (Family::Gl, &[1, 2, 3, 4], &[2]),
        (Family::Gl, &[1, 2, 3], &[3]),
        (Family::Gl, &[2], &[4]),
        (Family::U, &[1, 2, 3], &[2]),
        (Family::U, &[2], &[3]),
        (Family::Sp, &[1], &[2, 3, 5]),
        (Family::Sp, &[2], &[2, 3]),
        (Family::OOdd, &[1, 2, 3], &[3, 5]),
        (Family::OOdd, &[4], &[3]),
        (Family::OEven, &[1, 2], &[2, 4]),
    ];
    for &(family, ns, qs) in targets {
        for &q in qs {
            for &n in ns {
                let start = Instant::now();
                let r = oracle_compare(family, n, q)?;
                let orders: Vec<String> = r.orders.iter().map(|(g, a, _)| format!("|{g}|={a}")).collect();
                println!(
                    "{:<6} n={n} q={q}  {}  {} partitions  {}  {:.2?}",
                    family.name(),
                    if r.passed() { "equal" } else { "MISMATCH" },
                    r.compared,
                    orders.join(" "),
                    start.elapsed()
                );
                for m in &r.mismatches {
                    println!("    {}: enumerated {} formula {}", m.partition, m.empirical, m.formula);
                }
            }
        }
    }
    Ok(())
}
