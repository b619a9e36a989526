//! Exact finite-rank tables next to certified limit masses.
//!
//! `cargo run --release --example measures [family] [n] [q]`

use clp::exactnum::{decimal_hint, to_f64};
use clp::measures::{distribution_table, limit_measure, Family, MeasureParams};

fn main() -> clp::Result<()> {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().as_deref().unwrap_or("sp").parse()?;
    let n = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let q = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let table = distribution_table(family, n, q)?;
    let params = MeasureParams::new(family, q);
    println!("{} rank {n} over q = {q}: total mass {}", family.name(), table.mass());
    println!("{:<10} {:>28} {:>16} {:>16}", "λ", "finite rank", "≈", "limit");
    for (lambda, value) in &table.entries {
        let limit = limit_measure(&params, lambda, 64)?;
        println!(
            "{:<10} {:>28} {:>16} {:>16}",
            lambda.to_string(),
            value.to_string(),
            decimal_hint(value, 10),
            format!("{:.10}", to_f64(&limit.midpoint()))
        );
    }
    Ok(())
}
