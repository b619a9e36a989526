//! Seeded draws from the limit measure, tallied against the certified masses.
//!
//! `cargo run --release --example sampling [family] [q] [count] [seed]`

use std::collections::BTreeMap;

use clp::exactnum::{ratio, to_f64};
use clp::measures::{sample, Family, MeasureParams, SampleOutcome, SamplerConfig};

fn main() -> clp::Result<()> {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().as_deref().unwrap_or("gl").parse()?;
    let q = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let params = MeasureParams::new(family, q);
    let run = sample(&params, count, seed, &ratio(1, 1_000_000), SamplerConfig::default())?;
    let mut tally = BTreeMap::new();
    for d in &run.draws {
        if let SampleOutcome::Partition(p) = d {
            *tally.entry(p.clone()).or_insert(0usize) += 1;
        }
    }
    println!("{} q={q}: {count} draws, seed {seed}", family.name());
    for (lambda, mass) in run.table.iter().filter(|(l, _)| tally.contains_key(l)).take(12) {
        let freq = tally[lambda] as f64 / count as f64;
        println!("{:<8} observed {freq:.4}  mass {:.4}", lambda.to_string(), to_f64(mass));
    }
    println!("overflow draws {}", run.overflow_count());
    Ok(())
}
