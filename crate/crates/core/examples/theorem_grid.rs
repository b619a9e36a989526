//! Checks the theorem bounds on the total variation distance over a grid of
//! ranks and field sizes, printing each certified interval.
//!
//! `cargo run --release --example theorem_grid`

use std::time::Instant;

use clp::exactnum::decimal_hint;
use clp::measures::Family;
use clp::tvdist::{verify_grid, Verdict};

fn main() -> clp::Result<()> {
    let mut cells = Vec::new();
    for family in [Family::Gl, Family::U, Family::Sp] {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            cells.extend((1..=10).map(|n| (family, n, q)));
        }
    }
    for q in [3, 5, 7, 9] {
        cells.extend((1..=10).map(|n| (Family::OOdd, n, q)));
    }
    for q in [2, 4, 8] {
        cells.extend((1..=10).map(|n| (Family::OEven, n, q)));
    }
    let start = Instant::now();
    let checks = verify_grid(&cells)?;
    let mut contained = 0;
    for c in &checks {
        if c.verdict == Verdict::Contained {
            contained += 1;
        }
        println!(
            "{:<6} n={:<2} q={}  {:>12} <= [{}, {}] <= {:<12} {:?}",
            c.family.name(),
            c.n,
            c.q,
            decimal_hint(&c.lower_bound, 4),
            decimal_hint(c.tv.interval.lo(), 8),
            decimal_hint(c.tv.interval.hi(), 8),
            decimal_hint(&c.upper_bound, 4),
            c.verdict
        );
    }
    println!("{contained}/{} contained in {:.2?}", checks.len(), start.elapsed());
    Ok(())
}
