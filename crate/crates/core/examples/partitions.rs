//! Partition enumeration under the three support rules, with the
//! statistics used by the automorphism formulas.
//!
//! `cargo run --example partitions [max_size]`

use clp::partitions::{enumerate, SupportConstraint};

fn main() {
    let max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for (name, rule) in [
        ("all", SupportConstraint::All),
        ("odd parts even mult", SupportConstraint::OddPartsEvenMult),
        ("even parts even mult", SupportConstraint::EvenPartsEvenMult),
    ] {
        let parts = enumerate(rule, max);
        let counts: Vec<usize> = (0..=max).map(|k| parts.iter().filter(|p| p.size() == k).count()).collect();
        println!("{name}: counts by size {counts:?}");
    }
    println!();
    println!("{:<10} {:>4} {:>4} {:>4} {:>6}  conjugate", "λ", "o", "l", "n", "Σλ'²");
    for p in enumerate(SupportConstraint::All, max.min(5)) {
        let s = p.stats();
        println!(
            "{:<10} {:>4} {:>4} {:>4} {:>6}  {}",
            p.to_string(),
            s.odd_parts,
            s.length,
            s.n_lambda,
            s.dual_square_sum,
            p.conjugate()
        );
    }
}
