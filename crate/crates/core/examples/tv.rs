//! Total variation distance from the rank-n law to the limit measure, by
//! the closed-form sum and by direct summation over partitions.
//!
//! `cargo run --release --example tv [family]`

use clp::exactnum::{ratio, to_f64};
use clp::measures::Family;
use clp::tvdist::{tv_refined, Method};

fn main() -> clp::Result<()> {
    let families: Vec<Family> = match std::env::args().nth(1) {
        Some(s) => vec![s.parse()?],
        None => Family::ALL.to_vec(),
    };
    let width = ratio(1, 1_000_000_000_000);
    for family in families {
        for q in [2u64, 3, 4, 5] {
            if family.check_q(q).is_err() {
                continue;
            }
            for n in 1..=4 {
                let a = tv_refined(family, n, q, Method::Proposition, &width)?;
                let b = tv_refined(family, n, q, Method::Direct, &width)?;
                let agree = a.interval.intersects(&b.interval);
                println!(
                    "{:<7} q={q} n={n}  {:.12}  {:.12}  {}",
                    family.name(),
                    to_f64(&a.interval.midpoint()),
                    to_f64(&b.interval.midpoint()),
                    if agree { "agree" } else { "DISAGREE" }
                );
            }
        }
    }
    Ok(())
}
