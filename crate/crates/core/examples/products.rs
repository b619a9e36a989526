//! Certified enclosures of the five infinite products and their reciprocals.
//!
//! `cargo run --release --example products`

use clp::exactnum::{int, infinite_product, ratio, to_f64, Direction, ProductKind};
use clp::measures::Family;

fn main() -> clp::Result<()> {
    for q in [2, 3, 5] {
        for family in Family::ALL {
            let kind: ProductKind = family.product_kind();
            for (label, u) in [("u=1", int(1)), ("u=1/2", ratio(1, 2))] {
                let p = infinite_product(kind, Direction::Product, &int(q), &u, 64)?;
                let r = infinite_product(kind, Direction::Reciprocal, &int(q), &u, 64)?;
                println!(
                    "q={q} {:<7} {label:<6} product {:.15}  reciprocal {:.15}  width {:.1e}",
                    family.name(),
                    to_f64(&p.midpoint()),
                    to_f64(&r.midpoint()),
                    to_f64(&p.width())
                );
            }
        }
    }
    Ok(())
}
