//! Exhaustive enumeration of small classical groups over finite fields and
//! the exact law of `λ_{z-1}` for a uniformly chosen element.

mod enumerate;
mod field;
mod forms;
mod matrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use enumerate::{
    candidate_budget, enumerate_group, enumerate_group_with_budget, jordan_type_counts, raw_candidates,
    DEFAULT_BUDGET,
};
pub use field::{Elem, FieldSpec};
pub use forms::{is_member, standard_form, Form, FormSpec, FormType};
pub use matrix::{jordan_partition_at_1, nullity_sequence, Matrix};

use crate::error::Result;
use crate::exactnum::BigRational;
use crate::measures::{distribution_table, Family};
use crate::partitions::Partition;

/// `GF(p^k)`.
pub fn field_make(p: u64, k: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, k)
}

/// A concrete group: family, natural dimension, `q` and form type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    pub dimension: usize,
    pub q: u64,
    pub form_type: FormType,
}

impl GroupSpec {
    pub fn form(&self) -> Result<FormSpec> {
        if self.family == Family::Gl {
            self.family.check_q(self.q)?;
            return FormSpec::gl(self.dimension, self.q);
        }
        standard_form(self.family, self.dimension, self.q, self.form_type)
    }

    /// The classical order formula.
    pub fn order(&self) -> BigInt {
        let q = BigInt::from(self.q);
        let qp = |e: usize| q.pow(e as u32);
        let d = self.dimension;
        match self.family {
            Family::Gl => (0..d).map(|i| qp(d) - qp(i)).product(),
            Family::U => {
                let prod: BigInt = (1..=d)
                    .map(|i| if i % 2 == 0 { qp(i) - 1 } else { qp(i) + 1 })
                    .product();
                qp(d * (d.saturating_sub(1)) / 2) * prod
            }
            Family::Sp => {
                let m = d / 2;
                qp(m * m) * (1..=m).map(|i| qp(2 * i) - 1).product::<BigInt>()
            }
            Family::OOdd | Family::OEven if d % 2 == 1 => {
                let m = d / 2;
                2 * qp(m * m) * (1..=m).map(|i| qp(2 * i) - 1).product::<BigInt>()
            }
            Family::OOdd | Family::OEven => {
                let m = d / 2;
                let sign = match self.form_type {
                    FormType::Minus => qp(m) + 1,
                    _ => qp(m) - 1,
                };
                2 * qp(m * (m - 1)) * sign * (1..m).map(|i| qp(2 * i) - 1).product::<BigInt>()
            }
        }
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.family {
            Family::Gl => "GL",
            Family::U => "U",
            Family::Sp => "Sp",
            Family::OOdd | Family::OEven => "O",
        };
        let sign = match self.form_type {
            FormType::Plus => "+",
            FormType::Minus => "-",
            FormType::None => "",
        };
        write!(f, "{name}{sign}({},{})", self.dimension, self.q)
    }
}

/// Exact counts of `λ_{z-1}` over one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalTable {
    pub group: GroupSpec,
    pub order: BigInt,
    pub counts: BTreeMap<Partition, u64>,
}

impl EmpiricalTable {
    pub fn build(group: GroupSpec) -> Result<Self> {
        let form = group.form()?;
        let (order, counts) = jordan_type_counts(&form)?;
        Ok(Self { group, order, counts })
    }

    pub fn probabilities(&self) -> BTreeMap<Partition, BigRational> {
        self.counts
            .iter()
            .map(|(l, &c)| (l.clone(), BigRational::new(BigInt::from(c), self.order.clone())))
            .collect()
    }
}

/// The law of `λ_{z-1}` at rank `n`: one group, or for the orthogonal
/// families the even mixture of the `+` and `-` groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    pub tables: Vec<EmpiricalTable>,
    pub probabilities: BTreeMap<Partition, BigRational>,
}

/// Groups whose uniform elements define `Λ` at rank `n`.
pub fn groups_for(family: Family, n: u32, q: u64) -> Vec<GroupSpec> {
    let dimension = family.dimension(n) as usize;
    let types: &[FormType] = match family {
        Family::OOdd | Family::OEven => &[FormType::Plus, FormType::Minus],
        _ => &[FormType::None],
    };
    types
        .iter()
        .map(|&form_type| GroupSpec {
            family,
            dimension,
            q,
            form_type,
        })
        .collect()
}

pub fn empirical_distribution(family: Family, n: u32, q: u64) -> Result<EmpiricalDistribution> {
    family.check_q(q)?;
    let tables = groups_for(family, n, q)
        .into_iter()
        .map(EmpiricalTable::build)
        .collect::<Result<Vec<_>>>()?;
    let weight = BigRational::new(BigInt::one(), BigInt::from(tables.len()));
    let mut probabilities = BTreeMap::new();
    for t in &tables {
        for (l, p) in t.probabilities() {
            *probabilities.entry(l).or_insert_with(BigRational::zero) += p * &weight;
        }
    }
    Ok(EmpiricalDistribution {
        family,
        n,
        q,
        tables,
        probabilities,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub partition: Partition,
    #[serde(serialize_with = "crate::exactnum::serialize_fraction")]
    pub empirical: BigRational,
    #[serde(serialize_with = "crate::exactnum::serialize_fraction")]
    pub formula: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    /// `(group, enumerated order, formula order)`
    pub orders: Vec<(GroupSpec, BigInt, BigInt)>,
    pub compared: usize,
    pub mismatches: Vec<OracleMismatch>,
    pub distribution: BTreeMap<Partition, BigRational>,
}

impl OracleReport {
    pub fn orders_match(&self) -> bool {
        self.orders.iter().all(|(_, a, b)| a == b)
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.orders_match()
    }
}

/// Compares the enumerated law against the closed-form table on the union of
/// both supports, with exact equality.
pub fn oracle_compare(family: Family, n: u32, q: u64) -> Result<OracleReport> {
    let empirical = empirical_distribution(family, n, q)?;
    let table = distribution_table(family, n, q)?;
    let mut keys: Vec<Partition> = table.entries.iter().map(|(l, _)| l.clone()).collect();
    keys.extend(empirical.probabilities.keys().cloned());
    keys.sort();
    keys.dedup();
    let mismatches = keys
        .iter()
        .filter_map(|l| {
            let e = empirical.probabilities.get(l).cloned().unwrap_or_else(BigRational::zero);
            let f = table.get(l);
            (e != f).then(|| OracleMismatch {
                partition: l.clone(),
                empirical: e,
                formula: f,
            })
        })
        .collect();
    let orders = empirical
        .tables
        .iter()
        .map(|t| (t.group, t.order.clone(), t.group.order()))
        .collect();
    Ok(OracleReport {
        family,
        n,
        q,
        orders,
        compared: keys.len(),
        mismatches,
        distribution: empirical.probabilities,
    })
}

/// Checks `g h` is a member for `pairs` seeded random pairs of elements.
pub fn closure_spot_check(group: &GroupSpec, pairs: usize, seed: u64) -> Result<bool> {
    let form = group.form()?;
    let elements = enumerate_group(&form)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let g = &elements[rng.gen_range(0..elements.len())];
        let h = &elements[rng.gen_range(0..elements.len())];
        if !is_member(&g.mul(h, &form.field), &form)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn spec(family: Family, dimension: usize, q: u64, form_type: FormType) -> GroupSpec {
        GroupSpec {
            family,
            dimension,
            q,
            form_type,
        }
    }

    fn count(g: GroupSpec) -> usize {
        enumerate_group(&g.form().unwrap()).unwrap().len()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(count(spec(Family::Gl, 2, 2, FormType::None)), 6);
        assert_eq!(count(spec(Family::OEven, 2, 2, FormType::Plus)), 2);
        assert_eq!(count(spec(Family::OEven, 2, 2, FormType::Minus)), 6);
        assert_eq!(count(spec(Family::Sp, 2, 3, FormType::None)), 24);
        assert_eq!(count(spec(Family::U, 1, 2, FormType::None)), 3);
    }

    #[test]
    fn order_formulas() {
        let cases = [
            (spec(Family::Gl, 3, 2, FormType::None), 168),
            (spec(Family::U, 2, 2, FormType::None), 18),
            (spec(Family::Sp, 4, 2, FormType::None), 720),
            (spec(Family::OOdd, 3, 3, FormType::Plus), 48),
            (spec(Family::OOdd, 2, 3, FormType::Minus), 8),
            (spec(Family::OOdd, 2, 3, FormType::Plus), 4),
            (spec(Family::OEven, 4, 2, FormType::Plus), 72),
            (spec(Family::OEven, 4, 2, FormType::Minus), 120),
        ];
        for (g, want) in cases {
            assert_eq!(g.order(), BigInt::from(want), "{g}");
            assert_eq!(count(g), want, "{g}");
        }
    }

    #[test]
    fn every_element_is_a_member() {
        for g in [
            spec(Family::U, 2, 2, FormType::None),
            spec(Family::OOdd, 3, 3, FormType::Minus),
            spec(Family::OEven, 4, 2, FormType::Minus),
        ] {
            let form = g.form().unwrap();
            for m in enumerate_group(&form).unwrap() {
                assert!(is_member(&m, &form).unwrap(), "{g}");
            }
            assert!(closure_spot_check(&g, 200, 9).unwrap());
        }
    }

    #[test]
    fn empirical_examples() {
        let d = empirical_distribution(Family::Gl, 2, 2).unwrap();
        assert_eq!(d.probabilities[&Partition::empty()], ratio(1, 3));
        assert_eq!(d.probabilities[&"2".parse().unwrap()], ratio(1, 2));
        assert_eq!(d.probabilities[&"1,1".parse().unwrap()], ratio(1, 6));

        let d = empirical_distribution(Family::U, 1, 2).unwrap();
        assert_eq!(d.probabilities[&Partition::empty()], ratio(2, 3));
        assert_eq!(d.probabilities[&"1".parse().unwrap()], ratio(1, 3));

        let d = empirical_distribution(Family::OEven, 1, 2).unwrap();
        assert_eq!(d.probabilities[&Partition::empty()], ratio(1, 6));
        assert_eq!(d.probabilities[&"1,1".parse().unwrap()], ratio(1, 3));
        assert_eq!(d.probabilities[&"2".parse().unwrap()], ratio(1, 2));
    }

    #[test]
    fn oracle_small_cases() {
        for (f, n, q) in [(Family::Gl, 2, 2), (Family::Sp, 1, 2), (Family::OOdd, 1, 3), (Family::U, 2, 2)] {
            let r = oracle_compare(f, n, q).unwrap();
            assert!(r.passed(), "{f} n={n} q={q}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let form = spec(Family::Gl, 3, 2, FormType::None).form().unwrap();
        assert!(matches!(
            enumerate_group_with_budget(&form, 100),
            Err(crate::Error::BudgetExceeded { .. })
        ));
    }
}
