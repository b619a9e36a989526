//! Integer partitions and the multiplicity constraints that cut out the
//! supports of the symplectic and orthogonal measures.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition stored as its non-increasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `m_i`: number of parts equal to `i`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `λ'_i = #{k : λ_k >= i}`.
    pub fn conjugate(&self) -> Self {
        let Some(&largest) = self.0.first() else {
            return Self::empty();
        };
        let parts = (1..=largest)
            .map(|i| self.0.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Self(parts)
    }

    pub fn stats(&self) -> PartitionStats {
        let dual = self.conjugate();
        let n_lambda = dual.0.iter().map(|&c| (c as u64) * (c as u64).saturating_sub(1) / 2).sum();
        let dual_square_sum = dual.0.iter().map(|&c| (c as u64) * (c as u64)).sum();
        PartitionStats {
            size: self.size(),
            multiplicities: self.multiplicities(),
            odd_parts: self.0.iter().filter(|&&p| p % 2 == 1).count() as u32,
            length: self.len() as u32,
            n_lambda,
            dual_square_sum,
        }
    }
}

/// The statistics feeding the automorphism-order formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u32,
    pub multiplicities: BTreeMap<u32, u32>,
    /// `o(λ)`
    pub odd_parts: u32,
    /// `l(λ)`
    pub length: u32,
    /// `n(λ) = sum_i C(λ'_i, 2)`
    pub n_lambda: u64,
    /// `sum_i (λ'_i)^2`
    pub dual_square_sum: u64,
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `"3,1,1"` (non-increasing) or `"-"` for the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::PartitionSyntax(s.to_string()))?;
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::PartitionSyntax(s.to_string()));
        }
        Ok(Self(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SupportConstraint {
    All,
    /// every odd part has even multiplicity (symplectic; orthogonal in even characteristic)
    OddPartsEvenMult,
    /// every even part has even multiplicity (orthogonal in odd characteristic)
    EvenPartsEvenMult,
}

impl SupportConstraint {
    pub fn admits(self, lambda: &Partition) -> bool {
        let parity = match self {
            SupportConstraint::All => return true,
            SupportConstraint::OddPartsEvenMult => 1,
            SupportConstraint::EvenPartsEvenMult => 0,
        };
        lambda
            .multiplicities()
            .iter()
            .all(|(&part, &mult)| part % 2 != parity || mult % 2 == 0)
    }
}

/// Every partition of size `0..=max_size` satisfying `constraint`, ordered by
/// size and then lexicographically descending within a size.
pub fn enumerate(constraint: SupportConstraint, max_size: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for size in 0..=max_size {
        enumerate_size(constraint, size, &mut out);
    }
    out
}

/// Partitions of exactly `size` satisfying `constraint`, in descending lex order.
pub fn enumerate_size(constraint: SupportConstraint, size: u32, out: &mut Vec<Partition>) {
    let mut stack = Vec::new();
    descend(constraint, size, size, &mut stack, out);
}

// Parts are chosen as (value, multiplicity) blocks with strictly decreasing
// values, so multiplicity rules are enforced while building.
fn descend(
    constraint: SupportConstraint,
    remaining: u32,
    max_part: u32,
    stack: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(stack.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        let even_only = match constraint {
            SupportConstraint::All => false,
            SupportConstraint::OddPartsEvenMult => part % 2 == 1,
            SupportConstraint::EvenPartsEvenMult => part % 2 == 0,
        };
        let max_mult = remaining / part;
        for mult in (1..=max_mult).rev() {
            if even_only && mult % 2 == 1 {
                continue;
            }
            let before = stack.len();
            stack.extend(std::iter::repeat(part).take(mult as usize));
            descend(constraint, remaining - part * mult, part - 1, stack, out);
            stack.truncate(before);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("3,1,1").conjugate(), p("3,1,1"));
        assert_eq!(p("4").conjugate(), p("1,1,1,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p("5,3,3,1").conjugate(), p("4,3,3,1,1"));
    }

    #[test]
    fn stats_examples() {
        let s = p("3,1,1").stats();
        assert_eq!(s.size, 5);
        assert_eq!(s.multiplicities, BTreeMap::from([(1, 2), (3, 1)]));
        assert_eq!((s.odd_parts, s.length, s.n_lambda, s.dual_square_sum), (3, 3, 3, 11));

        let s = p("2").stats();
        assert_eq!(s.size, 2);
        assert_eq!(s.multiplicities, BTreeMap::from([(2, 1)]));
        assert_eq!((s.odd_parts, s.length, s.n_lambda, s.dual_square_sum), (0, 1, 0, 2));

        let s = Partition::empty().stats();
        assert_eq!(s.size, 0);
        assert!(s.multiplicities.is_empty());
        assert_eq!((s.odd_parts, s.length, s.n_lambda, s.dual_square_sum), (0, 0, 0, 0));
    }

    #[test]
    fn enumerate_all_small() {
        let got: Vec<String> = enumerate(SupportConstraint::All, 3).iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["-", "1", "2", "1,1", "3", "2,1", "1,1,1"]);
    }

    #[test]
    fn enumerate_odd_parts_even_mult() {
        let got = enumerate(SupportConstraint::OddPartsEvenMult, 4);
        let mut want: Vec<Partition> = ["-", "1,1", "2", "2,1,1", "1,1,1,1", "2,2", "4"].iter().map(|s| p(s)).collect();
        assert_eq!(got.len(), 7);
        let mut sorted = got.clone();
        sorted.sort();
        want.sort();
        assert_eq!(sorted, want);
        // size-major, descending lex inside a size
        let order: Vec<String> = got.iter().map(|x| x.to_string()).collect();
        assert_eq!(order, ["-", "2", "1,1", "4", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn enumerate_even_parts_even_mult() {
        let got: Vec<String> =
            enumerate(SupportConstraint::EvenPartsEvenMult, 3).iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["-", "1", "1,1", "3", "1,1,1"]);
    }

    #[test]
    fn partition_counts() {
        let p_k = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for n in 0..=12 {
            let expected: usize = p_k[..=n].iter().sum();
            assert_eq!(enumerate(SupportConstraint::All, n as u32).len(), expected);
        }
    }

    #[test]
    fn constrained_enumeration_matches_filter() {
        for c in [SupportConstraint::OddPartsEvenMult, SupportConstraint::EvenPartsEvenMult] {
            let filtered: Vec<Partition> =
                enumerate(SupportConstraint::All, 14).into_iter().filter(|l| c.admits(l)).collect();
            assert_eq!(enumerate(c, 14), filtered);
        }
        for l in enumerate(SupportConstraint::OddPartsEvenMult, 16) {
            assert_eq!(l.size() % 2, 0);
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(p("-"), Partition::empty());
        assert_eq!(p("3,1,1").to_string(), "3,1,1");
        assert!("1,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(parts in proptest::collection::vec(1u32..8, 0..8)) {
            let l = Partition::new(parts);
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().size(), l.size());
        }

        #[test]
        fn text_round_trip(parts in proptest::collection::vec(1u32..30, 0..10)) {
            let l = Partition::new(parts);
            prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        }
    }

    #[test]
    fn conjugation_involution_exhaustive() {
        for l in enumerate(SupportConstraint::All, 20) {
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }
}
