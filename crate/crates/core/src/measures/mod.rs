//! Cohen–Lenstra type measures on partitions for the five group families.
//!
//! For each family the limit measure is `N_u · u^|λ| / |Aut_*(λ)|`, where
//! `N_u` is an infinite product, and the finite-rank measure `Λ` (the law of
//! the Jordan type at eigenvalue 1 of a uniform group element) is
//! `(1/|Aut_*(λ)|)` times a partial sum of Euler's expansion of the same
//! product.

mod sampler;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use sampler::{sample, SampleOutcome, SampleRun, SamplerConfig};

use crate::error::{Error, Result};
use crate::exactnum::{
    descending_product, int, pochhammer, pow, BigRational, Direction, InfiniteProduct,
    PochhammerVariant, ProductKind, RationalInterval,
};
use crate::partitions::{enumerate, Partition, SupportConstraint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "gl")]
    Gl,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "sp")]
    Sp,
    #[serde(rename = "o-odd")]
    OOdd,
    #[serde(rename = "o-even")]
    OEven,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Gl, Family::U, Family::Sp, Family::OOdd, Family::OEven];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::U => "u",
            Family::Sp => "sp",
            Family::OOdd => "o-odd",
            Family::OEven => "o-even",
        }
    }

    pub fn support(self) -> SupportConstraint {
        match self {
            Family::Gl | Family::U => SupportConstraint::All,
            Family::Sp | Family::OEven => SupportConstraint::OddPartsEvenMult,
            Family::OOdd => SupportConstraint::EvenPartsEvenMult,
        }
    }

    /// Largest partition size carried by `Λ` at rank `n`.
    pub fn size_bound(self, n: u32) -> u32 {
        match self {
            Family::Gl | Family::U | Family::OOdd => n,
            Family::Sp | Family::OEven => 2 * n,
        }
    }

    /// Dimension of the natural module of the rank-`n` group.
    pub fn dimension(self, n: u32) -> u32 {
        self.size_bound(n)
    }

    /// Infinite product normalising the limit measure (before the O-family
    /// factor `1/(1+u)` or `1/(1+u^2)`).
    pub fn product_kind(self) -> ProductKind {
        match self {
            Family::Gl => ProductKind::Gl,
            Family::U => ProductKind::U,
            Family::Sp | Family::OOdd | Family::OEven => ProductKind::OddExp,
        }
    }

    pub fn check_q(self, q: u64) -> Result<()> {
        if !is_prime_power(q) {
            return Err(Error::NotPrimePower(q));
        }
        match self {
            Family::OOdd if q % 2 == 0 => Err(Error::ParityMismatch {
                family: self,
                q,
                expected: "odd",
            }),
            Family::OEven if q % 2 == 1 => Err(Error::ParityMismatch {
                family: self,
                q,
                expected: "even",
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "u" => Ok(Family::U),
            "sp" => Ok(Family::Sp),
            "o-odd" => Ok(Family::OOdd),
            "o-even" => Ok(Family::OEven),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

/// Smallest prime factor and exponent if `q = p^k`.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_decomposition(q).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureParams {
    pub family: Family,
    pub q: u64,
    pub u: BigRational,
}

impl MeasureParams {
    pub fn new(family: Family, q: u64) -> Self {
        Self {
            family,
            q,
            u: BigRational::one(),
        }
    }

    pub fn with_u(mut self, u: BigRational) -> Self {
        self.u = u;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.family.check_q(self.q)?;
        if self.u.is_negative() || self.u > BigRational::one() {
            return Err(Error::DeformationOutOfRange(self.u.to_string()));
        }
        Ok(())
    }
}

fn check_support(family: Family, lambda: &Partition) -> Result<()> {
    if family.support().admits(lambda) {
        Ok(())
    } else {
        Err(Error::OutsideSupport {
            family,
            partition: lambda.to_string(),
        })
    }
}

/// `∏_i ∏_{k=1}^{⌊m_i/2⌋} (1 - q^{-2k})`
fn half_multiplicity_product(q: &BigRational, lambda: &Partition) -> BigRational {
    let q2 = q * q;
    lambda
        .multiplicities()
        .values()
        .map(|&m| pochhammer(&q2, m / 2, PochhammerVariant::Plain).expect("q^2 > 1"))
        .product()
}

/// `|Aut_*(λ)|` for the family's formula.
pub fn aut_order(family: Family, lambda: &Partition, q: u64) -> Result<BigRational> {
    family.check_q(q)?;
    check_support(family, lambda)?;
    Ok(aut_order_unchecked(family, lambda, &int(q as i64)))
}

/// The formula at an arbitrary rational `q > 1`, without parity or support
/// validation. Exponents are integral on the family's support.
pub fn aut_order_unchecked(family: Family, lambda: &Partition, q: &BigRational) -> BigRational {
    let s = lambda.stats();
    match family {
        Family::Gl | Family::U => {
            let variant = if family == Family::Gl {
                PochhammerVariant::Plain
            } else {
                PochhammerVariant::Signed
            };
            let prod: BigRational = s
                .multiplicities
                .values()
                .map(|&m| pochhammer(q, m, variant).expect("q > 1"))
                .product();
            pow(q, s.dual_square_sum as i64) * prod
        }
        Family::Sp | Family::OOdd | Family::OEven => {
            let n = s.n_lambda as i64;
            let size = s.size as i64;
            let odd = s.odd_parts as i64;
            let twice = match family {
                Family::Sp => 2 * n + size + odd,
                Family::OOdd => 2 * n + size - odd,
                _ => 2 * n + size + odd - 2 * s.length as i64,
            };
            debug_assert!(twice % 2 == 0, "non-integral exponent for {lambda}");
            pow(q, twice / 2) * half_multiplicity_product(q, lambda)
        }
    }
}

/// Coefficient of `u^j` (`u^{2j}` for the odd-exponent kind) in Euler's
/// expansion of the product (`reciprocal = false`) or its reciprocal.
pub fn euler_coefficient(kind: ProductKind, reciprocal: bool, q: &BigRational, j: u32) -> BigRational {
    let j64 = j as i64;
    match kind {
        ProductKind::Gl => {
            let d = descending_product(q, j, false);
            if reciprocal {
                pow(q, j64 * (j64 - 1) / 2) / d
            } else {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                int(sign) / d
            }
        }
        ProductKind::U => {
            let d = descending_product(q, j, true);
            if reciprocal {
                pow(q, j64 * (j64 - 1) / 2) / d
            } else {
                let sign = if (j64 * (j64 + 1) / 2) % 2 == 0 { 1 } else { -1 };
                int(sign) / d
            }
        }
        ProductKind::OddExp => {
            let d = descending_product(&(q * q), j, false);
            if reciprocal {
                pow(q, j64 * j64) / d
            } else {
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                sign * pow(q, j64) / d
            }
        }
        ProductKind::EvenExp => panic!("the constant product has no expansion in u"),
    }
}

/// `sum_{j=0}^{k}` of the product-side Euler coefficients: the partial sum
/// that converges to the normalising product at `u = 1`.
pub fn euler_partial_sum(kind: ProductKind, q: &BigRational, k: u32) -> BigRational {
    (0..=k).map(|j| euler_coefficient(kind, false, q, j)).sum()
}

/// Normalising constant of the (deformed) limit measure, as an interval.
pub fn limit_normalizer(params: &MeasureParams, truncation: u32) -> Result<RationalInterval> {
    params.validate()?;
    let q = int(params.q as i64);
    let u = &params.u;
    let base = InfiniteProduct::new(params.family.product_kind()).enclose(&q, u, truncation)?;
    let divisor = match params.family {
        Family::OOdd => BigRational::one() + u,
        Family::OEven => BigRational::one() + u * u,
        _ => BigRational::one(),
    };
    Ok(base.scale(&divisor.recip()))
}

/// `P_*(λ)` (or its `u`-deformation) as an interval.
pub fn limit_measure(params: &MeasureParams, lambda: &Partition, truncation: u32) -> Result<RationalInterval> {
    check_support(params.family, lambda)?;
    let norm = limit_normalizer(params, truncation)?;
    let weight = pow(&params.u, lambda.size() as i64)
        / aut_order_unchecked(params.family, lambda, &int(params.q as i64));
    Ok(norm.scale(&weight))
}

/// `Λ_{*, z-1, n}(λ)` exactly. Partitions outside the support or size bound get 0.
pub fn lambda_measure(family: Family, n: u32, q: u64, lambda: &Partition) -> Result<BigRational> {
    check_rank(family, n, q)?;
    Ok(lambda_measure_unchecked(family, n, &int(q as i64), lambda))
}

fn lambda_measure_unchecked(family: Family, n: u32, q: &BigRational, lambda: &Partition) -> BigRational {
    let size = lambda.size();
    if size > family.size_bound(n) || !family.support().admits(lambda) {
        return BigRational::zero();
    }
    if matches!(family, Family::Sp | Family::OEven) && size % 2 == 1 {
        return BigRational::zero();
    }
    let aut = aut_order_unchecked(family, lambda, q);
    let (partial, half) = match family {
        Family::Gl | Family::U => (euler_partial_sum(family.product_kind(), q, n - size), false),
        Family::Sp => (euler_partial_sum(ProductKind::OddExp, q, n - size / 2), false),
        Family::OOdd => (euler_partial_sum(ProductKind::OddExp, q, (n - size) / 2), true),
        Family::OEven => (euler_partial_sum(ProductKind::OddExp, q, n - size / 2), true),
    };
    let value = partial / aut;
    if half {
        value / int(2)
    } else {
        value
    }
}

// There is no minus-type group in dimension 0, so the even mixture (and the
// closed form, which gives mass 1/2 there) needs n >= 1.
fn check_rank(family: Family, n: u32, q: u64) -> Result<()> {
    family.check_q(q)?;
    if n == 0 && matches!(family, Family::OOdd | Family::OEven) {
        return Err(Error::InvalidParameter(format!("family {family} needs n >= 1")));
    }
    Ok(())
}

/// Exact distribution `Λ` over the family's support at rank `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    /// In enumeration order; zero entries are kept.
    pub entries: Vec<(Partition, BigRational)>,
}

impl DistributionTable {
    pub fn mass(&self) -> BigRational {
        self.entries.iter().map(|(_, v)| v.clone()).sum()
    }

    pub fn get(&self, lambda: &Partition) -> BigRational {
        self.entries
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

pub fn distribution_table(family: Family, n: u32, q: u64) -> Result<DistributionTable> {
    check_rank(family, n, q)?;
    let qr = int(q as i64);
    let support = enumerate(family.support(), family.size_bound(n));
    let entries = support
        .into_par_iter()
        .map(|l| {
            let v = lambda_measure_unchecked(family, n, &qr, &l);
            (l, v)
        })
        .collect();
    Ok(DistributionTable { family, n, q, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationReport {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    pub mass: BigRational,
    pub min_value: BigRational,
}

impl NormalizationReport {
    pub fn passed(&self) -> bool {
        self.mass.is_one() && !self.min_value.is_negative()
    }
}

pub fn normalization_check(family: Family, n: u32, q: u64) -> Result<NormalizationReport> {
    let table = distribution_table(family, n, q)?;
    let min_value = table
        .entries
        .iter()
        .map(|(_, v)| v.clone())
        .min()
        .unwrap_or_else(BigRational::zero);
    Ok(NormalizationReport {
        family,
        n,
        q,
        mass: table.mass(),
        min_value,
    })
}

/// `sum_{|λ| = m, λ in support} 1/|Aut_*(λ)|` from the closed forms.
pub fn level_mass(family: Family, q: &BigRational, m: u32) -> BigRational {
    let sp = |k: u32| euler_coefficient(ProductKind::OddExp, true, q, k);
    match family {
        Family::Gl | Family::U => euler_coefficient(family.product_kind(), true, q, m),
        Family::Sp => {
            if m % 2 == 0 {
                sp(m / 2)
            } else {
                BigRational::zero()
            }
        }
        Family::OOdd => sp(m / 2),
        Family::OEven => {
            if m % 2 == 1 {
                BigRational::zero()
            } else if m == 0 {
                BigRational::one()
            } else {
                sp(m / 2) + sp(m / 2 - 1)
            }
        }
    }
}

pub(crate) fn reciprocal_even_exp(q: &BigRational, truncation: u32) -> Result<RationalInterval> {
    InfiniteProduct {
        kind: ProductKind::EvenExp,
        direction: Direction::Reciprocal,
        first_index: 1,
    }
    .enclose(q, &BigRational::one(), truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn aut_examples() {
        assert_eq!(aut_order(Family::Gl, &p("1,1"), 2).unwrap(), int(6));
        assert_eq!(aut_order(Family::U, &p("1"), 2).unwrap(), int(3));
        assert_eq!(aut_order(Family::OEven, &p("1,1"), 2).unwrap(), ratio(3, 2));
        assert_eq!(aut_order(Family::Gl, &Partition::empty(), 5).unwrap(), int(1));
        // |Aut(Z/p^2)| = p^2 - p
        assert_eq!(aut_order(Family::Gl, &p("2"), 3).unwrap(), int(6));
    }

    #[test]
    fn aut_rejects_bad_input() {
        assert!(matches!(aut_order(Family::Sp, &p("1"), 3), Err(Error::OutsideSupport { .. })));
        assert!(matches!(aut_order(Family::OOdd, &p("2"), 3), Err(Error::OutsideSupport { .. })));
        assert!(matches!(aut_order(Family::OOdd, &p("1"), 4), Err(Error::ParityMismatch { .. })));
        assert!(matches!(aut_order(Family::OEven, &p("2"), 3), Err(Error::ParityMismatch { .. })));
        assert!(matches!(aut_order(Family::Gl, &p("1"), 6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn lambda_spot_values() {
        let cases: &[(Family, u32, u64, &str, BigRational)] = &[
            (Family::Gl, 2, 2, "-", ratio(1, 3)),
            (Family::Gl, 2, 2, "2", ratio(1, 2)),
            (Family::Gl, 2, 2, "1,1", ratio(1, 6)),
            (Family::U, 1, 2, "-", ratio(2, 3)),
            (Family::U, 1, 2, "1", ratio(1, 3)),
            (Family::OEven, 1, 2, "-", ratio(1, 6)),
            (Family::OEven, 1, 2, "1,1", ratio(1, 3)),
            (Family::OEven, 1, 2, "2", ratio(1, 2)),
            (Family::OOdd, 1, 3, "-", ratio(1, 2)),
            (Family::OOdd, 1, 3, "1", ratio(1, 2)),
            (Family::Gl, 1, 2, "-", int(0)),
            (Family::Gl, 1, 2, "1", int(1)),
        ];
        for (f, n, q, l, want) in cases {
            assert_eq!(&lambda_measure(*f, *n, *q, &p(l)).unwrap(), want, "{f} n={n} q={q} {l}");
        }
        // beyond the size bound
        assert_eq!(lambda_measure(Family::Gl, 2, 2, &p("3")).unwrap(), int(0));
        assert!(lambda_measure(Family::OOdd, 1, 2, &p("1")).is_err());
    }

    #[test]
    fn sp_table_matches_gl2_over_f2() {
        let t = distribution_table(Family::Sp, 1, 2).unwrap();
        assert_eq!(t.get(&Partition::empty()), ratio(1, 3));
        assert_eq!(t.get(&p("2")), ratio(1, 2));
        assert_eq!(t.get(&p("1,1")), ratio(1, 6));
        assert_eq!(t.mass(), int(1));
    }

    #[test]
    fn normalization_on_small_grid() {
        for f in Family::ALL {
            for q in [2u64, 3, 4, 5] {
                if f.check_q(q).is_err() {
                    continue;
                }
                for n in 1..=5 {
                    let r = normalization_check(f, n, q).unwrap();
                    assert!(r.passed(), "{f} n={n} q={q} mass={}", r.mass);
                }
            }
        }
    }

    #[test]
    fn level_mass_matches_partition_sums() {
        for f in Family::ALL {
            for q in [2i64, 3] {
                let qr = int(q);
                for m in 0..=9 {
                    let mut level = Vec::new();
                    crate::partitions::enumerate_size(f.support(), m, &mut level);
                    let direct: BigRational =
                        level.iter().map(|l| aut_order_unchecked(f, l, &qr).recip()).sum();
                    assert_eq!(direct, level_mass(f, &qr, m), "{f} q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn limit_measure_examples() {
        let params = MeasureParams::new(Family::Gl, 2);
        let v = limit_measure(&params, &Partition::empty(), 40).unwrap();
        assert!(v.lo() <= &ratio(288_788_095_087, 1_000_000_000_000));
        assert!(v.hi() >= &ratio(288_788_095_086, 1_000_000_000_000));
        assert!(v.width() < ratio(1, 1_000_000_000));

        let point = params.clone().with_u(int(0));
        assert_eq!(limit_measure(&point, &Partition::empty(), 5).unwrap(), RationalInterval::one());
        assert_eq!(limit_measure(&point, &p("2,1"), 5).unwrap(), RationalInterval::zero());

        let o = MeasureParams::new(Family::OEven, 2);
        let v = limit_measure(&o, &p("2"), 40).unwrap();
        let lo = crate::exactnum::to_f64(v.lo());
        assert!((lo - 0.209_711).abs() < 1e-5, "{lo}");
    }

    #[test]
    fn limit_measure_rejects_bad_params() {
        let params = MeasureParams::new(Family::Sp, 3);
        assert!(limit_measure(&params, &p("1"), 10).is_err());
        let bad_u = MeasureParams::new(Family::Gl, 3).with_u(ratio(3, 2));
        assert!(limit_measure(&bad_u, &Partition::empty(), 10).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_decomposition(8), Some((2, 3)));
        assert_eq!(prime_power_decomposition(9), Some((3, 2)));
        assert_eq!(prime_power_decomposition(7), Some((7, 1)));
        assert_eq!(prime_power_decomposition(12), None);
        assert_eq!(prime_power_decomposition(1), None);
    }
}
