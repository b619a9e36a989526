//! Coefficient-by-coefficient checks of the Euler product expansions and the
//! partition-sum product formulas.
//!
//! The product side is built twice: exactly, as the unique power series with
//! constant term 1 solving the product's q-difference equation, and as an
//! interval enclosure from explicit factors plus a tail bound. A check passes
//! when the sum side equals the exact series and sits inside the enclosure.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{int, BigInt, BigRational, Direction, InfiniteProduct, ProductKind, RationalInterval, TruncatedSeries};
use crate::error::{Error, Result};
use crate::measures::{aut_order_unchecked, euler_coefficient, Family};
use crate::partitions::{enumerate_size, Partition};

/// Explicit factors in the coefficient enclosure; the tail bound covers the rest.
const ENCLOSURE_FACTORS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityTag {
    #[serde(rename = "eul-1")]
    Eul1,
    #[serde(rename = "eul-2")]
    Eul2,
    #[serde(rename = "eulU-1")]
    EulU1,
    #[serde(rename = "eulU-2")]
    EulU2,
    #[serde(rename = "eulSp-1")]
    EulSp1,
    #[serde(rename = "eulSp-2")]
    EulSp2,
    #[serde(rename = "sto-gl")]
    StoGl,
    #[serde(rename = "sto-u")]
    StoU,
    #[serde(rename = "sto-sp")]
    StoSp,
    #[serde(rename = "sto-o-odd")]
    StoOOdd,
    #[serde(rename = "sto-o-even")]
    StoOEven,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 11] = [
        IdentityTag::Eul1,
        IdentityTag::Eul2,
        IdentityTag::EulU1,
        IdentityTag::EulU2,
        IdentityTag::EulSp1,
        IdentityTag::EulSp2,
        IdentityTag::StoGl,
        IdentityTag::StoU,
        IdentityTag::StoSp,
        IdentityTag::StoOOdd,
        IdentityTag::StoOEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityTag::Eul1 => "eul-1",
            IdentityTag::Eul2 => "eul-2",
            IdentityTag::EulU1 => "eulU-1",
            IdentityTag::EulU2 => "eulU-2",
            IdentityTag::EulSp1 => "eulSp-1",
            IdentityTag::EulSp2 => "eulSp-2",
            IdentityTag::StoGl => "sto-gl",
            IdentityTag::StoU => "sto-u",
            IdentityTag::StoSp => "sto-sp",
            IdentityTag::StoOOdd => "sto-o-odd",
            IdentityTag::StoOEven => "sto-o-even",
        }
    }

    /// The infinite product on the product side.
    pub fn product(self) -> InfiniteProduct {
        use IdentityTag::*;
        let kind = match self {
            Eul1 | Eul2 | StoGl => ProductKind::Gl,
            EulU1 | EulU2 | StoU => ProductKind::U,
            EulSp1 | EulSp2 | StoSp | StoOOdd | StoOEven => ProductKind::OddExp,
        };
        let p = InfiniteProduct::new(kind);
        match self {
            Eul1 | EulU1 | EulSp1 => p,
            _ => p.reciprocal(),
        }
    }

    /// Polynomial multiplying the product: `1`, `1 + u` or `1 + u^2`.
    fn prefactor(self, degree: usize) -> TruncatedSeries {
        match self {
            IdentityTag::StoOOdd => TruncatedSeries::binomial(degree, int(1), 1),
            IdentityTag::StoOEven => TruncatedSeries::binomial(degree, int(1), 2),
            _ => TruncatedSeries::one(degree),
        }
    }

    fn partition_family(self) -> Option<Family> {
        match self {
            IdentityTag::StoGl => Some(Family::Gl),
            IdentityTag::StoU => Some(Family::U),
            IdentityTag::StoSp => Some(Family::Sp),
            IdentityTag::StoOOdd => Some(Family::OOdd),
            IdentityTag::StoOEven => Some(Family::OEven),
            _ => None,
        }
    }

    /// The sum side: Euler's closed-form coefficients, or `sum u^|λ|/|Aut_*(λ)|`.
    pub fn sum_side(self, q: &BigRational, degree: usize) -> TruncatedSeries {
        if let Some(family) = self.partition_family() {
            let coeffs: Vec<BigRational> = (0..=degree as u32)
                .into_par_iter()
                .map(|m| {
                    let mut level = Vec::new();
                    enumerate_size(family.support(), m, &mut level);
                    level_sum(family, q, m, &level)
                })
                .collect();
            return TruncatedSeries::from_coeffs(degree, coeffs);
        }
        let product = self.product();
        let e = product.kind.u_power();
        let reciprocal = product.direction == Direction::Reciprocal;
        let mut s = TruncatedSeries::zero(degree);
        for j in 0..=degree / e {
            s.set_coeff(j * e, euler_coefficient(product.kind, reciprocal, q, j as u32));
        }
        s
    }

    pub fn check_series(self, q: &BigRational, sum_side: &TruncatedSeries) -> Result<IdentityReport> {
        super::check_base(q)?;
        let degree = sum_side.degree_bound();
        let prefactor = self.prefactor(degree);
        let product = self.product();
        let exact = prefactor.mul(&product.exact_series(q, degree)?)?;
        let factors = ENCLOSURE_FACTORS;
        let raw = product.series_enclosure(q, degree, factors)?;
        let enclosure: Vec<RationalInterval> = (0..=degree)
            .map(|m| {
                let mut iv = RationalInterval::zero();
                for (k, c) in prefactor.coeffs().iter().enumerate().take(m + 1) {
                    if !c.is_zero() {
                        iv = &iv + &raw[m - k].scale(c);
                    }
                }
                iv
            })
            .collect();
        let mut mismatches = Vec::new();
        let mut outside = Vec::new();
        for m in 0..=degree {
            let got = sum_side.coeff(m);
            if got != exact.coeff(m) {
                mismatches.push(Mismatch {
                    degree: m,
                    sum_side: got.clone(),
                    product_side: exact.coeff(m).clone(),
                });
            }
            if !enclosure[m].contains(got) {
                outside.push(m);
            }
        }
        let max_enclosure_width = enclosure
            .iter()
            .map(|iv| iv.width())
            .max()
            .unwrap_or_else(BigRational::zero);
        Ok(IdentityReport {
            tag: self,
            q: q.clone(),
            degree,
            mismatches,
            outside_enclosure: outside,
            max_enclosure_width,
        })
    }
}

/// `∏_{k<=j} (q^k - s_k)` for `j = 0..=max`, with `s_k = 1`, `s_k = (-1)^k`
/// or (`squared`) the factors `q^(2k) - 1`.
fn q_factorials(q: &BigInt, max: u32, signed: bool, squared: bool) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 1..=max as usize {
        let base = if squared { 2 * k } else { k };
        let s = if signed && k % 2 == 1 { -1 } else { 1 };
        let next = out.last().unwrap() * (num_traits::pow(q.clone(), base) - s);
        out.push(next);
    }
    out
}

/// `1/|Aut(λ)| = q^e / D` with integer `D`, for integer `q`.
fn inverse_aut_parts(family: Family, lambda: &Partition, tables: &[BigInt]) -> (i64, BigInt) {
    let st = lambda.stats();
    let tri = |j: i64| j * (j + 1) / 2;
    let mut den = BigInt::one();
    let mut e: i64 = 0;
    match family {
        Family::Gl | Family::U => {
            for &mult in st.multiplicities.values() {
                den *= &tables[mult as usize];
                e += tri(mult as i64);
            }
            e -= st.dual_square_sum as i64;
        }
        _ => {
            for &mult in st.multiplicities.values() {
                den *= &tables[(mult / 2) as usize];
                e += 2 * tri((mult / 2) as i64);
            }
            let n = st.n_lambda as i64;
            let twice = match family {
                Family::Sp => 2 * n + st.size as i64 + st.odd_parts as i64,
                Family::OOdd => 2 * n + st.size as i64 - st.odd_parts as i64,
                _ => 2 * n + st.size as i64 + st.odd_parts as i64 - 2 * st.length as i64,
            };
            e -= twice / 2;
        }
    }
    (e, den)
}

/// `sum 1/|Aut(λ)|` over `level` (partitions of size `m`).
///
/// For integer `q` every denominator divides `q^(m^2) ∏_{k<=m} (q^(2k) - 1)`
/// (quotients of q-factorials are Gaussian multinomials), so the terms are
/// added as integers over that common denominator.
fn level_sum(family: Family, q: &BigRational, m: u32, level: &[Partition]) -> BigRational {
    if !q.is_integer() {
        return level.iter().map(|l| aut_order_unchecked(family, l, q).recip()).sum();
    }
    let qi = q.to_integer();
    let tables = match family {
        Family::Gl => q_factorials(&qi, m, false, false),
        Family::U => q_factorials(&qi, m, true, false),
        _ => q_factorials(&qi, m, false, true),
    };
    let common_q = (m * m) as i64;
    let common_rest = q_factorials(&qi, m, false, true).pop().unwrap();
    let mut numerator = BigInt::zero();
    for l in level {
        let (e, den) = inverse_aut_parts(family, l, &tables);
        debug_assert!(e + common_q >= 0 && (&common_rest % &den).is_zero());
        numerator += num_traits::pow(qi.clone(), (e + common_q) as usize) * (&common_rest / &den);
    }
    BigRational::new(numerator, num_traits::pow(qi, common_q as usize) * common_rest)
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown identity {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: usize,
    pub sum_side: BigRational,
    pub product_side: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub tag: IdentityTag,
    pub q: BigRational,
    pub degree: usize,
    /// Degrees where the sum side differs from the exact product series.
    pub mismatches: Vec<Mismatch>,
    /// Degrees where the sum side escapes the factor-by-factor enclosure.
    pub outside_enclosure: Vec<usize>,
    pub max_enclosure_width: BigRational,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.outside_enclosure.is_empty()
    }
}

pub fn identity_check(tag: IdentityTag, q: &BigRational, degree: usize) -> Result<IdentityReport> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    tag.check_series(q, &tag.sum_side(q, degree))
}

impl InfiniteProduct {
    /// Exact power series of the product in `u`, solving its q-difference
    /// equation coefficient by coefficient.
    pub fn exact_series(&self, q: &BigRational, degree: usize) -> Result<TruncatedSeries> {
        super::check_base(q)?;
        let e = self.kind.u_power();
        if e == 0 {
            return Err(Error::InvalidParameter(
                "constant products have no series in u".into(),
            ));
        }
        let c = self.kind.coefficient(q, self.first_index);
        let sigma = match self.kind {
            ProductKind::U => -q.recip(),
            _ => q.recip(),
        };
        let mut out = TruncatedSeries::one(degree);
        let mut sigma_pow = vec![BigRational::one(); degree + 1];
        for k in 1..=degree {
            sigma_pow[k] = &sigma_pow[k - 1] * &sigma;
        }
        for k in e..=degree {
            let prev = out.coeff(k - e);
            if prev.is_zero() {
                continue;
            }
            let denom = BigRational::one() - &sigma_pow[k];
            let value = match self.direction {
                Direction::Product => -(&c * &sigma_pow[k - e] * prev) / denom,
                Direction::Reciprocal => (&c * prev) / denom,
            };
            out.set_coeff(k, value);
        }
        Ok(out)
    }
}
