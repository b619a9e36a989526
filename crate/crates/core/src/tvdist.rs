//! Total variation distance between the limit measure `P` and the rank-`n`
//! measure `Λ`, as certified intervals, and the theorem bounds on it.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, pow, ratio, BigRational, RationalInterval};
use crate::measures::{aut_order_unchecked, euler_partial_sum, lambda_measure, level_mass, Family};
use crate::partitions::enumerate;

/// Bits kept when rounding product enclosures, so later sums stay cheap.
const PRODUCT_BITS: u32 = 256;
/// Largest truncation the adaptive refinement will try.
pub const MAX_TRUNCATION: u32 = 512;
pub const DEFAULT_TRUNCATION: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Proposition,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TvResult {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    pub interval: RationalInterval,
    pub method: Method,
    /// Explicit terms of the outer series (proposition) or largest
    /// enumerated partition size (direct).
    pub cut: u32,
    /// Explicit factors of the infinite product.
    pub product_trunc: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Contained,
    Undecided,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    pub lower_bound: BigRational,
    pub upper_bound: BigRational,
    pub verdict: Verdict,
    pub tv: TvResult,
}

// The limit measure is P(λ) = prod / (d |Aut(λ)|) and Λ(λ) = s / (d |Aut(λ)|)
// for a partial sum s depending on |λ|. Grouping partitions by the summation
// index m (|λ| = m, or |λ| = 2m for the families living on even sizes):
//   TV = c [ prod · Σ_{m>n} W_m + Σ_{m<=n} W_m |prod - s_{k(m)}| ]
// with W_m the total of 1/|Aut| at index m and c = 1/(2d).
fn half_sizes(family: Family) -> bool {
    matches!(family, Family::Sp | Family::OEven)
}

fn weight(family: Family, q: &BigRational, m: u32) -> BigRational {
    let size = if half_sizes(family) { 2 * m } else { m };
    level_mass(family, q, size)
}

fn partial_sum_index(family: Family, n: u32, m: u32) -> u32 {
    match family {
        Family::OOdd => (n - m) / 2,
        _ => n - m,
    }
}

fn outer_factor(family: Family) -> BigRational {
    match family {
        Family::OOdd | Family::OEven => ratio(1, 4),
        _ => ratio(1, 2),
    }
}

fn product_at_one(family: Family, q: &BigRational, trunc: u32) -> Result<RationalInterval> {
    Ok(crate::exactnum::at_one(family.product_kind(), q, trunc)?.round_outward(PRODUCT_BITS))
}

/// Upper bound on `Σ_{m > cut} W_m · prod`.
fn tail_bound(family: Family, q: &BigRational, cut: u32, prod: &RationalInterval, trunc: u32) -> Result<BigRational> {
    let one = BigRational::one();
    let inv_q = q.recip();
    let geometric = |from: i64| pow(q, -from) / (&one - &inv_q);
    // 1/∏(1 - q^{-2k}) bounds the ratio W_m / q^{-m} once the Pochhammer denominators are cleared
    let inv_even = crate::measures::reciprocal_even_exp(q, trunc)?.hi().clone();
    let cut = cut as i64;
    Ok(match family {
        // W_m · prod = q^{-m} ∏_{i>m}(1 - q^{-i})
        Family::Gl => geometric(cut + 1),
        Family::U => geometric(cut + 1) * prod.hi() * &inv_even,
        Family::Sp => geometric(cut + 1) * &inv_even,
        // W_m <= q^{-⌊m/2⌋}/E and each exponent repeats at most twice
        Family::OOdd => int(2) * geometric((cut + 1) / 2) * &inv_even,
        // W_m <= 2 q^{-(m-1)}/E
        Family::OEven => int(2) * geometric(cut) * &inv_even,
    })
}

fn check_args(family: Family, n: u32, q: u64) -> Result<BigRational> {
    family.check_q(q)?;
    if n == 0 {
        return Err(Error::InvalidParameter("rank n must be at least 1".into()));
    }
    Ok(int(q as i64))
}

/// The explicit expression, with the outer series cut after index `cut`
/// (`cut > n`) and the product cut after `product_trunc` factors.
pub fn tv_proposition(family: Family, n: u32, q: u64, cut: u32, product_trunc: u32) -> Result<TvResult> {
    let qr = check_args(family, n, q)?;
    if cut <= n {
        return Err(Error::InvalidParameter(format!("tail cut {cut} must exceed n = {n}")));
    }
    let prod = product_at_one(family, &qr, product_trunc)?;
    let kind = family.product_kind();
    let mut body = RationalInterval::zero();
    for m in 0..=n {
        let w = weight(family, &qr, m);
        if w.is_zero() {
            continue;
        }
        let s = euler_partial_sum(kind, &qr, partial_sum_index(family, n, m));
        body = body + (&prod - &RationalInterval::point(s)).abs().scale(&w);
    }
    let explicit: BigRational = (n + 1..=cut).map(|m| weight(family, &qr, m)).sum();
    body = body + prod.scale(&explicit);
    let tail = tail_bound(family, &qr, cut, &prod, product_trunc)?;
    body = body + RationalInterval::new(BigRational::zero(), tail)?;
    let interval = body.scale(&outer_factor(family)).clamp(&BigRational::zero(), &BigRational::one());
    Ok(TvResult {
        family,
        n,
        q,
        interval,
        method: Method::Proposition,
        cut,
        product_trunc,
    })
}

/// `½ Σ_{|λ| <= support_cut} |P(λ) - Λ(λ)|` plus half the `P`-mass beyond the cut.
pub fn tv_direct(family: Family, n: u32, q: u64, support_cut: u32, product_trunc: u32) -> Result<TvResult> {
    let qr = check_args(family, n, q)?;
    if support_cut < family.size_bound(n) {
        return Err(Error::InvalidParameter(format!(
            "support cut {support_cut} is below the size bound {}",
            family.size_bound(n)
        )));
    }
    let d = match family {
        Family::OOdd | Family::OEven => int(2),
        _ => int(1),
    };
    let prod = product_at_one(family, &qr, product_trunc)?.scale(&d.recip());
    let partitions = enumerate(family.support(), support_cut);
    let terms = partitions
        .par_iter()
        .map(|l| {
            let p = prod.scale(&aut_order_unchecked(family, l, &qr).recip());
            let lambda = lambda_measure(family, n, q, l)?;
            Ok((p.clone(), (&p - &RationalInterval::point(lambda)).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mass = RationalInterval::zero();
    let mut diff = RationalInterval::zero();
    for (p, a) in terms {
        mass = mass + p;
        diff = diff + a;
    }
    let rest = (RationalInterval::one() - mass).clamp(&BigRational::zero(), &BigRational::one());
    let interval = (diff + rest)
        .scale(&ratio(1, 2))
        .clamp(&BigRational::zero(), &BigRational::one());
    Ok(TvResult {
        family,
        n,
        q,
        interval,
        method: Method::Direct,
        cut: support_cut,
        product_trunc,
    })
}

/// The theorem's `(lower, upper)` constants for the family at `(n, q)`.
pub fn theorem_bounds(family: Family, n: u32, q: u64) -> Result<(BigRational, BigRational)> {
    check_args(family, n, q)?;
    let qr = int(q as i64);
    let at = |num: i64, den: i64, e: u32| ratio(num, den) / pow(&qr, e as i64);
    Ok(match family {
        Family::Gl => (at(38, 100, n + 1), at(14, 1, n + 1)),
        Family::U => (at(1, 6, n + 1), at(3, 1, n + 1)),
        Family::Sp => (at(2, 10, n + 1), at(25, 10, n + 1)),
        Family::OOdd if n % 2 == 0 => (at(1, 10, n / 2), at(13, 10, n / 2)),
        Family::OOdd => (at(1, 10, (n + 1) / 2), at(2, 1, (n + 1) / 2)),
        Family::OEven => (at(1, 10, n), at(26, 10, n)),
    })
}

fn verdict(interval: &RationalInterval, lower: &BigRational, upper: &BigRational) -> Verdict {
    if lower <= interval.lo() && interval.hi() <= upper {
        Verdict::Contained
    } else if interval.hi() < lower || interval.lo() > upper {
        Verdict::Violated
    } else {
        Verdict::Undecided
    }
}

/// Refines the proposition interval (doubling both truncations from
/// [`DEFAULT_TRUNCATION`] up to [`MAX_TRUNCATION`]) until the theorem's
/// bounds are decided.
pub fn verify_theorem_bounds(family: Family, n: u32, q: u64) -> Result<BoundCheck> {
    let (lower, upper) = theorem_bounds(family, n, q)?;
    let mut trunc = DEFAULT_TRUNCATION;
    let mut tv = tv_proposition(family, n, q, n + trunc, trunc)?;
    loop {
        let v = verdict(&tv.interval, &lower, &upper);
        if v != Verdict::Undecided || trunc >= MAX_TRUNCATION {
            return Ok(BoundCheck {
                family,
                n,
                q,
                lower_bound: lower,
                upper_bound: upper,
                verdict: v,
                tv,
            });
        }
        trunc *= 2;
        let next = tv_proposition(family, n, q, n + trunc, trunc)?;
        // both enclose the same number, so the intersection does too
        let interval = next.interval.intersection(&tv.interval).unwrap_or(next.interval.clone());
        tv = TvResult { interval, ..next };
    }
}

/// Refines until the interval is narrower than `width`, or the cap is hit.
pub fn tv_refined(family: Family, n: u32, q: u64, method: Method, width: &BigRational) -> Result<TvResult> {
    let mut trunc = DEFAULT_TRUNCATION;
    loop {
        let tv = match method {
            Method::Proposition => tv_proposition(family, n, q, n + trunc, trunc)?,
            Method::Direct => tv_direct(family, n, q, family.size_bound(n), trunc)?,
        };
        if &tv.interval.width() < width || trunc >= MAX_TRUNCATION {
            return Ok(tv);
        }
        trunc *= 2;
    }
}

/// Theorem checks over a grid, in grid order.
pub fn verify_grid(cells: &[(Family, u32, u64)]) -> Result<Vec<BoundCheck>> {
    cells
        .par_iter()
        .map(|&(f, n, q)| verify_theorem_bounds(f, n, q))
        .collect()
}
