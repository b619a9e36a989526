//! Exact scalar arithmetic.
//!
//! Every scalar in the crate is a [`BigRational`]. Real numbers that are not
//! rational (infinite products, total variation distances) are carried as a
//! [`RationalInterval`] that is guaranteed to contain them. Generating
//! functions in the deformation variable `u` are carried as
//! [`TruncatedSeries`].

mod identity;
mod interval;
mod product;
mod series;

pub use identity::{identity_check, IdentityReport, IdentityTag, Mismatch};
pub use interval::RationalInterval;
pub use product::{infinite_product, Direction, InfiniteProduct, ProductKind};
pub(crate) use product::at_one;
pub use series::TruncatedSeries;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which finite q-Pochhammer symbol to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerVariant {
    /// `(1/q)_j = (1 - 1/q)(1 - 1/q^2)...(1 - 1/q^j)`
    Plain,
    /// `(-1/q)_j = (1 + 1/q)(1 - 1/q^2)...(1 - (-1)^j/q^j)`
    Signed,
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any integer exponent. A zero base with negative exponent panics.
pub fn pow(base: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

pub(crate) fn check_base(q: &BigRational) -> Result<()> {
    if q <= &BigRational::one() {
        return Err(Error::BaseTooSmall(q.to_string()));
    }
    Ok(())
}

pub fn pochhammer(q: &BigRational, j: u32, variant: PochhammerVariant) -> Result<BigRational> {
    check_base(q)?;
    let inv = q.recip();
    let mut term = BigRational::one();
    let mut acc = BigRational::one();
    for k in 1..=j {
        term *= &inv;
        let signed = variant == PochhammerVariant::Signed && k % 2 == 1;
        if signed {
            acc *= BigRational::one() + &term;
        } else {
            acc *= BigRational::one() - &term;
        }
    }
    Ok(acc)
}

/// `(q^1 - s)(q^2 - s^2)...(q^j - s^j)` with `s = 1` or `s = -1`, the
/// denominators of Euler's expansions.
pub fn descending_product(q: &BigRational, j: u32, alternating: bool) -> BigRational {
    let mut acc = BigRational::one();
    let mut qk = BigRational::one();
    for k in 1..=j {
        qk *= q;
        let s = if alternating && k % 2 == 1 { -1 } else { 1 };
        acc *= &qk - int(s);
    }
    acc
}

/// Exact decimal rendering with `digits` significant digits, truncated toward zero.
pub fn decimal_hint(value: &BigRational, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let v = value.abs();
    let ten = int(10);
    let mut exp10: i64 = 0;
    let mut scaled = v.clone();
    while scaled >= ten {
        scaled /= &ten;
        exp10 += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        exp10 -= 1;
    }
    let mut mantissa = String::new();
    for _ in 0..digits {
        let d = scaled.to_integer();
        mantissa.push_str(&d.to_string());
        scaled = (scaled - BigRational::from_integer(d)) * &ten;
    }
    if (-4..=0).contains(&exp10) {
        let (head, tail) = if exp10 == 0 {
            (mantissa[..1].to_string(), mantissa[1..].to_string())
        } else {
            let zeros = "0".repeat((-exp10 - 1) as usize);
            ("0".to_string(), format!("{zeros}{mantissa}"))
        };
        format!("{sign}{head}.{tail}")
    } else {
        format!("{sign}{}.{}e{}", &mantissa[..1], &mantissa[1..], exp10)
    }
}

/// `"num/den"` in lowest terms, including integers (`"6/1"`).
pub fn fraction_string(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Serde helper emitting a rational as `"num/den"`.
pub fn serialize_fraction<S: serde::Serializer>(
    value: &BigRational,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&fraction_string(value))
}

pub fn to_f64(value: &BigRational) -> f64 {
    decimal_hint(value, 17).parse().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        let two = int(2);
        assert_eq!(pochhammer(&two, 0, PochhammerVariant::Plain).unwrap(), int(1));
        assert_eq!(pochhammer(&two, 2, PochhammerVariant::Plain).unwrap(), ratio(3, 8));
        assert_eq!(pochhammer(&two, 2, PochhammerVariant::Signed).unwrap(), ratio(9, 8));
    }

    #[test]
    fn pochhammer_rejects_small_base() {
        assert!(pochhammer(&int(1), 3, PochhammerVariant::Plain).is_err());
        assert!(pochhammer(&ratio(1, 2), 0, PochhammerVariant::Signed).is_err());
    }

    #[test]
    fn descending_products() {
        assert_eq!(descending_product(&int(2), 3, false), int(21));
        // (q+1)(q^2-1)(q^3+1) at q = 2
        assert_eq!(descending_product(&int(2), 3, true), int(3 * 3 * 9));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(&int(3), -2), ratio(1, 9));
        assert_eq!(pow(&ratio(-1, 2), 3), ratio(-1, 8));
        assert_eq!(pow(&int(7), 0), int(1));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_hint(&ratio(1, 3), 5), "0.33333");
        assert_eq!(decimal_hint(&ratio(7, 2), 3), "3.50");
        assert_eq!(decimal_hint(&ratio(-1, 8), 3), "-0.125");
        assert_eq!(decimal_hint(&ratio(1, 3_000_000), 3), "3.33e-7");
        assert_eq!(decimal_hint(&int(1234), 4), "1.234e3");
        assert_eq!(fraction_string(&int(6)), "6/1");
    }
}
