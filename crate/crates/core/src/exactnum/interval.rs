use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{decimal_hint, BigRational};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` of rationals enclosing some exact real.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(value: BigRational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::point(BigRational::one())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Self { lo, hi })
    }

    /// Hull of the two intervals.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// `{|x| : x in self}`; the lower end is 0 whenever the interval straddles 0.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Self {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            }
        } else {
            Self {
                lo: BigRational::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains(&BigRational::zero()) {
            return Err(Error::IntervalContainsZero(self.to_string()));
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    /// Restricts to `[lo, hi]`, valid whenever the enclosed value is known to
    /// lie there.
    pub fn clamp(&self, lo: &BigRational, hi: &BigRational) -> Self {
        let new_lo = self.lo.clone().max(lo.clone()).min(hi.clone());
        let new_hi = self.hi.clone().min(hi.clone()).max(new_lo.clone());
        Self {
            lo: new_lo,
            hi: new_hi,
        }
    }

    /// Widens the endpoints to multiples of `2^-bits` so the rationals stay small.
    pub fn round_outward(&self, bits: u32) -> Self {
        let scale = BigRational::from_integer(num_bigint::BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Self { lo, hi }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            decimal_hint(&self.lo, 12),
            decimal_hint(&self.hi, 12)
        )
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: Self) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: Self) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: Self) -> RationalInterval {
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return RationalInterval {
                lo: &self.lo * &rhs.lo,
                hi: &self.hi * &rhs.hi,
            };
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        RationalInterval { lo, hi }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalInterval {
            type Output = RationalInterval;
            fn $m(self, rhs: Self) -> RationalInterval {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for RationalInterval {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RationalInterval::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};
    use proptest::prelude::*;

    fn iv(a: i64, b: i64) -> RationalInterval {
        RationalInterval::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn rejects_inverted_endpoints() {
        assert!(RationalInterval::new(int(2), int(1)).is_err());
    }

    #[test]
    fn abs_cases() {
        assert_eq!(iv(1, 3).abs(), iv(1, 3));
        assert_eq!(iv(-3, -1).abs(), iv(1, 3));
        assert_eq!(iv(-5, 2).abs(), iv(0, 5));
    }

    #[test]
    fn recip_rejects_zero() {
        assert!(iv(-1, 1).recip().is_err());
        assert_eq!(iv(2, 4).recip().unwrap(), RationalInterval::new(ratio(1, 4), ratio(1, 2)).unwrap());
    }

    #[test]
    fn rounding_is_outward() {
        let x = RationalInterval::new(ratio(1, 3), ratio(2, 3)).unwrap();
        let r = x.round_outward(8);
        assert!(x.is_subset_of(&r));
        assert!(r.width() < ratio(1, 3) + ratio(2, 256));
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_samples(
            a in -50i64..50, da in 0i64..20, b in -50i64..50, db in 0i64..20,
            ta in 0i64..=4, tb in 0i64..=4,
        ) {
            let x = iv(a, a + da);
            let y = iv(b, b + db);
            // sample points at quarter steps
            let px = ratio(4 * a + ta * da, 4);
            let py = ratio(4 * b + tb * db, 4);
            prop_assert!((&x + &y).contains(&(&px + &py)));
            prop_assert!((&x - &y).contains(&(&px - &py)));
            prop_assert!((&x * &y).contains(&(&px * &py)));
            prop_assert!(x.abs().contains(&px.abs()));
        }
    }
}
