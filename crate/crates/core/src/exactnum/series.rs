use std::fmt;

use num_traits::{One, Zero};

use super::BigRational;
use crate::error::{Error, Result};

/// Power series in `u` truncated after `u^D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(degree_bound: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); degree_bound + 1],
        }
    }

    pub fn one(degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// excess ones are dropped.
    pub fn from_coeffs(degree_bound: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(degree_bound);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `1 + c u^k`.
    pub fn binomial(degree_bound: usize, c: BigRational, k: usize) -> Self {
        let mut s = Self::one(degree_bound);
        if k <= degree_bound {
            s.coeffs[k] += c;
        }
        s
    }

    /// In place `f -> f * (1 + c u^k)`, `k >= 1`.
    pub fn mul_binomial(&mut self, c: &BigRational, k: usize) {
        assert!(k >= 1);
        for m in (k..self.coeffs.len()).rev() {
            if !self.coeffs[m - k].is_zero() {
                let add = &self.coeffs[m - k] * c;
                self.coeffs[m] += add;
            }
        }
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, value: BigRational) {
        self.coeffs[k] = value;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.degree_bound() != other.degree_bound() {
            return Err(Error::DegreeMismatch(self.degree_bound(), other.degree_bound()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.degree_bound();
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let d = self.degree_bound();
        let mut out = Self::zero(d);
        out.coeffs[0] = inv0.clone();
        for k in 1..=d {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out.coeffs[k - j];
                }
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `f(u) -> f(s u)`.
    pub fn dilate(&self, s: &BigRational) -> Self {
        let mut factor = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &factor);
            factor *= s;
        }
        Self { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})u")?,
                _ => write!(f, "({c})u^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.degree_bound() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let one_minus_u = TruncatedSeries::from_coeffs(3, [int(1), int(-1)]);
        let inv = one_minus_u.invert().unwrap();
        assert_eq!(inv, TruncatedSeries::from_coeffs(3, vec![int(1); 4]));
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_coeffs(3, [int(1), int(-1)]);
        let b = TruncatedSeries::from_coeffs(3, [int(1), int(1)]);
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::from_coeffs(3, [int(1), int(0), int(-1)]));
    }

    #[test]
    fn zero_constant_term_is_not_invertible() {
        let s = TruncatedSeries::from_coeffs(4, [int(0), int(1)]);
        assert_eq!(s.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn degree_mismatch() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert!(matches!(a.mul(&b), Err(Error::DegreeMismatch(3, 4))));
    }

    fn series(d: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((-9i64..9, 1i64..6), d + 1).prop_map(move |v| {
            let mut s = TruncatedSeries::from_coeffs(d, v.into_iter().map(|(a, b)| ratio(a, b)));
            if s.coeff(0).is_zero() {
                s.set_coeff(0, int(1));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided_and_involutive(s in series(10)) {
            let inv = s.invert().unwrap();
            prop_assert_eq!(s.mul(&inv).unwrap(), TruncatedSeries::one(10));
            prop_assert_eq!(inv.invert().unwrap(), s);
        }

        #[test]
        fn multiplication_commutes(a in series(6), b in series(6)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }
    }
}
