use num_traits::{One, Signed, Zero};

use super::{check_base, int, pow, BigRational, RationalInterval, TruncatedSeries};
use crate::error::{Error, Result};

/// The four factor sequences that normalise the limit measures.
///
/// Each factor is written `1 - c_i u^e`; the coefficients `c_i` form a
/// geometric sequence with ratio [`ProductKind::ratio`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// `1 - u/q^i`
    Gl,
    /// `1 + u/(-q)^i`
    U,
    /// `1 - u^2/q^(2i-1)`
    OddExp,
    /// `1 - 1/q^(2i)`, independent of `u`
    EvenExp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Product,
    Reciprocal,
}

impl ProductKind {
    /// Power of `u` carried by each factor (0 for the constant kind).
    pub fn u_power(self) -> usize {
        match self {
            ProductKind::Gl | ProductKind::U => 1,
            ProductKind::OddExp => 2,
            ProductKind::EvenExp => 0,
        }
    }

    /// `c_i`, so that factor `i` is `1 - c_i u^e`.
    pub fn coefficient(self, q: &BigRational, i: u32) -> BigRational {
        let i = i as i64;
        match self {
            ProductKind::Gl => pow(q, -i),
            ProductKind::U => {
                let x = pow(q, -i);
                if i % 2 == 0 {
                    -x
                } else {
                    x
                }
            }
            ProductKind::OddExp => pow(q, -(2 * i - 1)),
            ProductKind::EvenExp => pow(q, -2 * i),
        }
    }

    /// `c_{i+1} / c_i`.
    pub fn ratio(self, q: &BigRational) -> BigRational {
        match self {
            ProductKind::Gl => q.recip(),
            ProductKind::U => -q.recip(),
            ProductKind::OddExp | ProductKind::EvenExp => pow(q, -2),
        }
    }

    /// `s` with `s^e = ratio`, so that shifting the factor index is `u -> s u`.
    fn dilation(self, q: &BigRational) -> BigRational {
        match self {
            ProductKind::U => -q.recip(),
            _ => q.recip(),
        }
    }

    fn factor_value(self, q: &BigRational, u: &BigRational, i: u32) -> BigRational {
        let c = self.coefficient(q, i);
        let e = self.u_power() as i64;
        BigRational::one() - c * pow(u, e)
    }
}

/// An infinite product `prod_{i >= first} (1 - c_i u^e)` or its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InfiniteProduct {
    pub kind: ProductKind,
    pub direction: Direction,
    pub first_index: u32,
}

impl InfiniteProduct {
    pub fn new(kind: ProductKind) -> Self {
        Self {
            kind,
            direction: Direction::Product,
            first_index: 1,
        }
    }

    pub fn reciprocal(mut self) -> Self {
        self.direction = Direction::Reciprocal;
        self
    }

    pub fn starting_at(mut self, first_index: u32) -> Self {
        assert!(first_index >= 1, "factor indices start at 1");
        self.first_index = first_index;
        self
    }

    /// Encloses the exact value at numeric `(q, u)` using `truncation`
    /// explicit factors and a certified bound on the rest.
    ///
    /// With `x_i = c_i u^e` and `S = sum_{i > N} |x_i|` (a geometric tail),
    /// the remaining factors multiply to something in `[1 - S, 1]` when all
    /// `x_i >= 0`, `[1, 1/(1 - S)]` when all `x_i <= 0`, and
    /// `[1 - S, 1/(1 - S)]` for alternating signs. These brackets are nested
    /// as `N` grows.
    pub fn enclose(&self, q: &BigRational, u: &BigRational, truncation: u32) -> Result<RationalInterval> {
        check_base(q)?;
        if u.abs() > BigRational::one() {
            return Err(Error::TailBoundInvalid(format!("|u| = {} exceeds 1", u.abs())));
        }
        let kind = self.kind;
        let e = kind.u_power() as i64;
        let mut partial = BigRational::one();
        let last = self.first_index + truncation;
        for i in self.first_index..last {
            let f = kind.factor_value(q, u, i);
            if !f.is_positive() {
                return Err(Error::TailBoundInvalid(format!(
                    "factor {i} is {f}, not positive"
                )));
            }
            partial *= f;
        }
        let ue = pow(u, e);
        let next = kind.coefficient(q, last) * &ue;
        let r = kind.ratio(q).abs();
        let tail_sum = next.abs() / (BigRational::one() - r);
        if tail_sum >= BigRational::one() {
            return Err(Error::TailBoundInvalid(format!(
                "tail sum {tail_sum} is not below 1 at truncation {truncation}"
            )));
        }
        let one = BigRational::one();
        let alternating = kind == ProductKind::U && !ue.is_zero();
        let lower = if alternating || next.is_positive() {
            &one - &tail_sum
        } else {
            one.clone()
        };
        let upper = if alternating || next.is_negative() {
            (&one - &tail_sum).recip()
        } else {
            one.clone()
        };
        let tail = RationalInterval::new(lower, upper)?;
        let value = tail.scale(&partial);
        match self.direction {
            Direction::Product => Ok(value),
            Direction::Reciprocal => value.recip(),
        }
    }

    /// Residual of the q-difference equation that characterises this product
    /// as a power series in `u`.
    ///
    /// The product satisfies `F(u) = (1 - c_first u^e) F(s u)`, its reciprocal
    /// `G(u)(1 - c_first u^e) = G(s u)`; with constant term 1 the solution is
    /// unique, so a series with constant term 1 and zero residual equals the
    /// product coefficient by coefficient.
    pub fn functional_residual(&self, q: &BigRational, series: &TruncatedSeries) -> Result<TruncatedSeries> {
        let d = series.degree_bound();
        let e = self.kind.u_power();
        if e == 0 {
            return Err(Error::InvalidParameter(
                "constant products have no series in u".into(),
            ));
        }
        let lead = TruncatedSeries::binomial(d, -self.kind.coefficient(q, self.first_index), e);
        let shifted = series.dilate(&self.kind.dilation(q));
        match self.direction {
            Direction::Product => series.sub(&lead.mul(&shifted)?),
            Direction::Reciprocal => series.mul(&lead)?.sub(&shifted),
        }
    }

    /// Coefficient-wise enclosure of the series in `u` to degree `degree`,
    /// from `factors` explicit factors and a bound on the remaining ones.
    ///
    /// Writing the full product as `P(u) T(u)` with `T` the tail, every
    /// coefficient of `u^(k e)` in `T` (and in `1/T`) is bounded in absolute
    /// value by `S^k`, `S = sum_{i beyond} |c_i|`.
    pub fn series_enclosure(
        &self,
        q: &BigRational,
        degree: usize,
        factors: u32,
    ) -> Result<Vec<RationalInterval>> {
        check_base(q)?;
        let e = self.kind.u_power();
        if e == 0 {
            return Err(Error::InvalidParameter(
                "constant products have no series in u".into(),
            ));
        }
        let mut explicit = TruncatedSeries::one(degree);
        let last = self.first_index + factors;
        for i in self.first_index..last {
            explicit.mul_binomial(&-self.kind.coefficient(q, i), e);
        }
        if self.direction == Direction::Reciprocal {
            explicit = explicit.invert()?;
        }
        let tail_sum =
            self.kind.coefficient(q, last).abs() / (BigRational::one() - self.kind.ratio(q).abs());
        let mut out = Vec::with_capacity(degree + 1);
        for m in 0..=degree {
            let mut radius = BigRational::zero();
            let mut s_pow = BigRational::one();
            let mut j = 1;
            while j * e <= m {
                s_pow *= &tail_sum;
                radius += explicit.coeff(m - j * e).abs() * &s_pow;
                j += 1;
            }
            let c = explicit.coeff(m);
            out.push(RationalInterval::new(c - &radius, c + &radius)?);
        }
        Ok(out)
    }
}

/// Convenience wrapper: enclosure of `kind` (or its reciprocal) from index 1.
pub fn infinite_product(
    kind: ProductKind,
    direction: Direction,
    q: &BigRational,
    u: &BigRational,
    truncation: u32,
) -> Result<RationalInterval> {
    let mut p = InfiniteProduct::new(kind);
    p.direction = direction;
    p.enclose(q, u, truncation)
}

/// Point value of the product at `u = 1`, used throughout.
pub(crate) fn at_one(kind: ProductKind, q: &BigRational, truncation: u32) -> Result<RationalInterval> {
    infinite_product(kind, Direction::Product, q, &int(1), truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn approx(x: &RationalInterval, target: f64, tol: f64) -> bool {
        let lo = crate::exactnum::to_f64(x.lo());
        let hi = crate::exactnum::to_f64(x.hi());
        lo - tol <= target && target <= hi + tol
    }

    #[test]
    fn gl_product_at_two() {
        let x = infinite_product(ProductKind::Gl, Direction::Product, &int(2), &int(1), 30).unwrap();
        assert!(x.width() < ratio(1, 100_000_000));
        assert!(approx(&x, 0.288_788_095_086_602, 1e-12));
        let wide = infinite_product(ProductKind::Gl, Direction::Product, &int(2), &int(1), 60).unwrap();
        assert!(wide.is_subset_of(&x));
    }

    #[test]
    fn first_factor_dominates_for_large_q() {
        let q = int(1000);
        let x = infinite_product(ProductKind::Gl, Direction::Product, &q, &int(1), 1).unwrap();
        assert!(x.lo() > &(int(1) - ratio(2, 1000)));
        assert!(x.hi() < &int(1));
    }

    #[test]
    fn odd_exponent_product_at_two() {
        let x = infinite_product(ProductKind::OddExp, Direction::Product, &int(2), &int(1), 30).unwrap();
        assert!(approx(&x, 0.419_422_3, 1e-6));
    }

    #[test]
    fn zero_deformation_is_exact() {
        for kind in [ProductKind::Gl, ProductKind::U, ProductKind::OddExp] {
            let x = infinite_product(kind, Direction::Product, &int(3), &int(0), 4).unwrap();
            assert_eq!(x, RationalInterval::one());
        }
    }

    #[test]
    fn rejects_invalid_tail() {
        // q = 2, u = 1, no explicit factors: tail sum is exactly 1
        assert!(infinite_product(ProductKind::Gl, Direction::Product, &int(2), &int(1), 0).is_err());
        assert!(infinite_product(ProductKind::Gl, Direction::Product, &int(2), &int(2), 10).is_err());
        assert!(infinite_product(ProductKind::Gl, Direction::Product, &int(1), &int(1), 10).is_err());
    }

    #[test]
    fn negative_deformation_brackets() {
        let x = infinite_product(ProductKind::Gl, Direction::Product, &int(2), &int(-1), 20).unwrap();
        // prod (1 + 2^-i) = 2.38423102903137...
        assert!(approx(&x, 2.384_231_029_031_371, 1e-9));
    }

    #[test]
    fn nesting_for_every_kind() {
        for kind in [ProductKind::Gl, ProductKind::U, ProductKind::OddExp, ProductKind::EvenExp] {
            for dir in [Direction::Product, Direction::Reciprocal] {
                for q in [2, 3, 5] {
                    let mut prev: Option<RationalInterval> = None;
                    for n in 1..12 {
                        let x = infinite_product(kind, dir, &int(q), &ratio(3, 4), n).unwrap();
                        if let Some(p) = &prev {
                            assert!(x.is_subset_of(p), "{kind:?} {dir:?} q={q} n={n}");
                        }
                        prev = Some(x);
                    }
                }
            }
        }
    }

    #[test]
    fn enclosure_contains_recurrence_solution() {
        // coefficients of prod (1 - u/q^i) are (-1)^j / ((q^j - 1)...(q - 1))
        let q = int(3);
        let enc = InfiniteProduct::new(ProductKind::Gl).series_enclosure(&q, 6, 25).unwrap();
        for (j, iv) in enc.iter().enumerate() {
            let expected = {
                let d = crate::exactnum::descending_product(&q, j as u32, false);
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                sign / d
            };
            assert!(iv.contains(&expected), "degree {j}");
            assert!(iv.width() < ratio(1, 1_000_000_000));
        }
    }
}
