use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::field::{Elem, FieldSpec};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::measures::{prime_power_decomposition, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FormType {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormType::Plus => "+",
            FormType::Minus => "-",
            FormType::None => "none",
        })
    }
}

impl FromStr for FormType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(FormType::Plus),
            "-" | "minus" => Ok(FormType::Minus),
            "none" => Ok(FormType::None),
            _ => Err(Error::InvalidParameter(format!("unknown form type {s:?}"))),
        }
    }
}

/// The invariant a group element must preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    /// No form: the full general linear group.
    General,
    /// `x̄ᵀ J y` over `GF(q^2)`, conjugation `x -> x^q`.
    Hermitian(Matrix),
    /// `xᵀ J y`, alternating.
    Alternating(Matrix),
    /// `xᵀ J y`, symmetric, odd characteristic.
    Symmetric(Matrix),
    /// `Q(x) = Σ_{i<=j} c_ij x_i x_j` with polar form `B(x, y) = Q(x+y) - Q(x) - Q(y)`.
    Quadratic { coeffs: Matrix, polar: Matrix },
}

/// A concrete classical group: a family, a dimension, a field and a form.
#[derive(Debug, Clone)]
pub struct FormSpec {
    pub family: Family,
    pub dimension: usize,
    /// `q` of the group; for unitary groups the matrices live over `GF(q^2)`.
    pub q: u64,
    pub form_type: FormType,
    pub field: Arc<FieldSpec>,
    pub form: Form,
}

impl FormSpec {
    pub fn gl(dimension: usize, q: u64) -> Result<Self> {
        let (p, k) = prime_power_decomposition(q).ok_or(Error::NotPrimePower(q))?;
        Ok(Self {
            family: Family::Gl,
            dimension,
            q,
            form_type: FormType::None,
            field: Arc::new(FieldSpec::new(p, k)?),
            form: Form::General,
        })
    }

    /// Evaluates `Q(v)` for quadratic forms.
    pub fn quadratic_value(&self, v: &[Elem]) -> Elem {
        let Form::Quadratic { coeffs, .. } = &self.form else {
            panic!("not a quadratic form");
        };
        let f = &self.field;
        let n = self.dimension;
        let mut acc = 0;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            for j in i..n {
                let c = coeffs.get(i, j);
                if c != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                }
            }
        }
        acc
    }

    /// Gram matrix of the bilinear/sesquilinear form (polar form for quadratic).
    pub fn gram(&self) -> Option<&Matrix> {
        match &self.form {
            Form::General => None,
            Form::Hermitian(j) | Form::Alternating(j) | Form::Symmetric(j) => Some(j),
            Form::Quadratic { polar, .. } => Some(polar),
        }
    }

    /// `x -> x^q` on `GF(q^2)` for unitary groups, identity otherwise.
    pub fn conjugate(&self, x: Elem) -> Elem {
        match self.form {
            Form::Hermitian(_) => self.field.pow(x, self.q),
            _ => x,
        }
    }

    /// Pairing `<x, y>` used for membership: `x̄ᵀ J y` or `xᵀ J y`.
    pub fn pair(&self, x: &[Elem], jy: &[Elem]) -> Elem {
        let f = &self.field;
        x.iter()
            .zip(jy)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(self.conjugate(a), b)))
    }
}

fn least_nonsquare(field: &FieldSpec) -> Elem {
    field.elements().find(|&x| x != 0 && !field.is_square(x)).expect("odd q has non-squares")
}

/// Least `a` (by element index) with `t^2 + t + a` irreducible over `GF(q)`, `q` even.
fn arf_constant(field: &FieldSpec) -> Elem {
    field
        .elements()
        .find(|&a| field.elements().all(|x| field.add(field.add(field.mul(x, x), x), a) != 0))
        .expect("an irreducible Artin-Schreier polynomial exists")
}

fn hyperbolic_antidiagonal(m: &mut Matrix, block: usize) {
    for i in 0..block {
        m.set(i, block - 1 - i, 1);
    }
}

/// The standard nondegenerate form of the requested family and type.
///
/// * U: identity Hermitian Gram over `GF(q^2)`.
/// * SP: `[[0, I], [-I, 0]]`.
/// * O_ODD, even dimension: `+` anti-diagonal ones; `-` anti-diagonal on the
///   first `d - 2` coordinates then `diag(1, -δ)`, `δ` the least non-square.
/// * O_ODD, odd dimension: `+` identity; `-` `diag(1, ..., 1, δ)`.
/// * O_EVEN: `Q+ = Σ x_{2i-1} x_{2i}`; `Q-` replaces the last pair by
///   `x^2 + x y + a y^2` with `t^2 + t + a` irreducible.
pub fn standard_form(family: Family, dimension: usize, q: u64, form_type: FormType) -> Result<FormSpec> {
    let (p, k) = prime_power_decomposition(q).ok_or(Error::NotPrimePower(q))?;
    family.check_q(q)?;
    let bad = |msg: &str| Err(Error::InvalidParameter(format!("{family} dimension {dimension}: {msg}")));
    if dimension == 0 {
        return bad("dimension must be positive");
    }
    let needs_type = matches!(family, Family::OOdd | Family::OEven);
    if needs_type == (form_type == FormType::None) {
        return bad(&format!("form type {form_type} not allowed"));
    }
    let field_degree = if family == Family::U { 2 * k } else { k };
    let field = Arc::new(FieldSpec::new(p, field_degree)?);
    let n = dimension;
    let form = match family {
        Family::Gl => Form::General,
        Family::U => Form::Hermitian(Matrix::identity(n)),
        Family::Sp => {
            if n % 2 == 1 {
                return bad("symplectic groups need even dimension");
            }
            let h = n / 2;
            let mut j = Matrix::zero(n);
            let minus_one = field.neg(1);
            for i in 0..h {
                j.set(i, h + i, 1);
                j.set(h + i, i, minus_one);
            }
            Form::Alternating(j)
        }
        Family::OOdd => {
            let delta = least_nonsquare(&field);
            let mut j = Matrix::zero(n);
            if n % 2 == 0 {
                match form_type {
                    FormType::Plus => hyperbolic_antidiagonal(&mut j, n),
                    _ => {
                        hyperbolic_antidiagonal(&mut j, n - 2);
                        j.set(n - 2, n - 2, 1);
                        j.set(n - 1, n - 1, field.neg(delta));
                    }
                }
            } else {
                for i in 0..n {
                    j.set(i, i, 1);
                }
                if form_type == FormType::Minus {
                    j.set(n - 1, n - 1, delta);
                }
            }
            Form::Symmetric(j)
        }
        Family::OEven => {
            if n % 2 == 1 {
                return bad("even-characteristic orthogonal groups need even dimension");
            }
            let mut c = Matrix::zero(n);
            for i in (0..n).step_by(2) {
                c.set(i, i + 1, 1);
            }
            if form_type == FormType::Minus {
                c.set(n - 2, n - 2, 1);
                c.set(n - 1, n - 1, arf_constant(&field));
            }
            let mut polar = Matrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        polar.set(i, j, field.add(c.get(i, j), c.get(j, i)));
                    }
                }
            }
            Form::Quadratic { coeffs: c, polar }
        }
    };
    Ok(FormSpec {
        family,
        dimension: n,
        q,
        form_type,
        field,
        form,
    })
}

/// Whether `g` lies in the group of `form`.
pub fn is_member(g: &Matrix, form: &FormSpec) -> Result<bool> {
    if g.dim() != form.dimension {
        return Err(Error::DimensionMismatch(format!(
            "matrix of size {} against form of dimension {}",
            g.dim(),
            form.dimension
        )));
    }
    let f = &form.field;
    let n = form.dimension;
    match &form.form {
        Form::General => Ok(g.is_invertible(f)),
        Form::Hermitian(j) | Form::Alternating(j) | Form::Symmetric(j) => {
            let lhs = g.transpose().map(|x| form.conjugate(x)).mul(j, f).mul(g, f);
            Ok(&lhs == j)
        }
        Form::Quadratic { polar, .. } => {
            let cols: Vec<Vec<Elem>> = (0..n).map(|j| g.column(j)).collect();
            let mut e = vec![0; n];
            for (i, col) in cols.iter().enumerate() {
                e.iter_mut().for_each(|x| *x = 0);
                e[i] = 1;
                if form.quadratic_value(col) != form.quadratic_value(&e) {
                    return Ok(false);
                }
            }
            for i in 0..n {
                let bi = polar.apply(&cols[i], f);
                for (j, col) in cols.iter().enumerate().skip(i + 1) {
                    if form.pair(col, &bi) != polar.get(i, j) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_gram() {
        let s = standard_form(Family::Sp, 2, 3, FormType::None).unwrap();
        assert_eq!(s.gram().unwrap(), &Matrix::from_rows(&[&[0, 1], &[2, 0]]));
    }

    #[test]
    fn hyperbolic_plane_char_two() {
        let s = standard_form(Family::OEven, 2, 2, FormType::Plus).unwrap();
        assert_eq!(s.quadratic_value(&[1, 1]), 1);
        assert_eq!(s.quadratic_value(&[1, 0]), 0);
        assert_eq!(s.quadratic_value(&[0, 1]), 0);
        let swap = Matrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert!(is_member(&swap, &s).unwrap());
    }

    #[test]
    fn anisotropic_plane_mod_three() {
        let s = standard_form(Family::OOdd, 2, 3, FormType::Minus).unwrap();
        // -δ = -2 = 1, so the Gram is the identity and x^2 + y^2 is anisotropic
        assert_eq!(s.gram().unwrap(), &Matrix::identity(2));
        let f = &s.field;
        for x in f.elements() {
            for y in f.elements() {
                let v = f.add(f.mul(x, x), f.mul(y, y));
                assert_eq!(v == 0, x == 0 && y == 0);
            }
        }
    }

    #[test]
    fn membership_examples() {
        for (fam, d, q, t) in [
            (Family::Gl, 3, 2, FormType::None),
            (Family::U, 2, 2, FormType::None),
            (Family::Sp, 4, 3, FormType::None),
            (Family::OOdd, 3, 5, FormType::Minus),
            (Family::OEven, 4, 4, FormType::Minus),
        ] {
            let s = standard_form(fam, d, q, t).unwrap();
            assert!(is_member(&Matrix::identity(d), &s).unwrap(), "{fam}");
        }
        let sp = standard_form(Family::Sp, 2, 3, FormType::None).unwrap();
        assert!(!is_member(&Matrix::diagonal(&[1, 2]), &sp).unwrap());
        assert!(is_member(&Matrix::identity(3), &sp).is_err());
    }

    #[test]
    fn minus_type_char_two_over_gf4() {
        let s = standard_form(Family::OEven, 2, 4, FormType::Minus).unwrap();
        // Q- = x^2 + xy + t y^2 has no nonzero zero
        let f = &s.field;
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(s.quadratic_value(&[x, y]) == 0, x == 0 && y == 0);
            }
        }
    }

    #[test]
    fn incompatible_parameters() {
        assert!(standard_form(Family::Sp, 3, 3, FormType::None).is_err());
        assert!(standard_form(Family::OEven, 2, 3, FormType::Plus).is_err());
        assert!(standard_form(Family::OOdd, 2, 3, FormType::None).is_err());
        assert!(standard_form(Family::Gl, 2, 3, FormType::Plus).is_err());
    }
}
