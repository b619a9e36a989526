use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::field::{Elem, FieldSpec};
use super::forms::{Form, FormSpec};
use super::matrix::{jordan_partition_at_1, Matrix};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Default cap on the raw candidate space `Q^(d^2)`.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// The cap in effect: `CLP_MAX_CANDIDATES` if set and parseable, else [`DEFAULT_BUDGET`].
pub fn candidate_budget() -> u128 {
    std::env::var("CLP_MAX_CANDIDATES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `Q^(d^2)` where `Q` is the order of the matrix field.
pub fn raw_candidates(form: &FormSpec) -> Option<u128> {
    let d = form.dimension as u32;
    (form.field.order() as u128).checked_pow(d * d)
}

fn check_budget(form: &FormSpec, budget: u128) -> Result<()> {
    match raw_candidates(form) {
        Some(c) if c <= budget => Ok(()),
        c => Err(Error::BudgetExceeded {
            candidates: c.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

struct Search<'a> {
    form: &'a FormSpec,
    field: &'a FieldSpec,
    vectors: Vec<Vec<Elem>>,
}

// Columns are chosen left to right; a candidate for column j must satisfy
// every constraint pairing it with columns 0..=j. For the form groups these
// constraints force invertibility, for GL it is checked by elimination.
impl<'a> Search<'a> {
    fn new(form: &'a FormSpec) -> Self {
        let field = &*form.field;
        let n = form.dimension;
        let q = field.order();
        let total = q.pow(n as u32);
        let vectors = (0..total)
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let x = (idx % q) as Elem;
                        idx /= q;
                        x
                    })
                    .collect()
            })
            .collect();
        Self { form, field, vectors }
    }

    /// Row vector `x̄ᵀ J` used to test pairings against later columns.
    fn left_row(&self, x: &[Elem]) -> Vec<Elem> {
        let j = self.form.gram().expect("form group");
        let f = self.field;
        let n = self.form.dimension;
        (0..n)
            .map(|b| {
                (0..n).fold(0, |acc, a| f.add(acc, f.mul(self.form.conjugate(x[a]), j.get(a, b))))
            })
            .collect()
    }

    fn dot(&self, r: &[Elem], y: &[Elem]) -> Elem {
        r.iter().zip(y).fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    fn admissible(&self, chosen: &[&[Elem]], rows: &[Vec<Elem>], y: &[Elem]) -> bool {
        let j = chosen.len();
        let f = self.field;
        match &self.form.form {
            Form::General => {
                let mut cols: Vec<Vec<Elem>> = chosen.iter().map(|c| c.to_vec()).collect();
                cols.push(y.to_vec());
                independent(&cols, f)
            }
            Form::Quadratic { polar, .. } => {
                let mut e = vec![0; self.form.dimension];
                e[j] = 1;
                if self.form.quadratic_value(y) != self.form.quadratic_value(&e) {
                    return false;
                }
                rows.iter().enumerate().all(|(i, r)| self.dot(r, y) == polar.get(i, j))
            }
            _ => {
                let gram = self.form.gram().unwrap();
                if rows.iter().enumerate().any(|(i, r)| self.dot(r, y) != gram.get(i, j)) {
                    return false;
                }
                self.dot(&self.left_row(y), y) == gram.get(j, j)
            }
        }
    }

    fn descend(&self, chosen: &mut Vec<usize>, rows: &mut Vec<Vec<Elem>>, visit: &mut impl FnMut(&Matrix)) {
        let n = self.form.dimension;
        if chosen.len() == n {
            let cols: Vec<Vec<Elem>> = chosen.iter().map(|&c| self.vectors[c].clone()).collect();
            visit(&Matrix::from_columns(&cols));
            return;
        }
        let cols: Vec<&[Elem]> = chosen.iter().map(|&c| self.vectors[c].as_slice()).collect();
        let next: Vec<usize> = (0..self.vectors.len())
            .filter(|&k| self.admissible(&cols, rows, &self.vectors[k]))
            .collect();
        for k in next {
            self.push(k, chosen, rows);
            self.descend(chosen, rows, visit);
            chosen.pop();
            rows.pop();
        }
    }

    fn push(&self, k: usize, chosen: &mut Vec<usize>, rows: &mut Vec<Vec<Elem>>) {
        chosen.push(k);
        rows.push(match self.form.form {
            Form::General => Vec::new(),
            _ => self.row_for(&self.vectors[k]),
        });
    }

    fn row_for(&self, y: &[Elem]) -> Vec<Elem> {
        match &self.form.form {
            Form::Quadratic { polar, .. } => {
                let f = self.field;
                let n = self.form.dimension;
                (0..n)
                    .map(|b| (0..n).fold(0, |acc, a| f.add(acc, f.mul(y[a], polar.get(a, b)))))
                    .collect()
            }
            _ => self.left_row(y),
        }
    }
}

fn independent(cols: &[Vec<Elem>], f: &FieldSpec) -> bool {
    let n = cols[0].len();
    let mut m = Matrix::zero(n);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m.rank(f) == cols.len()
}

/// Runs `visit` on every group element whose first column is vector `first`.
fn visit_branch(search: &Search<'_>, first: usize, visit: &mut impl FnMut(&Matrix)) {
    if !search.admissible(&[], &[], &search.vectors[first]) {
        return;
    }
    let mut chosen = Vec::new();
    let mut rows = Vec::new();
    search.push(first, &mut chosen, &mut rows);
    search.descend(&mut chosen, &mut rows, visit);
}

/// Every element of the group, each once, in a deterministic order.
pub fn enumerate_group(form: &FormSpec) -> Result<Vec<Matrix>> {
    enumerate_group_with_budget(form, candidate_budget())
}

pub fn enumerate_group_with_budget(form: &FormSpec, budget: u128) -> Result<Vec<Matrix>> {
    check_budget(form, budget)?;
    let search = Search::new(form);
    let branches: Vec<Vec<Matrix>> = search
        .vectors
        .par_iter()
        .enumerate()
        .map(|(first, _)| {
            let mut out = Vec::new();
            visit_branch(&search, first, &mut |g| out.push(g.clone()));
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

/// Counts of `λ_{z-1}` over the group, without storing the elements.
pub fn jordan_type_counts(form: &FormSpec) -> Result<(BigInt, BTreeMap<Partition, u64>)> {
    check_budget(form, candidate_budget())?;
    let search = Search::new(form);
    let field = &*form.field;
    let counts = search
        .vectors
        .par_iter()
        .enumerate()
        .map(|(first, _)| {
            let mut local = BTreeMap::new();
            visit_branch(&search, first, &mut |g| {
                *local.entry(jordan_partition_at_1(g, field)).or_insert(0u64) += 1;
            });
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let order = counts.values().map(|&c| BigInt::from(c)).sum();
    Ok((order, counts))
}
