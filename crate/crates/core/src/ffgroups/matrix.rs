use super::field::{Elem, FieldSpec};
use crate::partitions::Partition;

/// Square matrix over a table-driven finite field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[Elem]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.concat(),
        }
    }

    pub fn from_columns(columns: &[Vec<Elem>]) -> Self {
        let n = columns.len();
        let mut m = Self::zero(n);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn diagonal(entries: &[Elem]) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.n + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, field: &FieldSpec) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub_identity(&self, field: &FieldSpec) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, field.sub(m.get(i, i), 1));
        }
        m
    }

    pub fn apply(&self, v: &[Elem], field: &FieldSpec) -> Vec<Elem> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| field.add(acc, field.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        let n = self.n;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..n {
                    a.swap(pivot * n + j, rank * n + j);
                }
            }
            let inv = field.inv(a[rank * n + col]).unwrap();
            for r in 0..n {
                if r == rank || a[r * n + col] == 0 {
                    continue;
                }
                let f = field.mul(a[r * n + col], inv);
                for j in col..n {
                    a[r * n + j] = field.sub(a[r * n + j], field.mul(f, a[rank * n + j]));
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, field: &FieldSpec) -> bool {
        self.rank(field) == self.n
    }
}

/// `d_k = dim ker (g - I)^k` for `k = 1, 2, ...`, stopping before the first
/// repeat; a matrix without eigenvalue 1 gives `[0]`.
pub fn nullity_sequence(g: &Matrix, field: &FieldSpec) -> Vec<usize> {
    let n = g.dim();
    let base = g.sub_identity(field);
    let mut power = base.clone();
    let mut seq = vec![n - power.rank(field)];
    loop {
        power = power.mul(&base, field);
        let d = n - power.rank(field);
        if d == *seq.last().unwrap() {
            return seq;
        }
        seq.push(d);
    }
}

/// Jordan type of `g` at eigenvalue 1, i.e. the partition attached to `z - 1`
/// in the rational canonical form.
pub fn jordan_partition_at_1(g: &Matrix, field: &FieldSpec) -> Partition {
    let d = nullity_sequence(g, field);
    let mut prev = 0;
    let dual: Vec<u32> = d
        .iter()
        .map(|&x| {
            let inc = (x - prev) as u32;
            prev = x;
            inc
        })
        .collect();
    Partition::new(dual).conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p, 1).unwrap()
    }

    #[test]
    fn identity_nullity() {
        let f = gf(2);
        let g = Matrix::identity(3);
        assert_eq!(nullity_sequence(&g, &f), vec![3]);
        assert_eq!(jordan_partition_at_1(&g, &f), "1,1,1".parse().unwrap());
    }

    #[test]
    fn transvection() {
        let f = gf(2);
        let g = Matrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(nullity_sequence(&g, &f), vec![1, 2]);
        assert_eq!(jordan_partition_at_1(&g, &f), "2".parse().unwrap());
    }

    #[test]
    fn order_three_element() {
        let f = gf(2);
        let g = Matrix::from_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(g.mul(&g, &f).mul(&g, &f), Matrix::identity(2));
        assert_eq!(nullity_sequence(&g, &f), vec![0]);
        assert!(jordan_partition_at_1(&g, &f).is_empty());
    }

    #[test]
    fn mixed_jordan_blocks() {
        // J_3(1) ⊕ J_1(1) ⊕ (2) over GF(3)
        let f = gf(3);
        let mut g = Matrix::identity(5);
        g.set(0, 1, 1);
        g.set(1, 2, 1);
        g.set(4, 4, 2);
        assert_eq!(nullity_sequence(&g, &f), vec![2, 3, 4]);
        assert_eq!(jordan_partition_at_1(&g, &f), "3,1".parse().unwrap());
    }

    #[test]
    fn rank_over_gf4() {
        let f = FieldSpec::new(2, 2).unwrap();
        // rows (1, t) and (t, t^2) are dependent
        let t = 2;
        let t2 = f.mul(t, t);
        let m = Matrix::from_rows(&[&[1, t], &[t, t2]]);
        assert_eq!(m.rank(&f), 1);
        assert!(!m.is_invertible(&f));
    }
}
