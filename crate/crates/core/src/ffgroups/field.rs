use std::fmt;

use crate::error::{Error, Result};

/// Field elements are indices `0..q`; index `Σ c_i p^i` is the residue
/// `Σ c_i t^i` modulo the field's modulus. `0` and `1` are zero and one.
pub type Elem = u8;

/// `GF(p^k)` with full addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: usize,
    /// `c_0, ..., c_{k-1}` of the monic modulus `t^k + Σ c_i t^i`.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.k, self.modulus_string())
    }
}

const MAX_ORDER: u64 = 256;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = a.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p * p - f * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
}

fn digits(mut index: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = (index % p as usize) as u32;
        index /= p as usize;
    }
    out
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        for idx in 0..(p as usize).pow(d as u32) {
            let mut f = digits(idx, p, d);
            f.push(1);
            if poly_rem(modulus.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// `GF(p^k)` with the monic irreducible modulus whose coefficient vector
    /// `(c_0, ..., c_{k-1})` is smallest read as the base-`p` integer `Σ c_i p^i`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || p.checked_pow(k).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::InvalidParameter(format!(
                "GF({p}^{k}) is outside the supported range (order <= {MAX_ORDER})"
            )));
        }
        let p32 = p as u32;
        let q = p.pow(k) as usize;
        let modulus = (0..q)
            .map(|idx| digits(idx, p32, k as usize))
            .find(|c| {
                let mut m = c.clone();
                m.push(1);
                k == 1 || is_irreducible(&m, p32)
            })
            .expect("an irreducible polynomial exists in every degree");
        let mut full = modulus.clone();
        full.push(1);

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        let to_index = |c: &[u32]| c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
        for a in 0..q {
            let da = digits(a, p32, k as usize);
            for b in 0..q {
                let db = digits(b, p32, k as usize);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p32).collect();
                add[a * q + b] = to_index(&s) as Elem;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p32;
                    }
                }
                let mut r = poly_rem(prod, &full, p32);
                r.resize(k as usize, 0);
                mul[a * q + b] = to_index(&r) as Elem;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Elem
                }
            })
            .collect();
        Ok(Self {
            p: p32,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = vec![if self.k == 1 { "t".to_string() } else { format!("t^{}", self.k) }];
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join("+")
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^(p^j)`.
    pub fn frobenius(&self, a: Elem, j: u32) -> Elem {
        self.pow(a, (self.p as u64).pow(j))
    }

    /// The prime-field element `n mod p`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn is_square(&self, a: Elem) -> bool {
        self.elements().any(|x| self.mul(x, x) == a)
    }
}
