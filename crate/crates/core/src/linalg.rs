//! Exact sparse linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::{Polynomial, Rational};

/// Sparse vector: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `a - c·b`.
fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// An incrementally built reduced echelon form. Every stored row has leading entry one and
/// vanishes at every other pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` so that it has no entry in any pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut idx = 0;
        while idx < v.len() {
            let (col, c) = (v[idx].0, v[idx].1.clone());
            match self.pivot_row.get(&col) {
                Some(&r) => v = axpy(&v, &c, &self.rows[r]),
                None => idx += 1,
            }
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((col, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let r: SparseVec = r.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        // keep the stored rows reduced so that entries stay small
        for row in &mut self.rows {
            if let Ok(pos) = row.binary_search_by_key(&col, |e| e.0) {
                let c = row[pos].1.clone();
                *row = axpy(row, &c, &r);
            }
        }
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        self.pivot_row.values().map(|&r| self.rows[r].clone()).collect()
    }

    /// Basis of `{x | row·x = 0 for all rows}`, one vector per free column, in the usual
    /// reduced form (entry one at its free column, zero at the other free columns).
    pub fn kernel(&self) -> Vec<SparseVec> {
        let rref = self.rref();
        let pivots = self.pivots();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivot_set.contains(c)) {
            let mut v: SparseVec = Vec::new();
            for (k, row) in rref.iter().enumerate() {
                if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                    v.push((pivots[k], -row[pos].1.clone()));
                }
            }
            v.push((free, Rational::one()));
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(vectors: &[SparseVec], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Canonical basis (reduced row echelon form) of the span of `vectors`.
pub fn canonical_basis(vectors: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rref()
}

/// Kernel of the matrix with the given sparse rows, in the canonical form of
/// [`Echelon::kernel`]. Solved modulo a large prime and lifted by rational reconstruction;
/// the lift is accepted only after exact verification, otherwise solved over the rationals.
pub fn kernel_of_rows(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    for &p in &PRIMES {
        if let Some(k) = modular::kernel(rows, ncols, p) {
            if k.iter().all(|v| rows.iter().all(|r| dot(r, v).is_zero())) {
                return k;
            }
        }
    }
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.kernel()
}

const PRIMES: [u64; 3] = [4611686018427387847, 4611686018427387817, 4611686018427387787];

fn dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

mod modular {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, ToPrimitive, Zero};

    use super::SparseVec;
    use crate::poly::Rational;

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut r0, mut r1) = (p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(p as i128) as u64
    }

    fn reduce(c: &Rational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let n = c.numer().mod_floor(&pb).to_u64()?;
        let d = c.denom().mod_floor(&pb).to_u64()?;
        (d != 0).then(|| mul(n, inv(d, p), p))
    }

    /// `r/s ≡ a mod p` with `|r|, s ≤ sqrt(p/2)`.
    fn reconstruct(a: u64, p: u64) -> Option<Rational> {
        let bound = ((p / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() > bound {
            return None;
        }
        Some(Rational::new(BigInt::from(r1), BigInt::from(t1)))
    }

    pub(super) fn kernel(rows: &[SparseVec], ncols: usize, p: u64) -> Option<Vec<SparseVec>> {
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
        for r in rows {
            let mut d = vec![0u64; ncols];
            for (i, c) in r {
                d[*i] = reduce(c, p)?;
            }
            m.push(d);
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut top = 0;
        for col in 0..ncols {
            let Some(found) = (top..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(top, found);
            let s = inv(m[top][col], p);
            for x in m[top].iter_mut() {
                *x = mul(*x, s, p);
            }
            let pivot_row = m[top].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == top || row[col] == 0 {
                    continue;
                }
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if *y != 0 {
                        *x = (*x + p - mul(c, *y, p)) % p;
                    }
                }
            }
            pivots.push(col);
            top += 1;
            if top == m.len() {
                break;
            }
        }
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; ncols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut out = Vec::new();
        for free in (0..ncols).filter(|&c| !is_pivot[c]) {
            let mut v: SparseVec = Vec::new();
            for (k, &pc) in pivots.iter().enumerate() {
                let a = m[k][free];
                if a != 0 {
                    v.push((pc, reconstruct(p - a, p)?));
                }
            }
            v.push((free, Rational::one()));
            v.sort_by_key(|e| e.0);
            if v.iter().any(|(_, c)| c.is_zero()) {
                return None;
            }
            out.push(v);
        }
        Some(out)
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion along the first row.
pub fn poly_determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        panic!("empty matrix");
    }
    let nvars = m[0][0].nvars();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, nvars)
}

fn det_rec(m: &[Vec<Polynomial>], row: usize, cols: &[usize], nvars: usize) -> Polynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
        let minor = det_rec(m, row + 1, &rest, nvars);
        let term = &m[row][c] * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
