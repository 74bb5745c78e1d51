//! The V-filtration along a divisor `f = 0`: membership of a single operator, and graded
//! pieces of `V_k` for quasi-homogeneous `f` by exact linear algebra.

use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{ideal_basis, local_membership_at_origin};
use crate::linalg::{Echelon, SparseVec};
use crate::logder::{log_derivations, quasi_homogeneous_weights};
use crate::poly::{Monomial, Polynomial, Rational, TermOrder};
use crate::weyl::WeylOperator;

#[cfg(test)]
mod tests;

/// How `g ∈ R·f^j` is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MembershipMode {
    /// In the local ring at the origin. Agrees with `Global` for quasi-homogeneous `f`.
    #[default]
    Local,
    /// In the polynomial ring, i.e. at every point at once.
    Global,
}

/// Whether `P ∈ V_k` along `f = 0` (at the origin, or everywhere in `Global` mode).
///
/// With `d = ord P`, checks `P(x^α f^l) ∈ R·f^{l−k}` for all `|α| + l ≤ d`; conditions with
/// `l ≤ k` hold trivially and are skipped.
pub fn v_membership(f: &Polynomial, p: &WeylOperator, k: i64) -> Result<bool> {
    v_membership_with(f, p, k, MembershipMode::Local)
}

pub fn v_membership_with(f: &Polynomial, p: &WeylOperator, k: i64, mode: MembershipMode) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::InvalidDivisor(f.to_string()));
    }
    if p.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch(f.nvars(), p.nvars()));
    }
    let Some(d) = p.order() else {
        return Ok(true);
    };
    let n = f.nvars();
    let graded = quasi_homogeneous_weights(f).is_some();
    let l_min = (k + 1).max(0);
    let mut conditions = Vec::new();
    for l in l_min..=d as i64 {
        for alpha in Monomial::all_up_to_degree(n, d - l as u32) {
            conditions.push((alpha, l as u32));
        }
    }
    let results: Vec<Result<bool>> = conditions
        .par_iter()
        .map(|(alpha, l)| {
            let g = p.apply(&f.pow(*l).mul_term(alpha, &Rational::one()))?;
            let power = f.pow((*l as i64 - k) as u32);
            if graded || mode == MembershipMode::Global {
                Ok(g.divide_exact(&power)?.is_some())
            } else {
                local_membership_at_origin(&g, &ideal_basis(&[power], &TermOrder::DegRevLex)?)
            }
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates on operators of order `≤ d` and weight `w`: one column per pair
/// `(β, x^m)` with `deg_w(x^m) = w + w·β`. Columns run from the highest order down.
#[derive(Clone, Debug)]
pub struct OperatorCoordinates {
    nvars: usize,
    columns: Vec<(Monomial, Monomial)>,
    index: HashMap<(Monomial, Monomial), usize>,
}

impl OperatorCoordinates {
    pub fn new(weights: &[u32], d: u32, w: i64) -> Self {
        let n = weights.len();
        let mut betas = Monomial::all_up_to_degree(n, d);
        betas.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut columns = Vec::new();
        for beta in betas {
            let deg = w + beta.weighted_degree(weights) as i64;
            if deg < 0 {
                continue;
            }
            for m in Monomial::all_of_weighted_degree(weights, deg as u64) {
                columns.push((beta.clone(), m));
            }
        }
        let index = columns.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        OperatorCoordinates {
            nvars: n,
            columns,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[(Monomial, Monomial)] {
        &self.columns
    }

    /// Coordinate vector, or `None` if `op` has a term outside this box.
    pub fn to_vector(&self, op: &WeylOperator) -> Option<SparseVec> {
        let mut v = Vec::new();
        for (beta, p) in op.terms() {
            for (m, c) in p.terms() {
                v.push((*self.index.get(&(beta.clone(), m.clone()))?, c.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    }

    pub fn to_operator(&self, v: &SparseVec) -> WeylOperator {
        let mut grouped: Vec<(Monomial, Vec<(Monomial, Rational)>)> = Vec::new();
        for (i, c) in v {
            let (beta, m) = &self.columns[*i];
            match grouped.iter_mut().find(|(b, _)| b == beta) {
                Some((_, terms)) => terms.push((m.clone(), c.clone())),
                None => grouped.push((beta.clone(), vec![(m.clone(), c.clone())])),
            }
        }
        WeylOperator::from_terms(
            self.nvars,
            grouped
                .into_iter()
                .map(|(b, t)| (b, Polynomial::from_terms(self.nvars, t))),
        )
    }
}

/// A graded piece of operators along `f`: order at most `d`, weight `w`.
#[derive(Clone, Debug)]
pub struct GradedOperatorSpace {
    pub f: Polynomial,
    pub level: i64,
    pub d: u32,
    pub w: i64,
    pub weights: Vec<u32>,
    /// Reduced row echelon basis in the coordinates of [`OperatorCoordinates`].
    pub basis: Vec<WeylOperator>,
}

impl GradedOperatorSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self) -> OperatorCoordinates {
        OperatorCoordinates::new(&self.weights, self.d, self.w)
    }

    fn echelon(&self, coords: &OperatorCoordinates) -> Echelon {
        let mut e = Echelon::new(coords.len());
        for b in &self.basis {
            e.insert(coords.to_vector(b).expect("basis element in box"));
        }
        e
    }

    pub fn contains(&self, op: &WeylOperator) -> bool {
        let coords = self.coordinates();
        match coords.to_vector(op) {
            Some(v) => self.echelon(&coords).contains(&v),
            None => op.is_zero(),
        }
    }
}

fn graded_weights(f: &Polynomial) -> Result<(Vec<u32>, u64)> {
    if f.is_constant() {
        return Err(Error::InvalidDivisor(f.to_string()));
    }
    quasi_homogeneous_weights(f).ok_or_else(|| Error::NotHomogeneous(f.to_string()))
}

fn space_from_echelon(
    f: &Polynomial,
    level: i64,
    d: u32,
    w: i64,
    weights: &[u32],
    coords: &OperatorCoordinates,
    vectors: &[SparseVec],
) -> GradedOperatorSpace {
    GradedOperatorSpace {
        f: f.clone(),
        level,
        d,
        w,
        weights: weights.to_vec(),
        basis: vectors.iter().map(|v| coords.to_operator(v)).collect(),
    }
}

/// Remainders modulo a single polynomial, memoized per monomial.
struct MonomialRemainders {
    modulus: Polynomial,
    cache: HashMap<Monomial, Polynomial>,
}

impl MonomialRemainders {
    fn new(modulus: Polynomial) -> Self {
        MonomialRemainders {
            modulus,
            cache: HashMap::new(),
        }
    }

    fn monomial(&mut self, m: &Monomial) -> Polynomial {
        if let Some(r) = self.cache.get(m) {
            return r.clone();
        }
        let n = self.modulus.nvars();
        let (lm, lc) = self.modulus.terms()[0].clone();
        let r = match m.try_div(&lm) {
            None => Polynomial::monomial(n, m.clone(), Rational::one()),
            Some(q) => {
                let scale = -lc.recip();
                let tail: Vec<(Monomial, Rational)> = self.modulus.terms()[1..].to_vec();
                let mut acc = Vec::new();
                for (t, c) in tail {
                    let k = &c * &scale;
                    acc.extend(
                        self.monomial(&q.mul(&t))
                            .terms()
                            .iter()
                            .map(|(u, a)| (u.clone(), a * &k)),
                    );
                }
                Polynomial::from_terms(n, acc)
            }
        };
        self.cache.insert(m.clone(), r.clone());
        r
    }

    fn reduce(&mut self, p: &Polynomial) -> Polynomial {
        let mut acc = Vec::new();
        for (m, c) in p.terms() {
            acc.extend(self.monomial(m).terms().iter().map(|(u, a)| (u.clone(), a * c)));
        }
        Polynomial::from_terms(p.nvars(), acc)
    }
}

/// Rows expressing the linear conditions `P(x^α f^l) ≡ 0 mod f^{l−k}` for
/// `max(0, k+1) ≤ l`, `|α| + l ≤ d`, and optionally `p_β ≡ 0 mod f^div` for every `β`.
fn condition_rows(
    f: &Polynomial,
    coords: &OperatorCoordinates,
    d: u32,
    k: i64,
    div: u32,
) -> Result<Vec<SparseVec>> {
    let n = f.nvars();
    let mut jobs: Vec<(Monomial, u32)> = Vec::new();
    for l in (k + 1).max(0)..=d as i64 {
        for alpha in Monomial::all_up_to_degree(n, d - l as u32) {
            jobs.push((alpha, l as u32));
        }
    }
    let blocks: Vec<Result<Vec<SparseVec>>> = jobs
        .par_iter()
        .map(|(alpha, l)| {
            let g = f.pow(*l).mul_term(alpha, &Rational::one());
            let mut rems = MonomialRemainders::new(f.pow((*l as i64 - k) as u32));
            let mut derivs: HashMap<Monomial, Polynomial> = HashMap::new();
            let mut rows: HashMap<Monomial, SparseVec> = HashMap::new();
            for (col, (beta, m)) in coords.columns().iter().enumerate() {
                let dg = derivs
                    .entry(beta.clone())
                    .or_insert_with(|| g.derivative_multi(&beta.exponents()));
                if dg.is_zero() {
                    continue;
                }
                let r = rems.reduce(&dg.mul_term(m, &Rational::one()));
                for (mono, c) in r.terms() {
                    rows.entry(mono.clone()).or_default().push((col, c.clone()));
                }
            }
            Ok(rows.into_values().collect())
        })
        .collect();
    let mut out = Vec::new();
    for b in blocks {
        out.extend(b?);
    }
    if div > 0 {
        let mut rems = MonomialRemainders::new(f.pow(div));
        let mut rows: HashMap<(Monomial, Monomial), SparseVec> = HashMap::new();
        for (col, (beta, m)) in coords.columns().iter().enumerate() {
            let r = rems.reduce(&Polynomial::monomial(n, m.clone(), Rational::one()));
            for (mono, c) in r.terms() {
                rows.entry((beta.clone(), mono.clone()))
                    .or_default()
                    .push((col, c.clone()));
            }
        }
        out.extend(rows.into_values());
    }
    Ok(out)
}

fn solve(
    f: &Polynomial,
    weights: &[u32],
    d: u32,
    w: i64,
    k: i64,
    div: u32,
) -> Result<(OperatorCoordinates, Vec<SparseVec>)> {
    let coords = OperatorCoordinates::new(weights, d, w);
    let mut rows = condition_rows(f, &coords, d, k, div)?;
    // deterministic row order
    rows.sort();
    let kernel = crate::linalg::kernel_of_rows(&rows, coords.len());
    Ok((
        coords.clone(),
        crate::linalg::canonical_basis(&kernel, coords.len()),
    ))
}

/// Basis of the operators of order `≤ d` and weight `w` in `V_0`.
pub fn v0_graded_basis(f: &Polynomial, d: u32, w: i64) -> Result<GradedOperatorSpace> {
    let (weights, _) = graded_weights(f)?;
    let (coords, vs) = solve(f, &weights, d, w, 0, 0)?;
    Ok(space_from_echelon(f, 0, d, w, &weights, &coords, &vs))
}

/// Basis of `V_k` in order `≤ d` and weight `w`, via `V_k = f^{−k}·V_0` for `k ≤ 0` and
/// `V_k = f^{−k}·(V_0 ∩ f^k·D)` for `k > 0`.
pub fn vk_graded_basis(f: &Polynomial, k: i64, d: u32, w: i64) -> Result<GradedOperatorSpace> {
    let (weights, deg) = graded_weights(f)?;
    let deg = deg as i64;
    let coords = OperatorCoordinates::new(&weights, d, w);
    let mut e = Echelon::new(coords.len());
    if k <= 0 {
        let j = (-k) as u32;
        let base = v0_graded_basis(f, d, w - deg * j as i64)?;
        let fj = WeylOperator::from_polynomial(f.pow(j));
        for b in &base.basis {
            let op = fj.compose(b)?;
            e.insert(coords.to_vector(&op).expect("scaled operator stays in box"));
        }
    } else {
        let j = k as u32;
        let (big, vs) = solve(f, &weights, d, w + deg * k, 0, j)?;
        let fj = f.pow(j);
        for v in &vs {
            let op = big.to_operator(v);
            let divided = WeylOperator::from_terms(
                f.nvars(),
                op.terms().map(|(b, p)| {
                    (
                        b.clone(),
                        p.divide_exact(&fj)
                            .ok()
                            .flatten()
                            .expect("coefficient divisible by f^k"),
                    )
                }),
            );
            e.insert(coords.to_vector(&divided).expect("divided operator in box"));
        }
    }
    Ok(space_from_echelon(f, k, d, w, &weights, &coords, &e.rref()))
}

/// Basis of `V_k` in order `≤ d` and weight `w` from the membership conditions at level `k`
/// directly.
pub fn vk_graded_basis_direct(f: &Polynomial, k: i64, d: u32, w: i64) -> Result<GradedOperatorSpace> {
    let (weights, _) = graded_weights(f)?;
    let (coords, vs) = solve(f, &weights, d, w, k, 0)?;
    Ok(space_from_echelon(f, k, d, w, &weights, &coords, &vs))
}

/// Span of `x^γ·θ_{i_1}⋯θ_{i_r}` with `r ≤ d` and `i_1 ≤ … ≤ i_r`, over minimal homogeneous
/// generators `θ_i` of Der(log f), in weight `w`.
pub fn logder_generated_graded(f: &Polynomial, d: u32, w: i64) -> Result<GradedOperatorSpace> {
    let (weights, _) = graded_weights(f)?;
    let dm = log_derivations(f)?.minimalized()?;
    let fields = dm.vector_fields();
    let degrees = dm.degrees().expect("graded generators");
    let coords = OperatorCoordinates::new(&weights, d, w);
    let mut e = Echelon::new(coords.len());
    let n = f.nvars();
    // (product, weight) for every sorted index sequence of length ≤ d
    let mut layer: Vec<(Vec<usize>, WeylOperator, i64)> = vec![(Vec::new(), WeylOperator::one(n), 0)];
    let mut all = layer.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for (idx, op, wt) in &layer {
            let start = idx.last().copied().unwrap_or(0);
            for i in start..fields.len() {
                let mut idx2 = idx.clone();
                idx2.push(i);
                next.push((idx2, op.compose(&fields[i])?, wt + degrees[i]));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    for (_, op, wt) in &all {
        let rest = w - wt;
        if rest < 0 {
            continue;
        }
        for m in Monomial::all_of_weighted_degree(&weights, rest as u64) {
            let t = op.mul_left(&Polynomial::monomial(n, m, Rational::one()));
            if t.is_zero() {
                continue;
            }
            e.insert(coords.to_vector(&t).expect("product in box"));
        }
    }
    Ok(space_from_echelon(f, 0, d, w, &weights, &coords, &e.rref()))
}

/// Result of comparing `V_0` with the subalgebra generated by logarithmic vector fields in
/// one graded piece.
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    Equal {
        dim: usize,
    },
    /// `witness` lies in `V_0` but not in the generated part; it is reduced modulo the
    /// generated part and has leading coefficient one.
    Gap {
        v0_dim: usize,
        generated_dim: usize,
        witness: WeylOperator,
    },
}

pub fn compare_v0(f: &Polynomial, d: u32, w: i64) -> Result<Comparison> {
    let v0 = v0_graded_basis(f, d, w)?;
    let gen = logder_generated_graded(f, d, w)?;
    let coords = v0.coordinates();
    let ge = gen.echelon(&coords);
    for b in &gen.basis {
        if !v0.contains(b) {
            return Err(Error::InvalidArgument(format!(
                "generated operator {b} is not in V_0"
            )));
        }
    }
    for b in &v0.basis {
        let r = ge.reduce(coords.to_vector(b).expect("basis in box"));
        if let Some((_, lead)) = r.first() {
            let inv = lead.recip();
            let scaled: SparseVec = r.iter().map(|(i, c)| (*i, c * &inv)).collect();
            return Ok(Comparison::Gap {
                v0_dim: v0.dim(),
                generated_dim: gen.dim(),
                witness: coords.to_operator(&scaled),
            });
        }
    }
    Ok(Comparison::Equal { dim: v0.dim() })
}

/// Default weight range scanned by comparisons: `[−d, d·(deg f − 1)]` for ordinary
/// homogeneity, `[−d·max w, d·(deg f − min w)]` with weights.
pub fn default_weight_range(f: &Polynomial, d: u32) -> Result<(i64, i64)> {
    let (weights, deg) = graded_weights(f)?;
    let wmax = *weights.iter().max().unwrap_or(&1) as i64;
    let wmin = *weights.iter().min().unwrap_or(&1) as i64;
    let d = d as i64;
    Ok((-d * wmax, d * (deg as i64 - wmin)))
}
