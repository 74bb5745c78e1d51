//! The Weyl algebra: differential operators with polynomial coefficients in normal order
//! (coefficients to the left of all derivatives).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{default_var_names, format_monomial, Monomial, Polynomial, Rational};

/// `Σ_β p_β ∂^β`, keyed by the derivative exponent `β`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylOperator {
    nvars: usize,
    terms: BTreeMap<Monomial, Polynomial>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// All `μ ≤ β` componentwise.
fn sub_exponents(beta: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(beta.nvars())];
    for i in 0..beta.nvars() {
        let e = beta.exponent(i);
        if e == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for m in &out {
            for k in 0..=e {
                let mut m2 = m.exponents();
                m2[i] = k;
                next.push(Monomial::from_exponents(&m2));
            }
        }
        out = next;
    }
    out
}

impl WeylOperator {
    pub fn zero(nvars: usize) -> Self {
        WeylOperator {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let nvars = p.nvars();
        Self::term(Monomial::one(nvars), p)
    }

    /// `∂_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Polynomial::one(nvars))
    }

    /// `p·∂^β`.
    pub fn term(beta: Monomial, p: Polynomial) -> Self {
        let nvars = p.nvars();
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(beta, p);
        }
        WeylOperator { nvars, terms }
    }

    /// The vector field `Σ a_i ∂_i`.
    pub fn vector_field(coeffs: &[Polynomial]) -> Self {
        let nvars = coeffs.len();
        let mut op = Self::zero(nvars);
        for (i, a) in coeffs.iter().enumerate() {
            assert_eq!(
                a.nvars(),
                nvars,
                "a vector field needs one coefficient per variable"
            );
            op.add_term(Monomial::var(nvars, i), a.clone());
        }
        op
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Polynomial)>>(nvars: usize, terms: I) -> Self {
        let mut op = Self::zero(nvars);
        for (b, p) in terms {
            op.add_term(b, p);
        }
        op
    }

    fn add_term(&mut self, beta: Monomial, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&beta) {
            Some(q) => {
                let s = &*q + &p;
                if s.is_zero() {
                    self.terms.remove(&beta);
                } else {
                    *q = s;
                }
            }
            None => {
                self.terms.insert(beta, p);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(β, p_β)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, beta: &Monomial) -> Option<&Polynomial> {
        self.terms.get(beta)
    }

    /// Order in the filtration `F`; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The polynomial when the operator has order zero.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self.order() {
            None => Some(Polynomial::zero(self.nvars)),
            Some(0) => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    /// Coefficients `a_i` when the operator is a vector field `Σ a_i ∂_i`.
    pub fn as_vector_field(&self) -> Option<Vec<Polynomial>> {
        if self.terms.keys().any(|b| b.degree() != 1) {
            return None;
        }
        Some(
            (0..self.nvars)
                .map(|i| {
                    self.terms
                        .get(&Monomial::var(self.nvars, i))
                        .cloned()
                        .unwrap_or_else(|| Polynomial::zero(self.nvars))
                })
                .collect(),
        )
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.add_term(b.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("ring dimension mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WeylOperator {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(b, p)| (b.clone(), -p)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        WeylOperator {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(b, p)| (b.clone(), p.scale(c))).collect(),
        }
    }

    /// Left multiplication by a function, `g·P`.
    pub fn mul_left(&self, g: &Polynomial) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(b, p)| (b.clone(), g * p)))
    }

    /// Applies the operator to a function: `Σ p_β·∂^β(g)`.
    pub fn apply(&self, g: &Polynomial) -> Result<Polynomial> {
        if g.nvars() != self.nvars {
            return Err(Error::DimensionMismatch(self.nvars, g.nvars()));
        }
        let mut acc = Polynomial::zero(self.nvars);
        for (b, p) in &self.terms {
            let d = g.derivative_multi(&b.exponents());
            if !d.is_zero() {
                acc = &acc + &(p * &d);
            }
        }
        Ok(acc)
    }

    /// Normally ordered product `P·Q`, using `∂^β q = Σ_{μ≤β} C(β,μ) ∂^μ(q) ∂^{β−μ}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (beta, p) in &self.terms {
            let subs = sub_exponents(beta);
            for (gamma, q) in &other.terms {
                for mu in &subs {
                    let dq = q.derivative_multi(&mu.exponents());
                    if dq.is_zero() {
                        continue;
                    }
                    let mut c = BigInt::one();
                    for i in 0..self.nvars {
                        c *= binomial(beta.exponent(i), mu.exponent(i));
                    }
                    let coeff = (p * &dq).scale(&Rational::from_integer(c));
                    let rest = mu.quotient_of(beta).mul(gamma);
                    match acc.get_mut(&rest) {
                        Some(e) => *e = &*e + &coeff,
                        None => {
                            acc.insert(rest, coeff);
                        }
                    }
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(WeylOperator {
            nvars: self.nvars,
            terms: acc,
        })
    }

    /// `[P, Q] = PQ − QP`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.compose(other)?.sub(&other.compose(self)?))
    }

    /// Principal symbol in `2n` variables `x_1..x_n, ξ_1..ξ_n`.
    pub fn symbol(&self) -> Result<Polynomial> {
        let d = self.order().ok_or(Error::ZeroSymbol)?;
        Ok(self.part_of_order(d))
    }

    /// The order-`d` part with `∂_i ↦ ξ_i` (zero if there is none).
    pub fn part_of_order(&self, d: u32) -> Polynomial {
        let n = self.nvars;
        let map: Vec<usize> = (0..n).collect();
        let mut acc = Polynomial::zero(2 * n);
        for (b, p) in &self.terms {
            if b.degree() != d {
                continue;
            }
            let mut xi = vec![0u32; 2 * n];
            for i in 0..n {
                xi[n + i] = b.exponent(i);
            }
            let lifted = p.remap(&map, 2 * n);
            acc = &acc + &lifted.mul_term(&Monomial::from_exponents(&xi), &Rational::one());
        }
        acc
    }

    /// The weight `deg_w(p_β) − w·β` shared by every term, if any (`w = 1` by default).
    pub fn weight(&self, weights: Option<&[u32]>) -> Option<i64> {
        let ones = vec![1u32; self.nvars];
        let w = weights.unwrap_or(&ones);
        let mut out = None;
        for (b, p) in &self.terms {
            if !p.is_homogeneous(Some(w)) {
                return None;
            }
            let wt = p.weighted_degree(w)? as i64 - b.weighted_degree(w) as i64;
            match out {
                None => out = Some(wt),
                Some(o) if o != wt => return None,
                _ => {}
            }
        }
        out
    }

    /// Linear change of coordinates. With `x = A·y`, a function `g(x)` becomes
    /// `g(A·y)`, and `∂_{x_i} = Σ_j (A^{-1})_{j i} ∂_{y_j}`. `a_inv` is `A^{-1}`.
    pub fn linear_change(&self, a: &[Vec<Rational>], a_inv: &[Vec<Rational>]) -> Result<Self> {
        let n = self.nvars;
        let images = linear_images(a, n);
        let partials: Vec<WeylOperator> = (0..n)
            .map(|i| {
                let mut op = WeylOperator::zero(n);
                for (j, row) in a_inv.iter().enumerate() {
                    if !row[i].is_zero() {
                        op = op.add(&WeylOperator::partial(n, j).scale(&row[i]));
                    }
                }
                op
            })
            .collect();
        let mut acc = WeylOperator::zero(n);
        for (b, p) in &self.terms {
            let mut t = WeylOperator::from_polynomial(p.substitute(&images));
            for i in 0..n {
                for _ in 0..b.exponent(i) {
                    t = t.compose(&partials[i])?;
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let dnames: Vec<String> = names.iter().map(|s| format!("d{s}")).collect();
        let mut parts: Vec<String> = Vec::new();
        // highest order first, then lexicographically by derivative exponent
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        for b in keys {
            let p = &self.terms[b];
            let d = format_monomial(b, &dnames);
            let s = if d.is_empty() {
                format!("({})", p.fmt_with(names))
            } else if *p == Polynomial::one(self.nvars) {
                d
            } else {
                format!("({})*{}", p.fmt_with(names), d)
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Images `x_i ↦ Σ_j a_{ij} y_j` as polynomials.
pub fn linear_images(a: &[Vec<Rational>], n: usize) -> Vec<Polynomial> {
    (0..n)
        .map(|i| Polynomial::from_terms(n, (0..n).map(|j| (Monomial::var(n, j), a[i][j].clone()))))
        .collect()
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_var_names(self.nvars)))
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOperator[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests;
