//! Sparse multivariate polynomials over the rationals.

mod monomial;
mod order;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use monomial::Monomial;
pub use order::{ModuleOrder, ModuleOrderKind, TermOrder};

use crate::error::{Error, Result};

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[inline]
fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    TermOrder::DegRevLex.compare(a, b)
}

/// A polynomial in `nvars` variables. Terms are kept sorted by descending degrevlex,
/// with no zero coefficients, so equal polynomials have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    /// Wraps terms that are already sorted (descending degrevlex) and nonzero.
    pub(crate) fn from_sorted_unchecked(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    /// Terms sorted descending under `order`.
    pub fn terms_in(&self, order: &TermOrder) -> Vec<(Monomial, Rational)> {
        let mut t = self.terms.clone();
        if *order != TermOrder::DegRevLex {
            t.sort_by(|a, b| order.compare(&b.0, &a.0));
        }
        t
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        if *order == TermOrder::DegRevLex {
            return self.terms.first().map(|(m, c)| (m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| canonical_cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(weights)).max()
    }

    /// True when every term has the same (weighted) degree. Zero counts as homogeneous.
    pub fn is_homogeneous(&self, weights: Option<&[u32]>) -> bool {
        let deg = |m: &Monomial| match weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree() as u64,
        };
        let mut it = self.terms.iter().map(|(m, _)| deg(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn evaluate_at_origin(&self) -> Rational {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Decomposition into homogeneous pieces, by increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Polynomial)> {
        let mut out: Vec<(u32, Polynomial)> = Vec::new();
        // descending degrevlex groups by descending degree
        for (m, c) in self.terms.iter().rev() {
            let d = m.degree();
            match out.last_mut() {
                Some((dd, p)) if *dd == d => p.terms.push((m.clone(), c.clone())),
                _ => out.push((
                    d,
                    Polynomial::from_sorted_unchecked(self.nvars, vec![(m.clone(), c.clone())]),
                )),
            }
        }
        for (_, p) in &mut out {
            p.terms.reverse();
        }
        out
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                canonical_cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Multiplication by a single term `c·m`; order is preserved so no sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            terms.push((m2, c * rat(e as i64)));
        }
        // differentiating by one variable keeps distinct monomials distinct but may reorder
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// `∂^β` applied to the polynomial.
    pub fn derivative_multi(&self, beta: &[u32]) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len());
        'outer: for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut coef = c.clone();
            for (i, &b) in beta.iter().enumerate() {
                let e = m.0[i] as u32;
                if e < b {
                    continue 'outer;
                }
                let mut falling = BigInt::one();
                for k in 0..b {
                    falling *= BigInt::from(e - k);
                }
                coef *= Rational::from_integer(falling);
                m2.0[i] = (e - b) as u16;
            }
            terms.push((m2, coef));
        }
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Exact quotient `g / h`, or `None` when `h` does not divide `g`.
    pub fn divide_exact(&self, h: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_dim(h)?;
        if h.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = h.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let Some(q) = m.try_div(&lm) else {
                return Ok(None);
            };
            let qc = &c / &lc;
            rem = rem.merge(&h.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        // quotient terms were produced in descending order
        Ok(Some(Polynomial {
            nvars: self.nvars,
            terms: quot,
        }))
    }

    /// Remainder of division by a single polynomial under degrevlex. This is linear in
    /// `self` and vanishes exactly when `h` divides `self`.
    pub fn remainder(&self, h: &Polynomial) -> Result<Polynomial> {
        self.check_dim(h)?;
        if h.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = h.terms[0].clone();
        let mut rem = self.clone();
        // terms of `rem` before `idx` are irreducible and final
        let mut idx = 0;
        while idx < rem.terms.len() {
            let (m, c) = rem.terms[idx].clone();
            match m.try_div(&lm) {
                Some(q) => {
                    let qc = &c / &lc;
                    let tail = Polynomial {
                        nvars: self.nvars,
                        terms: rem.terms.split_off(idx),
                    };
                    rem.terms.extend(tail.merge(&h.mul_term(&q, &qc), true).terms);
                }
                None => idx += 1,
            }
        }
        Ok(rem)
    }

    /// Substitutes `images[i]` for variable `i`. All images share a common ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut acc = Polynomial::zero(target);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().product(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.product(&powers[i][e]);
                }
            }
            acc = acc.merge(&t, false);
        }
        acc
    }

    /// Embeds into a ring with more variables: variable `i` becomes `map[i]`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (m.remap(map, nvars), c.clone())),
        )
    }

    /// Embeds into `nvars ≥ self.nvars` variables, keeping indices.
    pub fn extend(&self, nvars: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(&map, nvars)
    }

    /// Restricts to the first `nvars` variables; `None` if a dropped variable occurs.
    pub fn restrict(&self, nvars: usize) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0[nvars..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial(m.0[..nvars].iter().copied().collect()), c.clone()));
        }
        Some(Polynomial::from_terms(nvars, terms))
    }

    /// Makes the leading coefficient (degrevlex) equal to one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Default variable names: `x,y,z,w` for up to four variables, otherwise `x1..xn`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars <= 4 {
        ["x", "y", "z", "w"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_var_names(self.nvars)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Lossy conversion used only for human-readable diagnostics.
pub fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = (&a + &b) * (&a - &b);
        let expect = &a.pow(2) - &b.pow(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn zero_absorbs() {
        let p = &x(3, 0) + &Polynomial::from_int(3, 7);
        assert!((&p * &Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert_eq!(x(2, 0).try_add(&x(3, 0)), Err(Error::DimensionMismatch(2, 3)));
        assert!(x(2, 0).try_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(2, 0), x(2, 1));
        let g = &a.pow(2) * &b;
        assert_eq!(g.divide_exact(&(&a * &b)).unwrap(), Some(a.clone()));
        let h = &a.pow(2) + &b.pow(2);
        assert_eq!(h.divide_exact(&a).unwrap(), None);
        assert_eq!(h.divide_exact(&Polynomial::zero(2)), Err(Error::DivisionByZero));
        let n = 3;
        let (x1, x2, x3) = (x(n, 0), x(n, 1), x(n, 2));
        let f3 = &(&(&x1 * &x2) * &x3) * &(&(&x1 + &x2) + &x3);
        assert_eq!(f3.pow(2).divide_exact(&f3).unwrap(), Some(f3.clone()));
    }

    #[test]
    fn remainder_detects_divisibility() {
        let (a, b) = (x(2, 0), x(2, 1));
        let h = &a + &b;
        let g = &(&a.pow(3) - &b.pow(3)) + &Polynomial::from_int(2, 1);
        let r = g.remainder(&h).unwrap();
        // x^3 - y^3 = (x - y)(x^2 + xy + y^2), remainder modulo x + y is -2y^3 + 1
        assert_eq!(r, &b.pow(3).scale(&rat(-2)) + &Polynomial::from_int(2, 1));
        assert!((&h * &g).remainder(&h).unwrap().is_zero());
    }

    #[test]
    fn origin_and_components() {
        let p = &Polynomial::from_int(1, 3) + &x(1, 0);
        assert_eq!(p.evaluate_at_origin(), rat(3));
        let (a, b, c) = (x(3, 0), x(3, 1), x(3, 2));
        let q = &(&a.pow(2) + &(&a * &b)) + &c;
        let comps = q.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (1, c.clone()));
        assert_eq!(comps[1], (2, &a.pow(2) + &(&a * &b)));
        assert_eq!(Polynomial::zero(3).evaluate_at_origin(), rat(0));
        assert!(Polynomial::zero(3).homogeneous_components().is_empty());
    }

    #[test]
    fn derivatives() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &a.pow(3) * &b.pow(2);
        assert_eq!(p.derivative(0), (&a.pow(2) * &b.pow(2)).scale(&rat(3)));
        assert_eq!(p.derivative_multi(&[2, 1]), (&a * &b).scale(&rat(12)));
        assert!(p.derivative_multi(&[4, 0]).is_zero());
    }

    #[test]
    fn substitution() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &a * &b;
        let q = p.substitute(&[&a + &b, &a - &b]);
        assert_eq!(q, &a.pow(2) - &b.pow(2));
    }

    #[test]
    fn printing() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&a.pow(2).scale(&ratio(1, 3)) - &b) + &Polynomial::from_int(2, -2);
        assert_eq!(p.to_string(), "1/3*x^2 - y - 2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }
}
