use std::fmt;

use num_traits::Zero;

use super::row::{MTerm, Row};
use crate::error::{Error, Result};
use crate::poly::{ModuleOrder, Monomial, Polynomial, Rational};

/// An element of the free module `R^m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeModuleVector {
    nvars: usize,
    components: Vec<Polynomial>,
}

impl FreeModuleVector {
    /// Panics if the components live in different rings or the list is empty.
    pub fn new(components: Vec<Polynomial>) -> Self {
        let nvars = components
            .first()
            .expect("a vector needs at least one component")
            .nvars();
        assert!(
            components.iter().all(|p| p.nvars() == nvars),
            "mixed ring dimensions"
        );
        FreeModuleVector { nvars, components }
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        FreeModuleVector {
            nvars,
            components: vec![Polynomial::zero(nvars); rank],
        }
    }

    pub fn unit(nvars: usize, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars, rank);
        v.components[i] = Polynomial::one(nvars);
        v
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::new(vec![p])
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.components.len()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FreeModuleVector {
            nvars: self.nvars,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FreeModuleVector {
            nvars: self.nvars,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("rank mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("rank mismatch")
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        FreeModuleVector {
            nvars: self.nvars,
            components: self.components.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FreeModuleVector {
            nvars: self.nvars,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FreeModuleVector {
            nvars: self.nvars,
            components: self.components.iter().map(|p| -p).collect(),
        }
    }

    /// `Σ self_i · others_i`, the image of `self` under the map sending `e_i` to `others_i`.
    pub fn combine(&self, others: &[FreeModuleVector]) -> Result<FreeModuleVector> {
        if others.len() != self.rank() {
            return Err(Error::RankMismatch(others.len(), self.rank()));
        }
        let target = others
            .first()
            .map(|o| o.rank())
            .ok_or_else(|| Error::InvalidArgument("empty combination".into()))?;
        let mut acc = FreeModuleVector::zero(self.nvars, target);
        for (c, o) in self.components.iter().zip(others) {
            if !c.is_zero() {
                acc = acc.try_add(&o.mul_poly(c))?;
            }
        }
        Ok(acc)
    }

    /// Dot product with polynomials (rank-1 image of `self` under `e_i ↦ ps_i`).
    pub fn dot(&self, ps: &[Polynomial]) -> Result<Polynomial> {
        if ps.len() != self.rank() {
            return Err(Error::RankMismatch(ps.len(), self.rank()));
        }
        let mut acc = Polynomial::zero(self.nvars);
        for (a, b) in self.components.iter().zip(ps) {
            acc = acc.try_add(&a.try_mul(b)?)?;
        }
        Ok(acc)
    }

    /// Shifted degree of each term is `deg(m) + shifts[c]`. Returns the common degree
    /// when homogeneous; `None` when mixed or zero.
    pub fn homogeneous_degree(&self, shifts: &[i64], weights: Option<&[u32]>) -> Option<i64> {
        let mut deg = None;
        for (c, p) in self.components.iter().enumerate() {
            for (m, _) in p.terms() {
                let d = match weights {
                    Some(w) => m.weighted_degree(w) as i64,
                    None => m.degree() as i64,
                } + shifts[c];
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub(crate) fn to_row(&self, order: &ModuleOrder) -> Row {
        let mut terms = Vec::new();
        for (c, p) in self.components.iter().enumerate() {
            for (m, coeff) in p.terms() {
                terms.push(MTerm {
                    mono: m.clone(),
                    comp: c as u32,
                    coeff: coeff.clone(),
                });
            }
        }
        Row::from_unsorted(terms, order)
    }

    pub(crate) fn from_row(row: &Row, nvars: usize, rank: usize) -> Self {
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &row.terms {
            parts[t.comp as usize].push((t.mono.clone(), t.coeff.clone()));
        }
        FreeModuleVector {
            nvars,
            components: parts
                .into_iter()
                .map(|p| Polynomial::from_terms(nvars, p))
                .collect(),
        }
    }

    /// Leading term `(monomial, component, coefficient)` under `order`.
    pub fn leading_term(&self, order: &ModuleOrder) -> Option<(Monomial, usize, Rational)> {
        let row = self.to_row(order);
        row.terms
            .first()
            .map(|t| (t.mono.clone(), t.comp as usize, t.coeff.clone()))
    }

    /// Restricts to components `range`.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        FreeModuleVector {
            nvars: self.nvars,
            components: self.components[start..end].to_vec(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        FreeModuleVector {
            nvars: self.nvars,
            components,
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| p.fmt_with(names)).collect();
        format!("({})", parts.join(", "))
    }

    /// Nonzero constant entries, by component.
    pub fn constant_entries(&self) -> Vec<(usize, Rational)> {
        self.components
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let c = p.evaluate_at_origin();
                (!c.is_zero() && p.is_constant()).then_some((i, c))
            })
            .collect()
    }
}

impl fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&crate::poly::default_var_names(self.nvars)))
    }
}

impl fmt::Debug for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
