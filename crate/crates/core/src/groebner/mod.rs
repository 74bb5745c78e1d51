//! Gröbner bases of ideals and of submodules of free modules, with syzygies, ideal
//! quotients, saturation, elimination and dimension.

mod buchberger;
mod ops;
mod row;
mod vector;

use std::fmt;

pub use ops::{
    codim, eliminate, eliminate_polys, graded_order, ideal_quotient, is_groebner_basis, lift,
    local_membership_at_origin, minimal_generators, module_quotient_by_variable,
    module_quotient_by_variable_generic, saturation, syzygies, syzygies_with_order, Codim,
};
pub use vector::FreeModuleVector;

use buchberger::{groebner_rows, reduce};
use row::Row;

use crate::error::{Error, Result};
use crate::poly::{ModuleOrder, Monomial, Polynomial, TermOrder};

/// A reduced Gröbner basis of a submodule of `R^rank` (rank 1: an ideal).
#[derive(Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    rank: usize,
    order: ModuleOrder,
    rows: Vec<Row>,
    generators: Vec<FreeModuleVector>,
}

/// Computes the reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(gens: &[FreeModuleVector], order: &ModuleOrder) -> Result<GroebnerBasis> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("buchberger needs at least one generator".into()))?;
    let (nvars, rank) = (first.nvars(), first.rank());
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch(rank, g.rank()));
        }
        if g.nvars() != nvars {
            return Err(Error::DimensionMismatch(nvars, g.nvars()));
        }
    }
    let rows: Vec<Row> = gens.iter().map(|g| g.to_row(order)).collect();
    let rows = groebner_rows(rows, order, rank == 1);
    Ok(GroebnerBasis::from_rows(nvars, rank, order.clone(), rows))
}

/// Gröbner basis of an ideal under `order` (term-over-position is irrelevant in rank one).
pub fn ideal_basis(gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    let nvars = gens
        .first()
        .map(|g| g.nvars())
        .ok_or_else(|| Error::InvalidArgument("empty ideal generator list".into()))?;
    let vs: Vec<FreeModuleVector> = gens
        .iter()
        .map(|g| FreeModuleVector::from_polynomial(g.clone()))
        .collect();
    let mut gb = buchberger(&vs, &ModuleOrder::top(order.clone()))?;
    gb.nvars = nvars;
    Ok(gb)
}

impl GroebnerBasis {
    pub(crate) fn from_rows(nvars: usize, rank: usize, order: ModuleOrder, rows: Vec<Row>) -> Self {
        let generators = rows
            .iter()
            .map(|r| FreeModuleVector::from_row(r, nvars, rank))
            .collect();
        GroebnerBasis {
            nvars,
            rank,
            order,
            rows,
            generators,
        }
    }

    /// The zero submodule.
    pub fn zero(nvars: usize, rank: usize, order: ModuleOrder) -> Self {
        Self::from_rows(nvars, rank, order, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    /// Generators sorted by ascending leading term; monic.
    pub fn generators(&self) -> &[FreeModuleVector] {
        &self.generators
    }

    /// Rank-one generators as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.component(0).clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Leading terms as `(monomial, component)`.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.rows
            .iter()
            .map(|r| (r.lead().mono.clone(), r.lead().comp as usize))
            .collect()
    }

    /// True for the unit ideal (or the whole free module).
    pub fn is_whole_module(&self) -> bool {
        let mut seen = vec![false; self.rank];
        for r in &self.rows {
            if r.lead().mono.is_one() {
                seen[r.lead().comp as usize] = true;
            }
        }
        seen.iter().all(|&b| b)
    }

    /// Complete reduction of `v`; zero exactly when `v` lies in the submodule.
    pub fn normal_form(&self, v: &FreeModuleVector) -> Result<FreeModuleVector> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, v.rank()));
        }
        if v.nvars() != self.nvars {
            return Err(Error::DimensionMismatch(self.nvars, v.nvars()));
        }
        let alive = vec![true; self.rows.len()];
        let r = reduce(v.to_row(&self.order), &self.rows, &alive, &self.order, true);
        Ok(FreeModuleVector::from_row(&r, self.nvars, self.rank))
    }

    pub fn normal_form_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self
            .normal_form(&FreeModuleVector::from_polynomial(p.clone()))?
            .component(0)
            .clone())
    }

    pub fn contains(&self, v: &FreeModuleVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_poly(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form_poly(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in this submodule.
    pub fn contains_module(&self, other: &GroebnerBasis) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of the generated submodules.
    pub fn same_module(&self, other: &GroebnerBasis) -> Result<bool> {
        if self.order == other.order {
            return Ok(self.generators == other.generators);
        }
        Ok(self.contains_module(other)? && other.contains_module(self)?)
    }

    /// Checks Buchberger's criterion on the stored generators.
    pub fn verify(&self) -> bool {
        buchberger::satisfies_buchberger_criterion(&self.rows, &self.order)
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter()).finish()
    }
}
