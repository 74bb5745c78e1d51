//! Derived constructions: syzygies, lifting, quotients, saturation, elimination, dimension.

use num_traits::Zero;

use super::buchberger::{groebner_rows, reduce, satisfies_buchberger_criterion};
use super::row::Row;
use super::{buchberger, ideal_basis, FreeModuleVector, GroebnerBasis};
use crate::error::{Error, Result};
use crate::poly::{ModuleOrder, Monomial, Polynomial, TermOrder};

fn check_uniform(gens: &[FreeModuleVector]) -> Result<(usize, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    for g in gens {
        if g.rank() != first.rank() {
            return Err(Error::RankMismatch(first.rank(), g.rank()));
        }
        if g.nvars() != first.nvars() {
            return Err(Error::DimensionMismatch(first.nvars(), g.nvars()));
        }
    }
    Ok((first.nvars(), first.rank()))
}

fn is_degree_order(t: &TermOrder) -> bool {
    matches!(t, TermOrder::DegRevLex | TermOrder::WeightedDegRevLex(_))
}

/// Order on `R^{m+k}` for the augmented module `(g_i, e_i)`: the first block dominates,
/// second-block components carry the degrees of the generators as shifts.
fn augmented_order(gens: &[FreeModuleVector], base: &ModuleOrder, m: usize) -> ModuleOrder {
    let shifts = if base.shifts.is_some() || is_degree_order(&base.term) {
        let mut s: Vec<i64> = (0..m).map(|c| base.shift(c as u32)).collect();
        for g in gens {
            let d = g
                .leading_term(base)
                .map(|(mono, c, _)| base.degree(&mono, c as u32))
                .unwrap_or(0);
            s.push(d);
        }
        Some(s)
    } else {
        None
    };
    ModuleOrder {
        term: base.term.clone(),
        kind: base.kind,
        higher_positions_first: base.higher_positions_first,
        shifts,
        block_split: Some(m),
    }
}

fn augmented_rows(gens: &[FreeModuleVector], order: &ModuleOrder) -> Vec<Row> {
    let (nvars, k) = (gens[0].nvars(), gens.len());
    gens.iter()
        .enumerate()
        .map(|(i, g)| g.concat(&FreeModuleVector::unit(nvars, k, i)).to_row(order))
        .collect()
}

/// Generators of the first syzygy module `{a | Σ a_i·gens_i = 0}` under the default
/// term-over-position degrevlex order. The result is a Gröbner basis of the syzygy module
/// for the induced order.
pub fn syzygies(gens: &[FreeModuleVector]) -> Result<Vec<FreeModuleVector>> {
    syzygies_with_order(gens, &ModuleOrder::default())
}

pub fn syzygies_with_order(gens: &[FreeModuleVector], base: &ModuleOrder) -> Result<Vec<FreeModuleVector>> {
    let (nvars, m) = check_uniform(gens)?;
    let k = gens.len();
    let order = augmented_order(gens, base, m);
    let rows = groebner_rows(augmented_rows(gens, &order), &order, false);
    Ok(rows
        .iter()
        .filter(|r| r.lead().comp as usize >= m)
        .map(|r| FreeModuleVector::from_row(r, nvars, m + k).slice(m, m + k))
        .collect())
}

/// Coefficients `a` with `v = Σ a_i·gens_i`, or `None` when `v` is not in the span.
pub fn lift(v: &FreeModuleVector, gens: &[FreeModuleVector]) -> Result<Option<Vec<Polynomial>>> {
    let (nvars, m) = check_uniform(gens)?;
    if v.rank() != m {
        return Err(Error::RankMismatch(m, v.rank()));
    }
    let k = gens.len();
    let base = ModuleOrder::default();
    let order = augmented_order(gens, &base, m);
    let rows = groebner_rows(augmented_rows(gens, &order), &order, false);
    let alive = vec![true; rows.len()];
    let start = v.concat(&FreeModuleVector::zero(nvars, k)).to_row(&order);
    let r = reduce(start, &rows, &alive, &order, false);
    if r.terms.first().is_some_and(|t| (t.comp as usize) < m) {
        return Ok(None);
    }
    let rest = FreeModuleVector::from_row(&r, nvars, m + k).slice(m, m + k);
    Ok(Some(rest.neg().into_components()))
}

/// `(I : g)`.
pub fn ideal_quotient(ideal: &GroebnerBasis, g: &Polynomial) -> Result<GroebnerBasis> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if ideal.rank() != 1 {
        return Err(Error::RankMismatch(1, ideal.rank()));
    }
    let term = ideal.order().term.clone();
    if ideal.is_empty() {
        return Ok(GroebnerBasis::zero(g.nvars(), 1, ModuleOrder::top(term)));
    }
    let mut gens = vec![FreeModuleVector::from_polynomial(g.clone())];
    gens.extend(ideal.generators().iter().cloned());
    let syz = syzygies(&gens)?;
    let quotient: Vec<Polynomial> = syz
        .iter()
        .map(|s| s.component(0).clone())
        .filter(|p| !p.is_zero())
        .collect();
    if quotient.is_empty() {
        return Ok(GroebnerBasis::zero(g.nvars(), 1, ModuleOrder::top(term)));
    }
    ideal_basis(&quotient, &term)
}

/// `(I : g^∞)`, by iterated quotients.
pub fn saturation(ideal: &GroebnerBasis, g: &Polynomial) -> Result<GroebnerBasis> {
    let mut cur = ideal.clone();
    loop {
        let next = ideal_quotient(&cur, g)?;
        if next.same_module(&cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `I ∩ k[remaining variables]` where `vars` are eliminated; generators stay in the
/// original ring.
pub fn eliminate(ideal: &GroebnerBasis, vars: &[usize]) -> Result<GroebnerBasis> {
    eliminate_polys(
        &ideal.polynomials(),
        ideal.nvars(),
        vars,
        None,
        &ideal.order().term,
    )
}

/// Elimination with optional positive weights (one per variable, original indexing).
/// The result is a reduced basis for `result_order`.
pub fn eliminate_polys(
    gens: &[Polynomial],
    nvars: usize,
    vars: &[usize],
    weights: Option<&[u32]>,
    result_order: &TermOrder,
) -> Result<GroebnerBasis> {
    let mut perm: Vec<usize> = vars.to_vec();
    perm.extend((0..nvars).filter(|i| !vars.contains(i)));
    // perm[new] = old; build old -> new
    let mut to_new = vec![0usize; nvars];
    for (new, &old) in perm.iter().enumerate() {
        to_new[old] = new;
    }
    let order = TermOrder::Block {
        split: vars.len(),
        weights: weights.map(|w| perm.iter().map(|&old| w[old]).collect()),
    };
    let mapped: Vec<Polynomial> = gens.iter().map(|g| g.remap(&to_new, nvars)).collect();
    let zero = || GroebnerBasis::zero(nvars, 1, ModuleOrder::top(result_order.clone()));
    if mapped.iter().all(|g| g.is_zero()) {
        return Ok(zero());
    }
    let gb = ideal_basis(&mapped, &order)?;
    let kept: Vec<Polynomial> = gb
        .polynomials()
        .into_iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| (0..vars.len()).all(|i| m.exponent(i) == 0))
        })
        .map(|p| p.remap(&perm, nvars))
        .collect();
    if kept.is_empty() {
        return Ok(zero());
    }
    ideal_basis(&kept, result_order)
}

/// Codimension of an ideal, `n − dim R/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codim {
    Finite(usize),
    /// The unit ideal; its codimension is conventionally infinite.
    UnitIdeal,
}

impl Codim {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Codim::Finite(c) => c >= k,
            Codim::UnitIdeal => true,
        }
    }
}

/// Codimension computed from the leading-term ideal via a maximal independent set.
pub fn codim(ideal: &GroebnerBasis) -> Result<Codim> {
    if ideal.rank() != 1 {
        return Err(Error::RankMismatch(1, ideal.rank()));
    }
    let n = ideal.nvars();
    if ideal.is_whole_module() {
        return Ok(Codim::UnitIdeal);
    }
    if n > 24 {
        return Err(Error::InvalidArgument(
            "too many variables for dimension search".into(),
        ));
    }
    let masks: Vec<u32> = ideal
        .leading_terms()
        .iter()
        .map(|(m, _)| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0usize;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        // independent: no leading monomial is supported inside `set`
        if masks.iter().all(|&lm| lm & !set != 0) {
            best = size;
        }
    }
    Ok(Codim::Finite(n - best))
}

/// Membership `g ∈ I·O_0` in the local ring at the origin: some element of `(I : g)` is a
/// unit at the origin.
pub fn local_membership_at_origin(g: &Polynomial, ideal: &GroebnerBasis) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    let q = ideal_quotient(ideal, g)?;
    Ok(q.polynomials().iter().any(|p| !p.evaluate_at_origin().is_zero()))
}

/// `(N : x_var)` for a submodule `N ⊆ R^rank`, via syzygies of `[x·e_1, …, x·e_rank, N]`.
pub fn module_quotient_by_variable_generic(
    gens: &[FreeModuleVector],
    var: usize,
    order: &ModuleOrder,
) -> Result<GroebnerBasis> {
    let (nvars, rank) = check_uniform(gens)?;
    let x = Polynomial::var(nvars, var);
    let mut all: Vec<FreeModuleVector> = (0..rank)
        .map(|c| FreeModuleVector::unit(nvars, rank, c).mul_poly(&x))
        .collect();
    all.extend(gens.iter().cloned());
    let syz = syzygies_with_order(&all, order)?;
    let proj: Vec<FreeModuleVector> = syz
        .iter()
        .map(|s| s.slice(0, rank))
        .filter(|v| !v.is_zero())
        .collect();
    if proj.is_empty() {
        return Ok(GroebnerBasis::zero(nvars, rank, order.clone()));
    }
    buchberger(&proj, order)
}

/// `(N : x_var)` for a submodule generated by homogeneous elements (w.r.t. `shifts` and
/// optional weights). Uses a reverse lexicographic order with `x_var` last, in which
/// `x_var` divides a homogeneous element as soon as it divides its leading term; the
/// quotient's basis is then read off by dividing. Falls back to the syzygy route when the
/// generators are not homogeneous.
pub fn module_quotient_by_variable(
    gens: &[FreeModuleVector],
    var: usize,
    shifts: &[i64],
    weights: Option<&[u32]>,
    order: &ModuleOrder,
) -> Result<GroebnerBasis> {
    let (nvars, rank) = check_uniform(gens)?;
    let homogeneous = gens
        .iter()
        .all(|g| g.is_zero() || g.homogeneous_degree(shifts, weights).is_some());
    if !homogeneous || shifts.len() != rank {
        return module_quotient_by_variable_generic(gens, var, order);
    }
    // move `var` to the last position
    let mut to_new: Vec<usize> = (0..nvars).collect();
    to_new[var] = nvars - 1;
    to_new[nvars - 1] = var;
    let term = match weights {
        Some(w) => {
            let mut w2 = w.to_vec();
            w2.swap(var, nvars - 1);
            TermOrder::WeightedDegRevLex(w2)
        }
        None => TermOrder::DegRevLex,
    };
    let work = ModuleOrder::top(term).with_shifts(shifts.to_vec());
    let remap = |v: &FreeModuleVector| {
        FreeModuleVector::new(v.components().iter().map(|p| p.remap(&to_new, nvars)).collect())
    };
    let mapped: Vec<FreeModuleVector> = gens.iter().map(remap).collect();
    if mapped.iter().all(|g| g.is_zero()) {
        return Ok(GroebnerBasis::zero(nvars, rank, order.clone()));
    }
    let gb = buchberger(&mapped, &work)?;
    let last = Monomial::var(nvars, nvars - 1);
    let divided: Vec<FreeModuleVector> = gb
        .generators()
        .iter()
        .map(|g| {
            let parts: Option<Vec<Polynomial>> = g
                .components()
                .iter()
                .map(|p| {
                    let q: Option<Vec<_>> = p
                        .terms()
                        .iter()
                        .map(|(m, c)| m.try_div(&last).map(|q| (q, c.clone())))
                        .collect();
                    q.map(|t| Polynomial::from_terms(nvars, t))
                })
                .collect();
            match parts {
                Some(parts) => FreeModuleVector::new(parts),
                None => g.clone(),
            }
        })
        .map(|v| remap(&v))
        .collect();
    buchberger(&divided, order)
}

/// Buchberger's criterion applied to `gens` as given (no completion).
pub fn is_groebner_basis(gens: &[FreeModuleVector], order: &ModuleOrder) -> Result<bool> {
    check_uniform(gens)?;
    let rows: Vec<Row> = gens.iter().map(|g| g.to_row(order)).collect();
    Ok(satisfies_buchberger_criterion(&rows, order))
}

/// A graded module order: term-over-position on (weighted) degrevlex with component shifts.
pub fn graded_order(weights: Option<&[u32]>, shifts: Vec<i64>) -> ModuleOrder {
    let term = match weights {
        Some(w) if w.iter().any(|&x| x != 1) => TermOrder::WeightedDegRevLex(w.to_vec()),
        _ => TermOrder::DegRevLex,
    };
    ModuleOrder::top(term).with_shifts(shifts)
}

/// Minimal homogeneous generators of the graded submodule generated by `gens`, chosen degree
/// by degree: an element is kept when it is not in the span of those kept before it.
/// Zero vectors are dropped. Returns the kept vectors with their degrees.
pub fn minimal_generators(
    gens: &[FreeModuleVector],
    shifts: &[i64],
    weights: Option<&[u32]>,
) -> Result<Vec<(FreeModuleVector, i64)>> {
    let mut graded: Vec<(i64, usize, &FreeModuleVector)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = g
            .homogeneous_degree(shifts, weights)
            .ok_or_else(|| Error::NotHomogeneous(format!("generator {g}")))?;
        graded.push((d, i, g));
    }
    graded.sort_by_key(|&(d, i, g)| (d, g.components().iter().map(|p| p.len()).sum::<usize>(), i));
    let order = graded_order(weights, shifts.to_vec());
    let mut kept: Vec<(FreeModuleVector, i64)> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for (d, _, g) in graded {
        let redundant = match &gb {
            Some(b) => b.contains(g)?,
            None => false,
        };
        if !redundant {
            kept.push((g.clone(), d));
            let mut vs: Vec<FreeModuleVector> = gb.map(|b| b.generators().to_vec()).unwrap_or_default();
            vs.push(g.clone());
            gb = Some(buchberger(&vs, &order)?);
        }
    }
    Ok(kept)
}
