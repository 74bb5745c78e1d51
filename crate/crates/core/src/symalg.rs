//! Symmetric and Rees algebras of derivation modules: presentations, the kernel of
//! `Sym → Rees`, torsion of symmetric powers, depth, and the grade criterion.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::eliminate_polys;
use crate::groebner::{
    buchberger, codim, graded_order, ideal_basis, minimal_generators, module_quotient_by_variable,
    saturation, syzygies_with_order, Codim, FreeModuleVector, GroebnerBasis,
};
use crate::logder::{ann_theta, direct_sum_check, euler_field, log_derivations, DerivationModule};
use crate::poly::{ModuleOrder, Monomial, Polynomial, TermOrder};
use crate::weyl::WeylOperator;


/// `Sym M ≅ R[T_1..T_m]/J` for a module with `m` generators; `J` is generated by one linear
/// form `Σ_j a_ij T_j` per relation.
#[derive(Clone, Debug)]
pub struct SymPresentation {
    base_dim: usize,
    module_rank: usize,
    relations: Vec<FreeModuleVector>,
    degrees: Option<Vec<i64>>,
    weights: Option<Vec<u32>>,
}

impl SymPresentation {
    pub fn new(base_dim: usize, module_rank: usize, relations: Vec<FreeModuleVector>) -> Self {
        SymPresentation {
            base_dim,
            module_rank,
            relations,
            degrees: None,
            weights: None,
        }
    }

    /// Attaches a grading: variable weights and generator degrees.
    pub fn with_grading(mut self, weights: Vec<u32>, degrees: Vec<i64>) -> Self {
        self.weights = Some(weights);
        self.degrees = Some(degrees);
        self
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn module_rank(&self) -> usize {
        self.module_rank
    }

    pub fn relations(&self) -> &[FreeModuleVector] {
        &self.relations
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    /// Offset added to generator degrees so that every `T_j` gets positive weight.
    fn offset(&self) -> i64 {
        self.weights
            .as_ref()
            .map(|w| w.iter().copied().max().unwrap_or(1) as i64 + 1)
            .unwrap_or(1)
    }

    /// Weights on `R[x, T]` making `J` and the kernel of `Sym → Rees` homogeneous.
    pub fn ring_weights(&self) -> Option<Vec<u32>> {
        let w = self.weights.as_ref()?;
        let d = self.degrees.as_ref()?;
        let c = self.offset();
        let mut out = w.clone();
        for &dj in d {
            out.push(u32::try_from(dj + c).ok()?);
        }
        Some(out)
    }

    pub fn ring_order(&self) -> TermOrder {
        match self.ring_weights() {
            Some(w) => TermOrder::WeightedDegRevLex(w),
            None => TermOrder::DegRevLex,
        }
    }

    /// Number of variables of `R[x, T]`.
    pub fn ring_vars(&self) -> usize {
        self.base_dim + self.module_rank
    }

    /// The linear forms generating `J`.
    pub fn relation_polynomials(&self) -> Vec<Polynomial> {
        let nv = self.ring_vars();
        self.relations
            .iter()
            .map(|r| {
                let mut acc = Polynomial::zero(nv);
                for (j, a) in r.components().iter().enumerate() {
                    let t = Polynomial::var(nv, self.base_dim + j);
                    acc = &acc + &(&a.extend(nv) * &t);
                }
                acc
            })
            .filter(|p| !p.is_zero())
            .collect()
    }

    pub fn relation_ideal(&self) -> Result<GroebnerBasis> {
        let gens = self.relation_polynomials();
        if gens.is_empty() {
            return Ok(GroebnerBasis::zero(
                self.ring_vars(),
                1,
                ModuleOrder::top(self.ring_order()),
            ));
        }
        ideal_basis(&gens, &self.ring_order())
    }

    /// The degree-`k` piece of `Sym M` as a graded presentation over `R`: one basis vector
    /// per degree-`k` monomial in `T`, relations `T^μ·(Σ_j a_ij T_j)` for `|μ| = k−1`.
    pub fn power(&self, k: u32) -> SymPower {
        let m = self.module_rank;
        let basis = Monomial::all_of_degree(m, k);
        let index = |mono: &Monomial| basis.iter().position(|b| b == mono).expect("monomial in basis");
        let n = self.base_dim;
        let rank = basis.len();
        let mut relations = Vec::new();
        if k >= 1 {
            for mu in Monomial::all_of_degree(m, k - 1) {
                for r in &self.relations {
                    let mut comps = vec![Polynomial::zero(n); rank];
                    for (j, a) in r.components().iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let c = index(&mu.mul(&Monomial::var(m, j)));
                        comps[c] = &comps[c] + a;
                    }
                    let v = FreeModuleVector::new(comps);
                    if !v.is_zero() {
                        relations.push(v);
                    }
                }
            }
        }
        let shifts = match &self.degrees {
            Some(d) => basis
                .iter()
                .map(|b| (0..m).map(|j| b.exponent(j) as i64 * d[j]).sum())
                .collect(),
            None => vec![0; rank],
        };
        SymPower {
            k,
            basis,
            presentation: GradedPresentation {
                nvars: n,
                rank,
                shifts,
                weights: self.weights.clone(),
                relations,
            },
        }
    }

    /// An element of `Sym^k` as a polynomial in `R[x, T]`.
    pub fn element_polynomial(&self, v: &FreeModuleVector, basis: &[Monomial]) -> Polynomial {
        let nv = self.ring_vars();
        let mut acc = Polynomial::zero(nv);
        for (c, b) in v.components().iter().zip(basis) {
            let mut e = vec![0u32; nv];
            for j in 0..self.module_rank {
                e[self.base_dim + j] = b.exponent(j);
            }
            let t = Monomial::from_exponents(&e);
            acc = &acc + &c.extend(nv).mul_term(&t, &crate::poly::rat(1));
        }
        acc
    }

    /// Printable names `x.., T1..Tm` for `R[x, T]`.
    pub fn ring_names(&self) -> Vec<String> {
        let mut names = crate::poly::default_var_names(self.base_dim);
        names.extend((1..=self.module_rank).map(|j| format!("T{j}")));
        names
    }
}

/// A finitely presented graded module `R^rank / ⟨relations⟩`.
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    pub nvars: usize,
    pub rank: usize,
    /// Degrees of the basis vectors of `R^rank`.
    pub shifts: Vec<i64>,
    /// Variable weights; `None` means the module is not known to be graded.
    pub weights: Option<Vec<u32>>,
    pub relations: Vec<FreeModuleVector>,
}

impl GradedPresentation {
    pub fn order(&self) -> ModuleOrder {
        match &self.weights {
            Some(w) => graded_order(Some(w), self.shifts.clone()),
            None => ModuleOrder::default(),
        }
    }
}

/// A symmetric power with its monomial basis.
#[derive(Clone, Debug)]
pub struct SymPower {
    pub k: u32,
    pub basis: Vec<Monomial>,
    pub presentation: GradedPresentation,
}

/// Presentation of `Sym` of a derivation module from its generators and first syzygies.
pub fn sym_presentation(dm: &DerivationModule) -> SymPresentation {
    let sp = SymPresentation::new(dm.nvars(), dm.len(), dm.first_syzygies().to_vec());
    match (dm.weights(), dm.degrees()) {
        (Some(w), Some(d)) => sp.with_grading(w.to_vec(), d),
        _ => sp,
    }
}

/// The ideal of relations among the symbols `σ(θ_i)`, in `R[x, T]`.
#[derive(Clone, Debug)]
pub struct ReesKernel {
    pub ideal: GroebnerBasis,
    /// `σ(θ_i)` in `R[x, ξ]`.
    pub symbols: Vec<Polynomial>,
}

/// Eliminates `ξ` from `⟨T_i − σ(θ_i)⟩ ⊂ R[x, ξ, T]`.
pub fn rees_kernel(dm: &DerivationModule) -> Result<ReesKernel> {
    let sp = sym_presentation(dm);
    let n = dm.nvars();
    let m = dm.len();
    let symbols: Vec<Polynomial> = dm
        .vector_fields()
        .iter()
        .map(|t| t.symbol())
        .collect::<Result<_>>()?;
    let big = 2 * n + m;
    let gens: Vec<Polynomial> = symbols
        .iter()
        .enumerate()
        .map(|(i, s)| &Polynomial::var(big, 2 * n + i) - &s.extend(big))
        .collect();
    let weights = sp.ring_weights().map(|rw| {
        let c = sp.offset() as u32;
        let mut w = rw[..n].to_vec();
        w.extend(rw[..n].iter().map(|&wi| c - wi));
        w.extend_from_slice(&rw[n..]);
        w
    });
    let xi: Vec<usize> = (n..2 * n).collect();
    let order = sp.ring_order();
    if gens.is_empty() {
        return Ok(ReesKernel {
            ideal: GroebnerBasis::zero(n, 1, ModuleOrder::top(order)),
            symbols,
        });
    }
    let elim = eliminate_polys(&gens, big, &xi, weights.as_deref(), &TermOrder::DegRevLex)?;
    // R[x, ξ, T] → R[x, T]
    let to_small: Vec<usize> = (0..big)
        .map(|i| {
            if i < n {
                i
            } else if i < 2 * n {
                0
            } else {
                i - n
            }
        })
        .collect();
    let small: Vec<Polynomial> = elim
        .polynomials()
        .iter()
        .map(|p| p.remap(&to_small, n + m))
        .collect();
    let ideal = if small.is_empty() {
        GroebnerBasis::zero(n + m, 1, ModuleOrder::top(order))
    } else {
        ideal_basis(&small, &order)?
    };
    Ok(ReesKernel { ideal, symbols })
}

/// `J : g^∞`, which equals the kernel of `Sym → Rees` whenever the module becomes free after
/// inverting `g` (for instance `g = f` for Der(log f)).
pub fn rees_kernel_by_saturation(sp: &SymPresentation, g: &Polynomial) -> Result<GroebnerBasis> {
    let j = sp.relation_ideal()?;
    if j.is_empty() {
        return Ok(j);
    }
    saturation(&j, &g.extend(sp.ring_vars()))
}

/// `Sym M → Rees M` is injective iff `J` equals the Rees kernel.
pub fn pi_injectivity_test(sp: &SymPresentation, rk: &ReesKernel) -> Result<bool> {
    let j = sp.relation_ideal()?;
    match (j.is_empty(), rk.ideal.is_empty()) {
        (true, true) => Ok(true),
        (true, false) | (false, true) => Ok(false),
        _ => j.same_module(&rk.ideal),
    }
}

/// The `R`-module spanned by the products `σ(θ_{i_1})⋯σ(θ_{i_k})`, inside the forms of
/// degree `k` in `ξ` (one coordinate per `ξ`-monomial, in `basis` order).
#[derive(Clone, Debug)]
pub struct SymbolModule {
    pub k: u32,
    pub basis: Vec<Monomial>,
    pub gb: GroebnerBasis,
}

impl SymbolModule {
    /// Coordinates of a form of degree `k` in `R[x, ξ]`; `None` if it has other `ξ`-degrees.
    pub fn coordinates(&self, form: &Polynomial) -> Option<FreeModuleVector> {
        let n = self.gb.nvars();
        let mut comps = vec![Vec::new(); self.basis.len()];
        for (m, c) in form.terms() {
            let e = m.exponents();
            let xi = Monomial::from_exponents(&e[n..]);
            let i = self.basis.iter().position(|b| *b == xi)?;
            comps[i].push((Monomial::from_exponents(&e[..n]), c.clone()));
        }
        Some(FreeModuleVector::new(
            comps.into_iter().map(|t| Polynomial::from_terms(n, t)).collect(),
        ))
    }

    /// Normal form of a degree-`k` form; zero iff the form lies in the module.
    pub fn normal_form(&self, form: &Polynomial) -> Result<FreeModuleVector> {
        let v = self
            .coordinates(form)
            .ok_or_else(|| Error::InvalidArgument(format!("{form} is not a form of degree {}", self.k)))?;
        self.gb.normal_form(&v)
    }
}

/// Degree-`k` part of the algebra generated by the symbols of the module generators.
pub fn symbol_module(dm: &DerivationModule, k: u32) -> Result<SymbolModule> {
    let n = dm.nvars();
    let symbols: Vec<Polynomial> = dm
        .vector_fields()
        .iter()
        .map(|t| t.symbol())
        .collect::<Result<_>>()?;
    let basis = Monomial::all_of_degree(n, k);
    let probe = SymbolModule {
        k,
        basis: basis.clone(),
        gb: GroebnerBasis::zero(n, basis.len(), ModuleOrder::top(TermOrder::DegRevLex)),
    };
    let mut gens = Vec::new();
    for idx in Monomial::all_of_degree(symbols.len(), k) {
        let mut prod = Polynomial::one(2 * n);
        for (i, s) in symbols.iter().enumerate() {
            prod = &prod * &s.pow(idx.exponent(i));
        }
        gens.push(probe.coordinates(&prod).expect("products of linear symbols"));
    }
    let order = ModuleOrder::top(TermOrder::DegRevLex);
    let gb = if gens.is_empty() {
        GroebnerBasis::zero(n, basis.len(), order)
    } else {
        buchberger(&gens, &order)?
    };
    Ok(SymbolModule { k, basis, gb })
}

/// Result of probing `Sym^k` for zero divisors among the coordinates.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub k: u32,
    pub basis: Vec<Monomial>,
    /// `(variable index, element)`: a nonzero element of `Sym^k` killed by that variable.
    pub witnesses: Vec<(usize, FreeModuleVector)>,
}

impl TorsionReport {
    pub fn is_torsion_free(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// For each coordinate `x_i`, looks for a nonzero element of `Sym^k` annihilated by `x_i`.
/// Witnesses are normal forms modulo the relations, the smallest one per variable, monic.
pub fn torsion_test_symk(sp: &SymPresentation, k: u32) -> Result<TorsionReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("symmetric power must be positive".into()));
    }
    let power = sp.power(k);
    let pres = &power.presentation;
    if pres.relations.is_empty() {
        return Ok(TorsionReport {
            k,
            basis: power.basis,
            witnesses: Vec::new(),
        });
    }
    let order = pres.order();
    let n_gb = buchberger(&pres.relations, &order)?;
    let found: Vec<Result<Option<(usize, FreeModuleVector)>>> = (0..pres.nvars)
        .into_par_iter()
        .map(|var| {
            let q = module_quotient_by_variable(
                &pres.relations,
                var,
                &pres.shifts,
                pres.weights.as_deref(),
                &order,
            )?;
            let mut best: Option<FreeModuleVector> = None;
            for g in q.generators() {
                let r = n_gb.normal_form(g)?;
                if r.is_zero() {
                    continue;
                }
                if best
                    .as_ref()
                    .map_or(true, |b| compare_vectors(&r, b, &order) == Ordering::Less)
                {
                    best = Some(r);
                }
            }
            Ok(best.map(|b| (var, monic(&b, &order))))
        })
        .collect();
    let mut witnesses = Vec::new();
    for r in found {
        if let Some(w) = r? {
            witnesses.push(w);
        }
    }
    witnesses.sort_by_key(|(v, _)| *v);
    Ok(TorsionReport {
        k,
        basis: power.basis,
        witnesses,
    })
}

fn compare_vectors(a: &FreeModuleVector, b: &FreeModuleVector, order: &ModuleOrder) -> Ordering {
    let (ra, rb) = (a.to_row(order), b.to_row(order));
    for (x, y) in ra.terms.iter().zip(&rb.terms) {
        let c = order.compare(&x.mono, x.comp, &y.mono, y.comp);
        if c != Ordering::Equal {
            return c;
        }
        let c = x.coeff.cmp(&y.coeff);
        if c != Ordering::Equal {
            return c;
        }
    }
    ra.terms.len().cmp(&rb.terms.len())
}

fn monic(v: &FreeModuleVector, order: &ModuleOrder) -> FreeModuleVector {
    match v.leading_term(order) {
        Some((_, _, c)) => v.scale(&c.recip()),
        None => v.clone(),
    }
}

/// Ranks of a minimal graded free resolution `F_0 ← F_1 ← …` of the presented module, after
/// removing redundant generators of `R^rank` (relations with a unit entry). Empty when the
/// module is zero.
pub fn minimal_resolution(p: &GradedPresentation) -> Result<Vec<usize>> {
    let weights = p
        .weights
        .clone()
        .ok_or_else(|| Error::NotHomogeneous("presentation is not graded".into()))?;
    let mut shifts = p.shifts.clone();
    let mut rels: Vec<FreeModuleVector> = p.relations.clone();
    // prune unit entries
    loop {
        let min: Vec<FreeModuleVector> = if rels.is_empty() {
            Vec::new()
        } else {
            minimal_generators(&rels, &shifts, Some(&weights))?
                .into_iter()
                .map(|(v, _)| v)
                .collect()
        };
        let unit = min.iter().enumerate().find_map(|(i, g)| {
            g.components()
                .iter()
                .position(|c| c.is_constant() && !c.is_zero())
                .map(|c| (i, c))
        });
        let Some((i, c)) = unit else {
            rels = min;
            break;
        };
        let g = min[i].clone();
        let u = g.component(c).evaluate_at_origin();
        rels = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| {
                let factor = h.component(c).scale(&u.recip());
                let reduced = h.sub(&g.mul_poly(&factor));
                let mut comps = reduced.into_components();
                comps.remove(c);
                FreeModuleVector::new(comps)
            })
            .filter(|v| !v.is_zero())
            .collect();
        shifts.remove(c);
        if shifts.is_empty() {
            return Ok(Vec::new());
        }
    }
    let mut ranks = vec![shifts.len()];
    let mut cur = rels;
    let mut cur_shifts = shifts;
    while !cur.is_empty() {
        ranks.push(cur.len());
        let degrees: Vec<i64> = cur
            .iter()
            .map(|g| {
                g.homogeneous_degree(&cur_shifts, Some(&weights))
                    .expect("homogeneous relation")
            })
            .collect();
        let syz = syzygies_with_order(&cur, &graded_order(Some(&weights), cur_shifts.clone()))?;
        let syz: Vec<FreeModuleVector> = syz.into_iter().filter(|s| !s.is_zero()).collect();
        cur = if syz.is_empty() {
            Vec::new()
        } else {
            minimal_generators(&syz, &degrees, Some(&weights))?
                .into_iter()
                .map(|(v, _)| v)
                .collect()
        };
        cur_shifts = degrees;
    }
    Ok(ranks)
}

/// Depth at the irrelevant ideal, `n − projective dimension`; `None` for the zero module.
pub fn depth_via_resolution(p: &GradedPresentation) -> Result<Option<usize>> {
    let ranks = minimal_resolution(p)?;
    if ranks.is_empty() {
        return Ok(None);
    }
    let pd = ranks.len() - 1;
    Ok(Some(p.nvars.saturating_sub(pd)))
}

/// Outcome of the grade test for a module with a rank-one resolution.
#[derive(Clone, Debug, PartialEq)]
pub enum GradeVerdict {
    Certified {
        syzygy: FreeModuleVector,
        grade: Codim,
        required: usize,
    },
    NotCertified {
        syzygy: FreeModuleVector,
        grade: Codim,
        required: usize,
    },
    NotApplicable(String),
}

impl GradeVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, GradeVerdict::Certified { .. })
    }
}

/// Requires `0 → R → R^m → A → 0`; certifies when the entries of the relation generate an
/// ideal of codimension at least `dim_z + 3`.
pub fn grade_criterion(a: &DerivationModule, dim_z: usize) -> Result<GradeVerdict> {
    let a = if a.weights().is_some() {
        a.minimalized()?
    } else {
        a.clone()
    };
    let syz = a.first_syzygies();
    if syz.len() != 1 {
        return Ok(GradeVerdict::NotApplicable(format!(
            "{} generators of the relation module, need exactly one",
            syz.len()
        )));
    }
    let s = syz[0].clone();
    let entries: Vec<Polynomial> = s.components().iter().filter(|p| !p.is_zero()).cloned().collect();
    let grade = codim(&ideal_basis(&entries, &TermOrder::DegRevLex)?)?;
    let required = dim_z + 3;
    Ok(if grade.at_least(required) {
        GradeVerdict::Certified {
            syzygy: s,
            grade,
            required,
        }
    } else {
        GradeVerdict::NotCertified {
            syzygy: s,
            grade,
            required,
        }
    })
}

/// Settings for [`criterion`].
#[derive(Clone, Debug)]
pub struct CriterionOptions {
    pub dim_z: usize,
    /// Symmetric powers `2..=torsion_k` are probed for torsion before the grade test.
    pub torsion_k: u32,
    /// Symmetric powers `1..=depth_k` get an explicit depth computation.
    pub depth_k: u32,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        CriterionOptions {
            dim_z: 0,
            torsion_k: 2,
            depth_k: 0,
        }
    }
}

/// Overall outcome of a certification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    RefutedWithWitness,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::RefutedWithWitness => "refuted-with-witness",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Shape of the presentation of the complement `A`.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// No relations: `A` is free.
    Free,
    /// A single relation, whose own syzygies vanish.
    RankOne(FreeModuleVector),
    NotApplicable(String),
}

/// One choice of complement `A` with `Der(log f) = R·χ ⊕ A`.
#[derive(Clone, Debug)]
pub struct RouteReport {
    pub name: String,
    pub generators: Vec<FreeModuleVector>,
    pub relations: Vec<FreeModuleVector>,
    /// `R·χ + A` is direct and equals Der(log f).
    pub split: bool,
    pub shape: Shape,
    pub grade: Option<Codim>,
    pub required: usize,
    pub torsion: Vec<TorsionReport>,
    pub depths: Vec<(u32, Option<usize>)>,
    pub certified: bool,
    /// Which argument the conclusion rests on.
    pub rule: String,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub f: Polynomial,
    pub dim_z: usize,
    pub weights: Option<Vec<u32>>,
    pub euler: Option<WeylOperator>,
    pub routes: Vec<RouteReport>,
    pub verdict: Verdict,
}

/// Tries the complement `A = Ann(f)` and the complement formed by the minimal generators of
/// Der(log f) other than `χ`, and certifies `V_0 = R[Der(log f)]` when either route passes.
pub fn criterion(f: &Polynomial, opts: &CriterionOptions) -> Result<CriterionReport> {
    let der = log_derivations(f)?;
    let der = if der.weights().is_some() {
        der.minimalized()?
    } else {
        der
    };
    let euler = euler_field(f)?;
    let mut routes = Vec::new();
    if let Some(chi) = &euler {
        let ann = ann_theta(f)?;
        routes.push(evaluate_route(
            "annihilator",
            f,
            chi,
            &der,
            ann.generators().to_vec(),
            opts,
        )?);
        let chi_v = FreeModuleVector::new(chi.as_vector_field().expect("vector field"));
        let gens = der.generators();
        match gens.iter().position(|g| proportional(g, &chi_v)) {
            Some(i) => {
                let rest: Vec<FreeModuleVector> = gens
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                routes.push(evaluate_route("complement", f, chi, &der, rest, opts)?);
            }
            None => routes.push(RouteReport {
                name: "complement".into(),
                generators: Vec::new(),
                relations: Vec::new(),
                split: false,
                shape: Shape::NotApplicable("the Euler field is not a minimal generator".into()),
                grade: None,
                required: opts.dim_z + 3,
                torsion: Vec::new(),
                depths: Vec::new(),
                certified: false,
                rule: "none".into(),
            }),
        }
    }
    let verdict = if routes.iter().any(|r| r.certified) {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(CriterionReport {
        f: f.clone(),
        dim_z: opts.dim_z,
        weights: der.weights().map(|w| w.to_vec()),
        euler,
        routes,
        verdict,
    })
}

fn proportional(a: &FreeModuleVector, b: &FreeModuleVector) -> bool {
    let Some(i) = b.components().iter().position(|p| !p.is_zero()) else {
        return a.is_zero();
    };
    let (Some(ca), Some(cb)) = (
        a.component(i).leading_coefficient(),
        b.component(i).leading_coefficient(),
    ) else {
        return false;
    };
    a.scale(&(cb / ca)) == *b
}

/// Runs the checks of [`criterion`] for an explicit complement `a`.
pub fn evaluate_route(
    name: &str,
    f: &Polynomial,
    chi: &WeylOperator,
    der: &DerivationModule,
    a: Vec<FreeModuleVector>,
    opts: &CriterionOptions,
) -> Result<RouteReport> {
    let required = opts.dim_z + 3;
    let chi_v = FreeModuleVector::new(
        chi.as_vector_field()
            .ok_or_else(|| Error::InvalidArgument(format!("{chi} is not a vector field")))?,
    );
    let module = DerivationModule::from_generators(f, a)?;
    let module = if module.weights().is_some() && module.degrees().is_some() {
        module.minimalized()?
    } else {
        module
    };
    let direct = direct_sum_check(&chi_v, module.generators(), &der.module_order())?;
    let mut all = vec![chi_v];
    all.extend(module.generators().iter().cloned());
    let spans = DerivationModule::from_generators(f, all)?.same_module(der)?;
    let split = direct && spans;
    let relations = module.first_syzygies().to_vec();
    let shape = match relations.len() {
        0 => Shape::Free,
        1 => Shape::RankOne(relations[0].clone()),
        r => Shape::NotApplicable(format!("{r} relations, need at most one")),
    };
    let sp = sym_presentation(&module);
    let mut torsion = Vec::new();
    for k in 2..=opts.torsion_k {
        torsion.push(torsion_test_symk(&sp, k)?);
    }
    let torsion_free = torsion.iter().all(|t| t.is_torsion_free());
    let mut depths = Vec::new();
    if sp.weights().is_some() {
        for k in 1..=opts.depth_k {
            depths.push((k, depth_via_resolution(&sp.power(k).presentation)?));
        }
    }
    let (grade, certified, rule) = match &shape {
        Shape::Free => (None, split, "free complement: Der(log f) is free".to_string()),
        Shape::RankOne(_) => {
            let verdict = grade_criterion(&module, opts.dim_z)?;
            let grade = match &verdict {
                GradeVerdict::Certified { grade, .. } | GradeVerdict::NotCertified { grade, .. } => {
                    Some(*grade)
                }
                GradeVerdict::NotApplicable(_) => None,
            };
            let ok = split && torsion_free && verdict.is_certified();
            (
                grade,
                ok,
                "grade bound for a rank-one resolution of the complement".to_string(),
            )
        }
        Shape::NotApplicable(_) => (None, false, "none".to_string()),
    };
    Ok(RouteReport {
        name: name.to_string(),
        generators: module.generators().to_vec(),
        relations,
        split,
        shape,
        grade,
        required,
        torsion,
        depths,
        certified,
        rule,
    })
}
