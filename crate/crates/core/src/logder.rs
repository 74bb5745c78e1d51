//! Logarithmic vector fields along a divisor `f = 0`: the module Der(log f), the annihilator
//! of `f` among vector fields, Euler fields, and freeness and splitting tests.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, graded_order, lift, minimal_generators, syzygies_with_order};
use crate::groebner::{FreeModuleVector, GroebnerBasis};
use crate::linalg::{poly_determinant, Echelon, SparseVec};
use crate::poly::{ModuleOrder, Polynomial, Rational};
use crate::weyl::WeylOperator;


/// Positive integer weights `w` and degree `d` with `f` weighted homogeneous of degree `d`.
///
/// Ordinary homogeneity is preferred (all weights one). Otherwise the weights are read off
/// from a one-dimensional solution space of `w·α = d` over the support of `f`; variables
/// not occurring in `f` get weight one. Returns `None` when no such grading is found.
pub fn quasi_homogeneous_weights(f: &Polynomial) -> Option<(Vec<u32>, u64)> {
    let n = f.nvars();
    if f.is_zero() || f.is_constant() {
        return None;
    }
    if f.is_homogeneous(None) {
        return Some((vec![1; n], f.degree()? as u64));
    }
    let used = f.support();
    let k = used.len();
    // unknowns: weights of the used variables, then d
    let mut e = Echelon::new(k + 1);
    for (m, _) in f.terms() {
        let mut row: SparseVec = used
            .iter()
            .enumerate()
            .filter(|(_, &v)| m.exponent(v) > 0)
            .map(|(j, &v)| (j, Rational::from_integer(m.exponent(v).into())))
            .collect();
        row.push((k, -Rational::one()));
        e.insert(row);
    }
    let kernel = e.kernel();
    if kernel.len() != 1 {
        return None;
    }
    let v = crate::linalg::dense_from_sparse(&kernel[0], k + 1);
    let sign = if v[k].is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    };
    if v.iter()
        .any(|c| (c * &sign).is_zero() || (c * &sign).is_negative())
    {
        return None;
    }
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|c| (c * &sign * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<u64> = ints.iter().map(|c| (c / &g).to_u64()).collect::<Option<_>>()?;
    let mut w = vec![1u32; n];
    for (j, &var) in used.iter().enumerate() {
        w[var] = u32::try_from(ints[j]).ok()?;
    }
    Some((w, ints[k]))
}

/// A generating set of vector fields `θ_i = Σ_j a_ij ∂_j` tangent to `f = 0`, with
/// `θ_i(f) = c_i·f` and the relations among the generators.
#[derive(Clone, Debug)]
pub struct DerivationModule {
    f: Polynomial,
    generators: Vec<FreeModuleVector>,
    cofactors: Vec<Polynomial>,
    first_syzygies: Vec<FreeModuleVector>,
    weights: Option<Vec<u32>>,
}

impl DerivationModule {
    /// Builds the module from explicit generators, checking tangency and computing cofactors
    /// and syzygies.
    pub fn from_generators(f: &Polynomial, generators: Vec<FreeModuleVector>) -> Result<Self> {
        let n = f.nvars();
        let mut cofactors = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.rank() != n {
                return Err(Error::RankMismatch(n, g.rank()));
            }
            let image = g.dot(&gradient(f))?;
            let c = image
                .divide_exact(f)?
                .ok_or_else(|| Error::InvalidArgument(format!("{g} is not tangent to the divisor")))?;
            cofactors.push(c);
        }
        Self::assemble(f, generators, cofactors)
    }

    fn assemble(
        f: &Polynomial,
        generators: Vec<FreeModuleVector>,
        cofactors: Vec<Polynomial>,
    ) -> Result<Self> {
        let weights = quasi_homogeneous_weights(f).map(|(w, _)| w);
        let mut dm = DerivationModule {
            f: f.clone(),
            generators,
            cofactors,
            first_syzygies: Vec::new(),
            weights,
        };
        dm.first_syzygies = dm.compute_syzygies()?;
        Ok(dm)
    }

    fn compute_syzygies(&self) -> Result<Vec<FreeModuleVector>> {
        if self.generators.is_empty() {
            return Ok(Vec::new());
        }
        let syz = syzygies_with_order(&self.generators, &self.module_order())?;
        match self.degrees() {
            Some(deg) => Ok(minimal_generators(&syz, &deg, self.weights.as_deref())?
                .into_iter()
                .map(|(v, _)| v)
                .collect()),
            None => Ok(syz),
        }
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[FreeModuleVector] {
        &self.generators
    }

    pub fn cofactors(&self) -> &[Polynomial] {
        &self.cofactors
    }

    pub fn first_syzygies(&self) -> &[FreeModuleVector] {
        &self.first_syzygies
    }

    /// Grading weights of the variables when `f` is quasi-homogeneous.
    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    /// Component shifts `−w_j`, making a homogeneous vector field's degree its weight.
    pub fn component_shifts(&self) -> Vec<i64> {
        match &self.weights {
            Some(w) => w.iter().map(|&x| -(x as i64)).collect(),
            None => vec![0; self.nvars()],
        }
    }

    pub fn module_order(&self) -> ModuleOrder {
        match &self.weights {
            Some(w) => graded_order(Some(w), self.component_shifts()),
            None => ModuleOrder::default(),
        }
    }

    /// Weights of the generators, when every generator is homogeneous.
    pub fn degrees(&self) -> Option<Vec<i64>> {
        let w = self.weights.as_deref()?;
        let shifts = self.component_shifts();
        self.generators
            .iter()
            .map(|g| g.homogeneous_degree(&shifts, Some(w)))
            .collect()
    }

    pub fn vector_fields(&self) -> Vec<WeylOperator> {
        self.generators
            .iter()
            .map(|g| WeylOperator::vector_field(g.components()))
            .collect()
    }

    pub fn groebner_basis(&self) -> Result<GroebnerBasis> {
        if self.generators.is_empty() {
            return Ok(GroebnerBasis::zero(
                self.nvars(),
                self.nvars(),
                self.module_order(),
            ));
        }
        buchberger(&self.generators, &self.module_order())
    }

    pub fn contains(&self, theta: &FreeModuleVector) -> Result<bool> {
        if theta.is_zero() {
            return Ok(true);
        }
        self.groebner_basis()?.contains(theta)
    }

    /// Equality of the generated submodules of `R^n`.
    pub fn same_module(&self, other: &DerivationModule) -> Result<bool> {
        self.groebner_basis()?.same_module(&other.groebner_basis()?)
    }

    /// Checks `θ_i(f) = c_i·f` exactly for every stored generator.
    pub fn check_cofactors(&self) -> Result<bool> {
        let grad = gradient(&self.f);
        for (g, c) in self.generators.iter().zip(&self.cofactors) {
            if g.dot(&grad)? != c * &self.f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks that `Σ a_i·θ_i = 0` for every stored syzygy.
    pub fn check_syzygies(&self) -> Result<bool> {
        for s in &self.first_syzygies {
            if !s.combine(&self.generators)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every bracket `[θ_i, θ_j]` lies in the module again.
    pub fn bracket_closed(&self) -> Result<bool> {
        let gb = self.groebner_basis()?;
        let fields = self.vector_fields();
        for i in 0..fields.len() {
            for j in i + 1..fields.len() {
                let br = fields[i].commutator(&fields[j])?;
                if br.is_zero() {
                    continue;
                }
                let coeffs = br
                    .as_vector_field()
                    .ok_or_else(|| Error::InvalidArgument("bracket is not a vector field".into()))?;
                if !gb.contains(&FreeModuleVector::new(coeffs))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Minimal homogeneous generators, for quasi-homogeneous `f`.
    pub fn minimalized(&self) -> Result<DerivationModule> {
        let w = self
            .weights
            .clone()
            .ok_or_else(|| Error::NotHomogeneous(self.f.to_string()))?;
        let kept = minimal_generators(&self.generators, &self.component_shifts(), Some(&w))?;
        let mut gens = Vec::with_capacity(kept.len());
        let mut cofs = Vec::with_capacity(kept.len());
        for (v, _) in kept {
            let i = self
                .generators
                .iter()
                .position(|g| *g == v)
                .expect("kept generator");
            gens.push(v);
            cofs.push(self.cofactors[i].clone());
        }
        Self::assemble(&self.f, gens, cofs)
    }

    /// `θ − c_θ·χ` for each generator, dropping zeros; these generate `Ann(f)` when the
    /// generators generate Der(log f) and `χ(f) = f`.
    pub fn annihilator_part(&self, chi: &WeylOperator) -> Result<Vec<FreeModuleVector>> {
        let chi = field_vector(chi, self.nvars())?;
        Ok(self
            .generators
            .iter()
            .zip(&self.cofactors)
            .map(|(g, c)| g.sub(&chi.mul_poly(c)))
            .filter(|v| !v.is_zero())
            .collect())
    }
}

/// `(∂_1 f, …, ∂_n f)`.
pub fn gradient(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.nvars()).map(|i| f.derivative(i)).collect()
}

fn field_vector(op: &WeylOperator, n: usize) -> Result<FreeModuleVector> {
    if op.nvars() != n {
        return Err(Error::DimensionMismatch(n, op.nvars()));
    }
    let coeffs = op
        .as_vector_field()
        .ok_or_else(|| Error::InvalidArgument(format!("{op} is not a vector field")))?;
    Ok(FreeModuleVector::new(coeffs))
}

fn check_divisor(f: &Polynomial) -> Result<()> {
    if f.is_constant() {
        return Err(Error::InvalidDivisor(f.to_string()));
    }
    Ok(())
}

fn rank_one_order(f: &Polynomial) -> ModuleOrder {
    match quasi_homogeneous_weights(f) {
        Some((w, _)) => graded_order(Some(&w), vec![0]),
        None => ModuleOrder::default(),
    }
}

/// Der(log f), computed from the syzygies of `(∂_1 f, …, ∂_n f, −f)`.
pub fn log_derivations(f: &Polynomial) -> Result<DerivationModule> {
    check_divisor(f)?;
    let n = f.nvars();
    let mut gens: Vec<FreeModuleVector> = gradient(f)
        .into_iter()
        .map(FreeModuleVector::from_polynomial)
        .collect();
    gens.push(FreeModuleVector::from_polynomial(-f));
    let syz = syzygies_with_order(&gens, &rank_one_order(f))?;
    let mut fields = Vec::new();
    let mut cofactors = Vec::new();
    for s in syz {
        let a = s.slice(0, n);
        if a.is_zero() {
            continue;
        }
        cofactors.push(s.component(n).clone());
        fields.push(a);
    }
    DerivationModule::assemble(f, fields, cofactors)
}

/// Vector fields annihilating `f`.
pub fn ann_theta(f: &Polynomial) -> Result<DerivationModule> {
    check_divisor(f)?;
    let n = f.nvars();
    let gens: Vec<FreeModuleVector> = gradient(f)
        .into_iter()
        .map(FreeModuleVector::from_polynomial)
        .collect();
    let fields: Vec<FreeModuleVector> = syzygies_with_order(&gens, &rank_one_order(f))?
        .into_iter()
        .filter(|s| !s.is_zero())
        .collect();
    let cofactors = vec![Polynomial::zero(n); fields.len()];
    DerivationModule::assemble(f, fields, cofactors)
}

/// A vector field `χ` with `χ(f) = f`, or `None` when `f ∉ ⟨∂f⟩`.
///
/// For quasi-homogeneous `f` this is the weighted Euler field `Σ (w_i/d)·x_i∂_i`.
pub fn euler_field(f: &Polynomial) -> Result<Option<WeylOperator>> {
    check_divisor(f)?;
    let n = f.nvars();
    if let Some((w, d)) = quasi_homogeneous_weights(f) {
        let coeffs: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::var(n, i).scale(&Rational::new(w[i].into(), (d as i64).into())))
            .collect();
        let chi = WeylOperator::vector_field(&coeffs);
        debug_assert_eq!(chi.apply(f)?, *f);
        return Ok(Some(chi));
    }
    let grad: Vec<FreeModuleVector> = gradient(f)
        .into_iter()
        .map(FreeModuleVector::from_polynomial)
        .collect();
    let coeffs = lift(&FreeModuleVector::from_polynomial(f.clone()), &grad)?;
    Ok(coeffs.map(|c| WeylOperator::vector_field(&c)))
}

/// Outcome of the freeness test.
#[derive(Clone, Debug, PartialEq)]
pub enum Freeness {
    /// Der(log f) is free with this basis; `determinant` is the determinant of its
    /// coefficient matrix.
    Free {
        basis: Vec<FreeModuleVector>,
        determinant: Polynomial,
    },
    /// More than `n` minimal generators are needed at the origin.
    NotFree {
        minimal_generators: usize,
    },
    Inconclusive(String),
}

/// Saito's criterion on a generating set of Der(log f).
pub fn saito_freeness_test(dm: &DerivationModule) -> Result<Freeness> {
    let n = dm.nvars();
    if dm.weights().is_some() {
        let min = dm.minimalized()?;
        return Ok(match min.len().cmp(&n) {
            std::cmp::Ordering::Greater => Freeness::NotFree {
                minimal_generators: min.len(),
            },
            std::cmp::Ordering::Equal => Freeness::Free {
                determinant: coefficient_determinant(min.generators())?,
                basis: min.generators().to_vec(),
            },
            std::cmp::Ordering::Less => Freeness::Inconclusive("fewer generators than the dimension".into()),
        });
    }
    let gens: Vec<FreeModuleVector> = dm.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.len() == n {
        let det = coefficient_determinant(&gens)?;
        if let Some(q) = det.divide_exact(dm.f())? {
            if q.is_constant() && !q.is_zero() {
                return Ok(Freeness::Free {
                    basis: gens,
                    determinant: det,
                });
            }
        }
    }
    Ok(Freeness::Inconclusive(
        "no graded structure to certify minimality".into(),
    ))
}

fn coefficient_determinant(fields: &[FreeModuleVector]) -> Result<Polynomial> {
    let n = fields.first().map(|f| f.rank()).unwrap_or(0);
    if fields.len() != n || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need exactly {n} vector fields, got {}",
            fields.len()
        )));
    }
    let m: Vec<Vec<Polynomial>> = fields.iter().map(|f| f.components().to_vec()).collect();
    Ok(poly_determinant(&m))
}

/// Whether `n` vector fields have a nonzero coefficient determinant; also returns it.
pub fn polynomiality_det(fields: &[FreeModuleVector]) -> Result<(bool, Polynomial)> {
    if let Some(f) = fields.first() {
        if fields.len() != f.rank() {
            return Err(Error::InvalidArgument(format!(
                "need exactly {} vector fields, got {}",
                f.rank(),
                fields.len()
            )));
        }
    }
    let det = coefficient_determinant(fields)?;
    Ok((!det.is_zero(), det))
}

/// Whether no relation among `χ` and the generators of `dm` other than `χ` itself involves
/// `χ`. The first generator proportional to `χ`, if any, is left out of the complement.
pub fn split_check(dm: &DerivationModule, chi: &WeylOperator) -> Result<bool> {
    let chi_v = field_vector(chi, dm.nvars())?;
    if chi.apply(dm.f())?.divide_exact(dm.f())?.is_none() {
        return Err(Error::InvalidArgument(format!("{chi} is not logarithmic")));
    }
    let mut complement: Vec<FreeModuleVector> = dm.generators().to_vec();
    if let Some(i) = complement.iter().position(|g| proportional(g, &chi_v)) {
        complement.remove(i);
    }
    direct_sum_check(&chi_v, &complement, &dm.module_order())
}

/// Whether `R·χ + ⟨a⟩` is a direct sum, i.e. every syzygy of `(χ, a_1, …)` has zero first
/// entry.
pub fn direct_sum_check(chi: &FreeModuleVector, a: &[FreeModuleVector], order: &ModuleOrder) -> Result<bool> {
    let mut all = vec![chi.clone()];
    all.extend(a.iter().cloned());
    let syz = syzygies_with_order(&all, order)?;
    Ok(syz.iter().all(|s| s.component(0).is_zero()))
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
