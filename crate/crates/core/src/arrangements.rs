//! Central hyperplane arrangements: the generic arrangement `D_n` with its named vector
//! fields and syzygies, and the quintic arrangement in three variables.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_groebner_basis, syzygies_with_order, FreeModuleVector};
use crate::logder::direct_sum_check;
use crate::poly::{ModuleOrder, Polynomial, Rational, TermOrder};
use crate::weyl::WeylOperator;


/// Largest `n` accepted by [`generic_dn`].
pub const DEFAULT_MAX_N: usize = 6;

/// A central arrangement given by pairwise non-proportional linear forms.
#[derive(Clone, Debug)]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Polynomial>,
    f: Polynomial,
}

impl Arrangement {
    pub fn new(hyperplanes: Vec<Polynomial>) -> Result<Self> {
        let n = hyperplanes
            .first()
            .map(|h| h.nvars())
            .ok_or_else(|| Error::InvalidArgument("an arrangement needs a hyperplane".into()))?;
        let mut f = Polynomial::one(n);
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.nvars() != n {
                return Err(Error::DimensionMismatch(n, h.nvars()));
            }
            if h.is_zero() || h.terms().iter().any(|(m, _)| m.degree() != 1) {
                return Err(Error::InvalidArgument(format!(
                    "{h} is not a nonzero linear form"
                )));
            }
            if hyperplanes[..i].iter().any(|g| proportional(g, h)) {
                return Err(Error::InvalidArgument(format!("{h} repeats a hyperplane")));
            }
            f = &f * h;
        }
        Ok(Arrangement { n, hyperplanes, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperplanes(&self) -> &[Polynomial] {
        &self.hyperplanes
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }
}

fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
    let (ma, ca) = &a.terms()[0];
    let (mb, cb) = &b.terms()[0];
    ma == mb && a.scale(&(cb / ca)) == *b
}

/// `D_n = (x_1⋯x_n(x_1+⋯+x_n))` with the Euler field `χ`, the fields
/// `η_ij = x_i x_j (∂_i − ∂_j)` for `i < j` and the relations
/// `σ_ijk = x_i η_jk − x_j η_ik + x_k η_ij` for `i < j < k`.
#[derive(Clone, Debug)]
pub struct GenericArrangement {
    pub arrangement: Arrangement,
    pub chi: FreeModuleVector,
    /// `((i, j), η_ij)`, zero-based, lexicographic in `(i, j)`.
    pub eta: Vec<((usize, usize), FreeModuleVector)>,
    /// `((i, j, k), σ_ijk)` as coefficient vectors against `eta`.
    pub sigma: Vec<((usize, usize, usize), FreeModuleVector)>,
}

impl GenericArrangement {
    pub fn eta_vectors(&self) -> Vec<FreeModuleVector> {
        self.eta.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn sigma_vectors(&self) -> Vec<FreeModuleVector> {
        self.sigma.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn eta_index(&self, i: usize, j: usize) -> Option<usize> {
        self.eta.iter().position(|(ij, _)| *ij == (i, j))
    }
}

pub fn generic_dn(n: usize) -> Result<GenericArrangement> {
    generic_dn_capped(n, DEFAULT_MAX_N)
}

pub fn generic_dn_capped(n: usize, cap: usize) -> Result<GenericArrangement> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("D_n needs n >= 2, got {n}")));
    }
    if n > cap {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds the bound {cap}")));
    }
    let x = |i| Polynomial::var(n, i);
    let mut planes: Vec<Polynomial> = (0..n).map(x).collect();
    planes.push((0..n).map(x).fold(Polynomial::zero(n), |a, b| &a + &b));
    let arrangement = Arrangement::new(planes)?;

    let scale = Rational::new(1.into(), ((n + 1) as i64).into());
    let chi = FreeModuleVector::new((0..n).map(|i| x(i).scale(&scale)).collect());

    let mut eta = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let xx = &x(i) * &x(j);
            let mut v = vec![Polynomial::zero(n); n];
            v[i] = xx.clone();
            v[j] = -&xx;
            eta.push(((i, j), FreeModuleVector::new(v)));
        }
    }
    let pos = |i: usize, j: usize| eta.iter().position(|(ij, _)| *ij == (i, j)).expect("pair");
    let mut sigma = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut v = vec![Polynomial::zero(n); eta.len()];
                v[pos(j, k)] = x(i);
                v[pos(i, k)] = -&x(j);
                v[pos(i, j)] = x(k);
                sigma.push(((i, j, k), FreeModuleVector::new(v)));
            }
        }
    }
    Ok(GenericArrangement {
        arrangement,
        chi,
        eta,
        sigma,
    })
}

/// Term-over-position degrevlex with `e_n > ⋯ > e_1`, so that `∂_1 < ⋯ < ∂_n`.
pub fn lemma_order() -> ModuleOrder {
    ModuleOrder::top(TermOrder::DegRevLex).with_higher_positions_first()
}

/// Whether the `η_ij` of `D_n` form a Gröbner basis whose syzygies are generated by the
/// `σ_ijk`.
pub fn lemma19_check(n: usize) -> Result<bool> {
    let d = generic_dn(n)?;
    standard_basis_check(&d.eta_vectors(), &d.sigma_vectors())
}

/// The check behind [`lemma19_check`] for arbitrary generators and expected syzygies.
pub fn standard_basis_check(gens: &[FreeModuleVector], expected: &[FreeModuleVector]) -> Result<bool> {
    let order = lemma_order();
    if !is_groebner_basis(gens, &order)? {
        return Ok(false);
    }
    let syz = syzygies_with_order(gens, &order)?;
    match (syz.is_empty(), expected.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let syz_order = ModuleOrder::top(TermOrder::DegRevLex);
    let a = buchberger(&syz, &syz_order)?;
    let b = buchberger(expected, &syz_order)?;
    a.same_module(&b)
}

/// Whether no syzygy of `(χ, η_12, …)` involves `χ`, i.e. `O·χ ∩ ⟨η⟩ = 0`.
pub fn prop17_check(n: usize) -> Result<bool> {
    let d = generic_dn(n)?;
    direct_sum_check(&d.chi, &d.eta_vectors(), &lemma_order())
}

/// The quintic arrangement `xyz(x+y+z)(x+2y+3z)` and the second-order operator displayed
/// with it.
pub fn example9_objects() -> (Arrangement, WeylOperator) {
    let p = |s: &str| Polynomial::parse_in(s, 3).expect("fixed input");
    let arrangement =
        Arrangement::new(["x", "y", "z", "x+y+z", "x+2*y+3*z"].map(p).to_vec()).expect("fixed input");
    let q = WeylOperator::parse_in(EXAMPLE9_Q, 3).expect("fixed input");
    (arrangement, q)
}

/// The operator as printed.
pub const EXAMPLE9_Q: &str = "(x+y+z)*(x+2*y+3*z)*(3*z*y^2*dy^2 + (x+4*y-3*z)*y*z*dy*dz - 4*y*z^2*dz^2)";

/// The same operator with the sign of the mixed term reversed, which does lie in `V_0`.
pub const EXAMPLE9_Q_SIGN: &str = "(x+y+z)*(x+2*y+3*z)*(3*z*y^2*dy^2 - (x+4*y-3*z)*y*z*dy*dz - 4*y*z^2*dz^2)";
