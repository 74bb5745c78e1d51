use super::*;
use logdiv::arrangements::generic_dn;
use logdiv::groebner::{ideal_basis, is_groebner_basis};
use logdiv::logder::{ann_theta, log_derivations, saito_freeness_test, DerivationModule, Freeness};
use logdiv::vfilt::{
    compare_v0, default_weight_range, v0_graded_basis, v_membership_with, Comparison, MembershipMode,
};
use logdiv::weyl::linear_images;
use logdiv::{Monomial, Polynomial, Rational, TermOrder, WeylOperator};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coefficient_rows(vectors: &[Polynomial], monos: &[Monomial]) -> Vec<Vec<Rational>> {
    vectors
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); monos.len()];
            for (m, c) in p.terms() {
                let i = monos.iter().position(|x| x == m).expect("degree bound");
                row[i] = c.clone();
            }
            row
        })
        .collect()
}

/// `h ∈ ⟨gens⟩` for homogeneous data, by linear algebra in degree `deg h`.
fn brute_member(gens: &[Polynomial], h: &Polynomial) -> bool {
    let n = h.nvars();
    let d = h.degree().unwrap_or(0);
    let monos = Monomial::all_of_degree(n, d);
    let mut span = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg > d {
            continue;
        }
        for m in Monomial::all_of_degree(n, d - dg) {
            span.push(g.mul_term(&m, &rat(1)));
        }
    }
    if span.is_empty() {
        return h.is_zero();
    }
    let a = dense_rank(coefficient_rows(&span, &monos));
    span.push(h.clone());
    a == dense_rank(coefficient_rows(&span, &monos))
}

pub fn groebner_bases_and_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut members = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let s = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..s)
            .map(|_| {
                let deg = rng.gen_range(1..=3);
                random_form(&mut rng, n, deg, 3)
            })
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let order = if case % 2 == 0 {
            TermOrder::DegRevLex
        } else {
            TermOrder::Lex
        };
        let gb = ideal_basis(&gens, &order).unwrap();
        assert!(gb.verify(), "case {case}");
        assert!(is_groebner_basis(gb.generators(), gb.order()).unwrap());
        for g in &gens {
            assert!(gb.contains_poly(g).unwrap());
        }
        let deg = rng.gen_range(1..=4);
        let h = if rng.gen_bool(0.5) {
            gens.iter().fold(Polynomial::zero(n), |acc, g| {
                let dg = g.degree().unwrap();
                if dg > deg {
                    return acc;
                }
                &acc + &(g * &random_form(&mut rng, n, deg - dg, 2))
            })
        } else {
            random_form(&mut rng, n, deg, 4)
        };
        let expected = brute_member(&gens, &h);
        members += expected as usize;
        assert_eq!(
            gb.contains_poly(&h).unwrap(),
            expected,
            "case {case}: {h} in {gens:?}"
        );
    }
    assert!(members > 10, "the sample should contain members");
    // inhomogeneous generators: combinations are members, basis passes the criterion
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..2)
            .map(|_| random_poly(&mut rng, n, 3, 3))
            .filter(|g| !g.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let gb = ideal_basis(&gens, &TermOrder::DegRevLex).unwrap();
        assert!(gb.verify());
        let h = gens.iter().fold(Polynomial::zero(n), |acc, g| {
            &acc + &(g * &random_poly(&mut rng, n, 2, 2))
        });
        assert!(gb.contains_poly(&h).unwrap());
    }
}

pub fn weyl_algebra_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let a = random_operator(&mut rng, n, 2, 2);
        let b = random_operator(&mut rng, n, 2, 2);
        let c = random_operator(&mut rng, n, 1, 2);
        let ab = a.compose(&b).unwrap();
        assert_eq!(
            ab.compose(&c).unwrap(),
            a.compose(&b.compose(&c).unwrap()).unwrap()
        );
        let g = random_poly(&mut rng, n, 4, 4);
        assert_eq!(ab.apply(&g).unwrap(), a.apply(&b.apply(&g).unwrap()).unwrap());
        let comm = a.commutator(&b).unwrap();
        let lhs = comm.apply(&g).unwrap();
        let rhs = &a.apply(&b.apply(&g).unwrap()).unwrap() - &b.apply(&a.apply(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // derivations satisfy the product rule
        let theta =
            WeylOperator::vector_field(&(0..n).map(|_| random_poly(&mut rng, n, 2, 2)).collect::<Vec<_>>());
        let h = random_poly(&mut rng, n, 3, 3);
        let prod = theta.apply(&(&g * &h)).unwrap();
        let rule = &(&theta.apply(&g).unwrap() * &h) + &(&g * &theta.apply(&h).unwrap());
        assert_eq!(prod, rule);
        // composition with a function is multiplication
        let fg = WeylOperator::from_polynomial(h.clone()).compose(&a).unwrap();
        assert_eq!(fg.apply(&g).unwrap(), &h * &a.apply(&g).unwrap());
    }
}

pub fn membership_is_invariant_under_linear_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = poly("x*y", 2);
    let pool = [
        "x*dx",
        "y*dy",
        "x*y*dx*dy",
        "dx",
        "x*dx^2",
        "x^2*dx^2 + y*dy",
        "x*y^2*dy^2",
        "1",
        "x*y",
    ];
    let mut seen = 0;
    while seen < 20 {
        let a: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..2).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det == 0 {
            continue;
        }
        seen += 1;
        let d = Rational::new(det.into(), 1.into());
        let am: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let inv = vec![
            vec![rat(a[1][1]) / &d, rat(-a[0][1]) / &d],
            vec![rat(-a[1][0]) / &d, rat(a[0][0]) / &d],
        ];
        let g = f.substitute(&linear_images(&am, 2));
        let mut ops: Vec<WeylOperator> = pool.iter().map(|s| op(s, 2)).collect();
        ops.push(random_operator(&mut rng, 2, 2, 2));
        for p in &ops {
            let q = p.linear_change(&am, &inv).unwrap();
            for k in -1..=1 {
                let before = v_membership_with(&f, p, k, MembershipMode::Global).unwrap();
                let after = v_membership_with(&g, &q, k, MembershipMode::Global).unwrap();
                assert_eq!(before, after, "{p} at level {k} under {a:?}");
            }
        }
    }
}

pub fn computed_modules_are_logarithmic_and_closed() {
    let divisors = [
        ("x*y", 2),
        ("x*y*(x+y)", 2),
        ("x^3-y^2", 2),
        ("x^4+y^5+x^2*y^3", 2),
        ("x*y*z*(x+y+z)", 3),
        ("x^3+y^3+z^3", 3),
        ("x^5+y^3+z^2", 3),
        ("x*y*z*(x+y+z)*(x+2*y+3*z)", 3),
        ("x^2+y^2+z^2+w^2", 4),
    ];
    let check = |dm: &DerivationModule| {
        assert!(dm.check_cofactors().unwrap(), "{}", dm.f());
        assert!(dm.check_syzygies().unwrap(), "{}", dm.f());
        assert!(dm.bracket_closed().unwrap(), "{}", dm.f());
        for t in dm.vector_fields() {
            let image = t.apply(dm.f()).unwrap();
            assert!(image.divide_exact(dm.f()).unwrap().is_some());
        }
    };
    for (s, n) in divisors {
        let f = poly(s, n);
        let dm = log_derivations(&f).unwrap();
        check(&dm);
        if dm.weights().is_some() {
            check(&dm.minimalized().unwrap());
        }
        check(&ann_theta(&f).unwrap());
    }
    for n in 2..=4 {
        let d = generic_dn(n).unwrap();
        check(&DerivationModule::from_generators(d.arrangement.f(), d.eta_vectors()).unwrap());
    }
}

/// Dimension of `V_0` in order `≤ d`, weight `w` (standard grading), as the nullity of
/// the system `P(x^α f^l) = f^l·h_{α,l}` in the unknowns `P` and `h`.
fn brute_v0_dim(f: &Polynomial, d: u32, w: i64) -> usize {
    let n = f.nvars();
    let df = f.degree().unwrap() as i64;
    let mut cols: Vec<(Monomial, Monomial)> = Vec::new();
    for beta in Monomial::all_up_to_degree(n, d) {
        let deg = w + beta.degree() as i64;
        if deg >= 0 {
            for m in Monomial::all_of_degree(n, deg as u32) {
                cols.push((beta.clone(), m));
            }
        }
    }
    let mut blocks = Vec::new();
    for l in 1..=d {
        for alpha in Monomial::all_up_to_degree(n, d - l) {
            blocks.push((alpha, l));
        }
    }
    let hcols: Vec<usize> = blocks
        .iter()
        .map(|(alpha, _)| {
            let deg = alpha.degree() as i64 + w;
            if deg < 0 {
                0
            } else {
                Monomial::all_of_degree(n, deg as u32).len()
            }
        })
        .collect();
    let total = cols.len() + hcols.iter().sum::<usize>();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut offset = cols.len();
    for ((alpha, l), nh) in blocks.iter().zip(&hcols) {
        let target = alpha.degree() as i64 + *l as i64 * df + w;
        if target < 0 {
            offset += nh;
            continue;
        }
        let out = Monomial::all_of_degree(n, target as u32);
        let mut block = vec![vec![Rational::zero(); total]; out.len()];
        let g = f.pow(*l).mul_term(alpha, &rat(1));
        let fl = f.pow(*l);
        for (j, (beta, m)) in cols.iter().enumerate() {
            let image = g.derivative_multi(&beta.exponents()).mul_term(m, &rat(1));
            for (mono, c) in image.terms() {
                let i = out.iter().position(|x| x == mono).unwrap();
                block[i][j] += c;
            }
        }
        if *nh > 0 {
            let us = Monomial::all_of_degree(n, (alpha.degree() as i64 + w) as u32);
            for (j, u) in us.iter().enumerate() {
                for (mono, c) in fl.mul_term(u, &rat(1)).terms() {
                    let i = out.iter().position(|x| x == mono).unwrap();
                    block[i][offset + j] -= c;
                }
            }
        }
        offset += nh;
        rows.extend(block);
    }
    total - dense_rank(rows)
}

pub fn v0_dimensions_match_brute_force() {
    for (s, n) in [("x*y", 2), ("x*y*z*(x+y+z)", 3)] {
        let f = poly(s, n);
        for d in 0..=2 {
            for w in -4..=4 {
                let dim = v0_graded_basis(&f, d, w).unwrap().dim();
                assert_eq!(dim, brute_v0_dim(&f, d, w), "{s} d={d} w={w}");
            }
        }
    }
}

pub fn free_plane_curves_are_generated_by_fields() {
    for s in ["x*y", "x*y*(x+y)", "x*y*(x-y)*(x+2*y)", "x^3-y^2", "x^2*y+y^3"] {
        let f = poly(s, 2);
        for d in 0..=2 {
            let (lo, hi) = default_weight_range(&f, d).unwrap();
            for w in lo..=hi {
                let c = compare_v0(&f, d, w).unwrap();
                assert!(matches!(c, Comparison::Equal { .. }), "{s} d={d} w={w}: {c:?}");
            }
        }
    }
    for s in ["x*y", "x*y*(x+y)", "x*y*(x-y)*(x+2*y)", "x^3-y^2", "x^2*y+y^3"] {
        let dm = log_derivations(&poly(s, 2)).unwrap();
        assert!(
            matches!(saito_freeness_test(&dm).unwrap(), Freeness::Free { .. }),
            "{s}"
        );
    }
}
