use super::*;

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse_in(s, n).unwrap()
}

fn op(s: &str, n: usize) -> WeylOperator {
    WeylOperator::parse_in(s, n).unwrap()
}

const Q9: &str = "(x+y+z)*(x+2*y+3*z)*(3*z*y^2*dy^2 + (x+4*y-3*z)*y*z*dy*dz - 4*y*z^2*dz^2)";
const Q9_SIGN: &str = "(x+y+z)*(x+2*y+3*z)*(3*z*y^2*dy^2 - (x+4*y-3*z)*y*z*dy*dz - 4*y*z^2*dz^2)";
const F9: &str = "x*y*z*(x+y+z)*(x+2*y+3*z)";

#[test]
fn normal_crossing_membership() {
    let f = p("x*y", 2);
    assert!(v_membership(&f, &op("x*dx", 2), 0).unwrap());
    assert!(!v_membership(&f, &op("dx", 2), 0).unwrap());
    assert!(v_membership(&f, &op("dx", 2), 1).unwrap());
    assert!(v_membership(&f, &op("x*y*dx*dy", 2), 0).unwrap());
    assert!(!v_membership(&f, &op("x*dx*dy", 2), 0).unwrap());
    assert!(v_membership(&f, &op("x*dx*dy", 2), 1).unwrap());
    assert!(!v_membership(&f, &op("x*y", 2), -2).unwrap());
    assert!(v_membership(&f, &op("x*y", 2), -1).unwrap());
    assert!(v_membership(&f, &WeylOperator::zero(2), -5).unwrap());
}

#[test]
fn arrangement_operator_and_its_sign_variant() {
    let f = p(F9, 3);
    // the d_s^2 coefficient along s = x+y+z is L*y*z*(x+7y-7z), not divisible by s^2
    let q = op(Q9, 3);
    assert!(v_membership(&f, &q, 1).unwrap());
    assert!(!v_membership(&f, &q, 0).unwrap());
    let q = op(Q9_SIGN, 3);
    assert!(v_membership(&f, &q, 0).unwrap());
    assert!(!v_membership(&f, &q, -1).unwrap());
    assert!(v0_graded_basis(&f, 2, 3).unwrap().contains(&q));
}

#[test]
fn local_and_global_membership() {
    let f = p("x*(1+x)", 1);
    let e = op("x*dx", 1);
    assert!(v_membership(&f, &e, 0).unwrap());
    assert!(!v_membership_with(&f, &e, 0, MembershipMode::Global).unwrap());
    assert!(matches!(
        v_membership(&p("2", 1), &e, 0),
        Err(Error::InvalidDivisor(_))
    ));
}

#[test]
fn smooth_divisor_in_one_variable() {
    let f = p("x", 1);
    let v0 = v0_graded_basis(&f, 1, 0).unwrap();
    assert_eq!(v0.dim(), 2);
    assert!(v0.contains(&op("x*dx", 1)));
    assert!(v0.contains(&op("1", 1)));
    assert!(!v0.contains(&op("dx", 1)));
    let d = v0_graded_basis(&f, 1, -1).unwrap();
    assert_eq!(d.dim(), 0);
}

#[test]
fn order_zero_is_the_ring() {
    let f = p("x*y*z*(x+y+z)", 3);
    for w in 0..4 {
        let gen = logder_generated_graded(&f, 0, w).unwrap();
        assert_eq!(gen.dim(), Monomial::all_of_degree(3, w as u32).len());
        assert_eq!(
            compare_v0(&f, 0, w).unwrap(),
            Comparison::Equal { dim: gen.dim() }
        );
    }
}

#[test]
fn order_one_is_logarithmic_fields() {
    let f = p("x*y*z*(x+y+z)", 3);
    for w in -1..=3 {
        assert!(
            matches!(compare_v0(&f, 1, w).unwrap(), Comparison::Equal { .. }),
            "w={w}"
        );
    }
}

#[test]
fn generated_operators_are_in_v0() {
    let f = p("x*y*(x+y)", 2);
    for w in 0..3 {
        let gen = logder_generated_graded(&f, 2, w).unwrap();
        for b in &gen.basis {
            assert!(v_membership(&f, b, 0).unwrap());
        }
    }
}

#[test]
fn basis_elements_satisfy_membership() {
    let f = p("x*y*z*(x+y+z)", 3);
    let v0 = v0_graded_basis(&f, 2, 1).unwrap();
    assert!(v0.dim() > 0);
    for b in &v0.basis {
        assert!(v_membership(&f, b, 0).unwrap());
        assert_eq!(b.weight(None), Some(1));
    }
}

#[test]
fn levels_other_than_zero() {
    let f = p("x*y", 2);
    // V_{-1} contains f
    let vm = vk_graded_basis(&f, -1, 0, 2).unwrap();
    assert!(vm.contains(&WeylOperator::from_polynomial(f.clone())));
    // V_1 contains the partials
    let v1 = vk_graded_basis(&f, 1, 1, -1).unwrap();
    assert!(v1.contains(&op("dx", 2)) && v1.contains(&op("dy", 2)));
    // level zero is V_0
    for (d, w) in [(1, 0), (2, 0), (2, 1)] {
        assert_eq!(
            vk_graded_basis(&f, 0, d, w).unwrap().basis,
            v0_graded_basis(&f, d, w).unwrap().basis
        );
    }
    for f in [p("x*y", 2), p("x*y*(x+y)", 2)] {
        for k in -1..=2 {
            for (d, w) in [(1, -1), (1, 0), (2, -1), (2, 1), (2, 2)] {
                let a = vk_graded_basis(&f, k, d, w).unwrap();
                let b = vk_graded_basis_direct(&f, k, d, w).unwrap();
                assert_eq!(a.basis, b.basis, "k={k} d={d} w={w}");
                for e in &a.basis {
                    assert!(v_membership(&f, e, k).unwrap());
                }
            }
        }
    }
}

#[test]
fn bases_need_grading() {
    let f = p("x^4+y^5+x^2*y^3", 2);
    assert!(matches!(v0_graded_basis(&f, 1, 0), Err(Error::NotHomogeneous(_))));
    assert!(matches!(compare_v0(&f, 1, 0), Err(Error::NotHomogeneous(_))));
}

#[test]
fn weighted_homogeneous_divisor() {
    let f = p("x^3-y^2", 2);
    let (lo, hi) = default_weight_range(&f, 2).unwrap();
    assert_eq!((lo, hi), (-6, 8));
    for w in lo..=hi {
        assert!(
            matches!(compare_v0(&f, 2, w).unwrap(), Comparison::Equal { .. }),
            "w={w}"
        );
    }
}
