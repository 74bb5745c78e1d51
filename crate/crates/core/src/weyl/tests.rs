use super::*;
use crate::poly::{rat, Monomial};

fn op(s: &str, n: usize) -> WeylOperator {
    WeylOperator::parse_in(s, n).unwrap()
}

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse_in(s, n).unwrap()
}

const Q9: &str = "(x+y+z)*(x+2*y+3*z)*(3*z*y^2*dy^2 + (x+4*y-3*z)*y*z*dy*dz - 4*y*z^2*dz^2)";
const F9: &str = "x*y*z*(x+y+z)*(x+2*y+3*z)";

#[test]
fn application() {
    assert_eq!(op("dx", 1).apply(&p("x^2", 1)).unwrap(), p("2*x", 1));
    for m in 0..5u32 {
        let g = p(&format!("x^{m}"), 2);
        assert_eq!(op("x*dx", 2).apply(&g).unwrap(), g.scale(&rat(m as i64)));
    }
    assert!(op("dx", 2).apply(&p("x", 3)).is_err());
}

#[test]
fn example_operator_preserves_the_divisor() {
    let q = op(Q9, 3);
    let f = p(F9, 3);
    let image = q.apply(&f).unwrap();
    assert!(image.divide_exact(&f).unwrap().is_some());
    assert_eq!(q.order(), Some(2));
    assert_eq!(q.weight(None), Some(3));
}

#[test]
fn canonical_commutation() {
    let c = op("dx", 1).commutator(&op("x", 1)).unwrap();
    assert_eq!(c, WeylOperator::one(1));
    for i in 0..3 {
        for j in 0..3 {
            let di = WeylOperator::partial(3, i);
            let xj = WeylOperator::from_polynomial(Polynomial::var(3, j));
            let lhs = di.compose(&xj).unwrap();
            let mut rhs = WeylOperator::term(Monomial::var(3, i), Polynomial::var(3, j));
            if i == j {
                rhs = rhs.add(&WeylOperator::one(3));
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn bracket_with_function_coefficient() {
    // [ξ, a·η] = a·[ξ, η] + ξ(a)·η
    let xi = op("x*y*dx - y^2*dz", 3);
    let eta = op("z*dy + x^2*dx", 3);
    let a = p("x + y*z", 3);
    let lhs = xi.commutator(&eta.mul_left(&a)).unwrap();
    let rhs = xi
        .commutator(&eta)
        .unwrap()
        .mul_left(&a)
        .add(&eta.mul_left(&xi.apply(&a).unwrap()));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.order(), Some(1));
}

#[test]
fn composition_matches_iterated_application() {
    // η12 and η13 of the generic arrangement in three variables
    let e12 = op("x*y*(dx - dy)", 3);
    let e13 = op("x*z*(dx - dz)", 3);
    let pq = e12.compose(&e13).unwrap();
    assert_eq!(pq.order(), Some(2));
    for g in Monomial::all_up_to_degree(3, 4) {
        let g = Polynomial::monomial(3, g, rat(1));
        let lhs = pq.apply(&g).unwrap();
        let rhs = e12.apply(&e13.apply(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert_eq!(
        pq.symbol().unwrap(),
        &e12.symbol().unwrap() * &e13.symbol().unwrap()
    );
}

#[test]
fn symbols() {
    let s = op("x*dx^2 + dx", 1).symbol().unwrap();
    assert_eq!(s, p("x*y^2", 2));
    assert_eq!(WeylOperator::zero(2).symbol(), Err(Error::ZeroSymbol));
    let q = op(Q9, 3).symbol().unwrap();
    // variables x, y, z then ξ_x, ξ_y, ξ_z = x4, x5, x6
    let expect = p(
        "(x1+x2+x3)*(x1+2*x2+3*x3)*(3*x3*x2^2*x5^2 + (x1+4*x2-3*x3)*x2*x3*x5*x6 - 4*x2*x3^2*x6^2)",
        6,
    );
    assert_eq!(q, expect);
}

#[test]
fn vector_field_round_trip() {
    let v = WeylOperator::vector_field(&[p("x", 2), p("-y^2", 2)]);
    assert_eq!(v.as_vector_field().unwrap(), vec![p("x", 2), p("-y^2", 2)]);
    assert!(op("dx^2", 2).as_vector_field().is_none());
    assert!(op("x*dx + 1", 2).as_vector_field().is_none());
}

#[test]
fn printer_round_trips() {
    for s in [Q9, "x*dx^2 + dx - 3", "0", "dx*x", "1/2*x1*dx5 + dx2^3"] {
        let o = WeylOperator::parse(s).unwrap();
        let back = WeylOperator::parse_in(&o.to_string(), o.nvars()).unwrap();
        assert_eq!(back, o, "{s} printed as {o}");
    }
}

#[test]
fn linear_change_matches_substitution() {
    // x = A y with A = [[1, 1], [0, 1]]
    let a = vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]];
    let a_inv = vec![vec![rat(1), rat(-1)], vec![rat(0), rat(1)]];
    let images = linear_images(&a, 2);
    let pop = op("x*dy^2 + y*dx", 2);
    let changed = pop.linear_change(&a, &a_inv).unwrap();
    for g in Monomial::all_up_to_degree(2, 3) {
        let g = Polynomial::monomial(2, g, rat(1));
        let lhs = pop.apply(&g).unwrap().substitute(&images);
        let rhs = changed.apply(&g.substitute(&images)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
