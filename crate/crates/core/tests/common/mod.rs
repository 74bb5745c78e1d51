#![allow(dead_code)]

pub mod props;

use logdiv::{Monomial, Polynomial, Rational, WeylOperator};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn poly(s: &str, n: usize) -> Polynomial {
    Polynomial::parse_in(s, n).unwrap()
}

pub fn op(s: &str, n: usize) -> WeylOperator {
    WeylOperator::parse_in(s, n).unwrap()
}

/// Random polynomial with up to `terms` terms of degree `<= deg` and small coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> Polynomial {
    let monos = Monomial::all_up_to_degree(n, deg);
    random_in(rng, n, &monos, terms)
}

/// Random homogeneous polynomial of degree `deg`.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> Polynomial {
    let monos = Monomial::all_of_degree(n, deg);
    random_in(rng, n, &monos, terms)
}

fn random_in(rng: &mut ChaCha8Rng, n: usize, monos: &[Monomial], terms: usize) -> Polynomial {
    let k = rng.gen_range(1..=terms);
    Polynomial::from_terms(
        n,
        (0..k).map(|_| {
            (
                monos[rng.gen_range(0..monos.len())].clone(),
                rat(rng.gen_range(-3..=3)),
            )
        }),
    )
}

pub fn random_operator(rng: &mut ChaCha8Rng, n: usize, order: u32, deg: u32) -> WeylOperator {
    let betas = Monomial::all_up_to_degree(n, order);
    let k = rng.gen_range(1..=3);
    WeylOperator::from_terms(
        n,
        (0..k).map(|_| {
            (
                betas[rng.gen_range(0..betas.len())].clone(),
                random_poly(rng, n, deg, 2),
            )
        }),
    )
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let c = &m[r][col] / &pivot;
                for j in col..ncols {
                    let v = &m[rank][j] * &c;
                    m[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}
