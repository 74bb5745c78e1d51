use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u16; 16]>;

/// An exponent vector `x^α`. The length is the ambient variable count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(exps.iter().map(|&e| to_u16(e)).collect())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = to_u16(e);
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.0.iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(&b, &a)| b - a).collect())
    }

    pub fn try_div(&self, by: &Monomial) -> Option<Monomial> {
        by.divides(self).then(|| by.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Support variables, i.e. the indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Reindex variables: `result[map[i]] = self[i]` in a ring of `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut out = Self::one(nvars);
        for (i, &e) in self.0.iter().enumerate() {
            out.0[map[i]] += e;
        }
        out
    }

    /// All monomials of total degree exactly `deg` in `nvars` variables, in descending lex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur));
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left;
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }

    /// All monomials with `Σ w_i·e_i = deg`, in descending lex order. Weights must be positive.
    pub fn all_of_weighted_degree(weights: &[u32], deg: u64) -> Vec<Monomial> {
        let n = weights.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u64, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur));
                }
                return;
            }
            let wi = w[i] as u64;
            for e in (0..=left / wi).rev() {
                cur[i] = e as u32;
                rec(i + 1, left - e * wi, w, cur, out);
            }
            cur[i] = 0;
        }
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        rec(0, deg, weights, &mut cur, &mut out);
        if n == 0 && deg != 0 {
            out.clear();
        }
        out
    }

    /// All monomials of total degree at most `deg`, grouped by increasing degree.
    pub fn all_up_to_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        (0..=deg).flat_map(|d| Self::all_of_degree(nvars, d)).collect()
    }
}

fn to_u16(e: u32) -> u16 {
    u16::try_from(e).expect("exponent exceeds u16 range")
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}
