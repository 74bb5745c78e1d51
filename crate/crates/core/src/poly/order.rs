//! Monomial orders and their extensions to free modules.

use std::cmp::Ordering;

use super::Monomial;

/// An admissible monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded reverse lexicographic order with `x1 > x2 > ... > xn`.
    DegRevLex,
    /// Lexicographic order with `x1 > x2 > ... > xn`.
    Lex,
    /// Reverse lexicographic order refined by a positive weight vector.
    WeightedDegRevLex(Vec<u32>),
    /// Elimination order: variables `0..split` form the first block and are compared
    /// first (weighted degree, then revlex), then the remaining variables likewise.
    Block { split: usize, weights: Option<Vec<u32>> },
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::DegRevLex
    }
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[inline]
fn wdeg(a: &[u16], w: Option<&[u32]>) -> u64 {
    match w {
        Some(w) => a.iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum(),
        None => a.iter().map(|&e| e as u64).sum(),
    }
}

impl TermOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (&a.0[..], &b.0[..]);
        match self {
            TermOrder::DegRevLex => wdeg(x, None).cmp(&wdeg(y, None)).then_with(|| revlex(x, y)),
            TermOrder::Lex => x.cmp(y),
            TermOrder::WeightedDegRevLex(w) => {
                wdeg(x, Some(w)).cmp(&wdeg(y, Some(w))).then_with(|| revlex(x, y))
            }
            TermOrder::Block { split, weights } => {
                let s = *split;
                let (w1, w2) = match weights {
                    Some(w) => (Some(&w[..s]), Some(&w[s..])),
                    None => (None, None),
                };
                wdeg(&x[..s], w1)
                    .cmp(&wdeg(&y[..s], w1))
                    .then_with(|| revlex(&x[..s], &y[..s]))
                    .then_with(|| wdeg(&x[s..], w2).cmp(&wdeg(&y[s..], w2)))
                    .then_with(|| revlex(&x[s..], &y[s..]))
            }
        }
    }

    /// Comparison after the (shifted) degrees are known to agree. Degree orders fall back to
    /// plain reverse lexicographic comparison, so terms in components with different shifts
    /// are ordered by revlex alone; this keeps "the last variable divides the leading term
    /// of a homogeneous element iff it divides every term" true for module elements.
    #[inline]
    pub fn tie_break(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::DegRevLex | TermOrder::WeightedDegRevLex(_) => revlex(&a.0, &b.0),
            _ => self.compare(a, b),
        }
    }

    /// The degree used for pair selection and homogeneity checks.
    #[inline]
    pub fn degree(&self, m: &Monomial) -> u64 {
        match self {
            TermOrder::WeightedDegRevLex(w) => wdeg(&m.0, Some(w)),
            TermOrder::Block { weights: Some(w), .. } => wdeg(&m.0, Some(w)),
            _ => wdeg(&m.0, None),
        }
    }

    pub fn weights(&self) -> Option<&[u32]> {
        match self {
            TermOrder::WeightedDegRevLex(w) => Some(w),
            TermOrder::Block { weights: Some(w), .. } => Some(w),
            _ => None,
        }
    }
}

/// How positions and terms interact in a module order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleOrderKind {
    TermOverPosition,
    PositionOverTerm,
}

/// A monomial order on the free module `R^m`.
///
/// With `shifts`, the shifted degree `deg(m) + shift[c]` of a term `m·e_c` is compared
/// before anything else (only meaningful for term-over-position). With `block_split = s`,
/// every term in a component `< s` dominates every term in a component `≥ s`; this is the
/// order used to read off syzygies from an augmented module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOrder {
    pub term: TermOrder,
    pub kind: ModuleOrderKind,
    /// When true, `e_m > ... > e_1`; otherwise `e_1 > ... > e_m`.
    pub higher_positions_first: bool,
    pub shifts: Option<Vec<i64>>,
    pub block_split: Option<usize>,
}

impl Default for ModuleOrder {
    fn default() -> Self {
        ModuleOrder::top(TermOrder::DegRevLex)
    }
}

impl ModuleOrder {
    pub fn top(term: TermOrder) -> Self {
        ModuleOrder {
            term,
            kind: ModuleOrderKind::TermOverPosition,
            higher_positions_first: false,
            shifts: None,
            block_split: None,
        }
    }

    pub fn pot(term: TermOrder) -> Self {
        ModuleOrder {
            kind: ModuleOrderKind::PositionOverTerm,
            ..Self::top(term)
        }
    }

    pub fn with_shifts(mut self, shifts: Vec<i64>) -> Self {
        self.shifts = Some(shifts);
        self
    }

    pub fn with_higher_positions_first(mut self) -> Self {
        self.higher_positions_first = true;
        self
    }

    #[inline]
    fn position(&self, c: u32, d: u32) -> Ordering {
        if self.higher_positions_first {
            c.cmp(&d)
        } else {
            d.cmp(&c)
        }
    }

    #[inline]
    pub fn shift(&self, c: u32) -> i64 {
        self.shifts
            .as_ref()
            .and_then(|s| s.get(c as usize).copied())
            .unwrap_or(0)
    }

    /// Shifted degree of `m·e_c`.
    #[inline]
    pub fn degree(&self, m: &Monomial, c: u32) -> i64 {
        self.term.degree(m) as i64 + self.shift(c)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, ca: u32, b: &Monomial, cb: u32) -> Ordering {
        if let Some(s) = self.block_split {
            let (ba, bb) = (ca as usize >= s, cb as usize >= s);
            if ba != bb {
                return if ba { Ordering::Less } else { Ordering::Greater };
            }
        }
        match self.kind {
            ModuleOrderKind::TermOverPosition => {
                let by_shift = if self.shifts.is_some() {
                    self.degree(a, ca).cmp(&self.degree(b, cb))
                } else {
                    Ordering::Equal
                };
                by_shift
                    .then_with(|| {
                        if self.shifts.is_some() {
                            self.term.tie_break(a, b)
                        } else {
                            self.term.compare(a, b)
                        }
                    })
                    .then_with(|| self.position(ca, cb))
            }
            ModuleOrderKind::PositionOverTerm => self.position(ca, cb).then_with(|| self.term.compare(a, b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::DegRevLex;
        // x^2 > xy > y^2 > xz > yz > z^2
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.compare(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[1, 0, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = TermOrder::Block {
            split: 1,
            weights: None,
        };
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_is_lexicographic() {
        let o = TermOrder::Lex;
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn module_orders() {
        let top = ModuleOrder::top(TermOrder::DegRevLex);
        assert_eq!(top.compare(&m(&[1, 0]), 1, &m(&[0, 1]), 0), Ordering::Greater);
        assert_eq!(top.compare(&m(&[1, 0]), 0, &m(&[1, 0]), 1), Ordering::Greater);
        let rev = top.clone().with_higher_positions_first();
        assert_eq!(rev.compare(&m(&[1, 0]), 0, &m(&[1, 0]), 1), Ordering::Less);
        let pot = ModuleOrder::pot(TermOrder::DegRevLex);
        assert_eq!(pot.compare(&m(&[0, 0]), 0, &m(&[5, 0]), 1), Ordering::Greater);
        let shifted = top.with_shifts(vec![0, 3]);
        assert_eq!(shifted.compare(&m(&[0, 0]), 1, &m(&[2, 0]), 0), Ordering::Greater);
    }
}
