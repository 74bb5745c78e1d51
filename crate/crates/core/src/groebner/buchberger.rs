//! Buchberger's algorithm for submodules of free modules, normal pair selection with the
//! product and chain criteria.

use std::collections::{BTreeSet, HashSet};

use super::row::Row;
use crate::poly::{ModuleOrder, Monomial, Rational};

/// Finds the reducer with the fewest terms whose leading term divides `(mono, comp)`.
#[inline]
fn find_reducer<'a>(basis: &'a [Row], alive: &[bool], mono: &Monomial, comp: u32) -> Option<&'a Row> {
    let mut best: Option<&Row> = None;
    for (g, &ok) in basis.iter().zip(alive) {
        if !ok {
            continue;
        }
        let l = g.lead();
        if l.comp == comp && l.mono.divides(mono) && best.map_or(true, |b| g.terms.len() < b.terms.len()) {
            best = Some(g);
        }
    }
    best
}

/// Reduces `row` modulo `basis` (rows need not be monic). With `full`, every term is
/// reduced; otherwise only the leading term is, repeatedly.
pub(crate) fn reduce(mut row: Row, basis: &[Row], alive: &[bool], order: &ModuleOrder, full: bool) -> Row {
    let mut idx = 0;
    while idx < row.terms.len() {
        let t = &row.terms[idx];
        match find_reducer(basis, alive, &t.mono, t.comp) {
            Some(g) => {
                let l = g.lead();
                let q = l.mono.quotient_of(&t.mono);
                let c: Rational = &t.coeff / &l.coeff;
                row = row.sub_mul_from(idx, &c, &q, g, order);
            }
            None => {
                if !full {
                    break;
                }
                idx += 1;
            }
        }
    }
    row
}

/// S-vector of two rows with leading terms in the same component.
pub(crate) fn s_vector(a: &Row, b: &Row, order: &ModuleOrder) -> Row {
    let (la, lb) = (a.lead(), b.lead());
    let lcm = la.mono.lcm(&lb.mono);
    let qa = la.mono.quotient_of(&lcm);
    let qb = lb.mono.quotient_of(&lcm);
    let left = a.mul_term(&lb.coeff, &qa);
    left.sub_mul(&la.coeff, &qb, b, order)
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy)]
struct PairKey {
    degree: i64,
    j: usize,
    i: usize,
}

struct State<'o> {
    order: &'o ModuleOrder,
    basis: Vec<Row>,
    alive: Vec<bool>,
    pairs: BTreeSet<PairKey>,
    pending: HashSet<(usize, usize)>,
    ideal_case: bool,
}

impl<'o> State<'o> {
    fn add(&mut self, mut row: Row) {
        row.make_monic();
        let t = self.basis.len();
        let (lm, lc) = (row.lead().mono.clone(), row.lead().comp);
        for i in 0..t {
            if !self.alive[i] {
                continue;
            }
            let l = self.basis[i].lead();
            if l.comp != lc {
                continue;
            }
            // product criterion: only valid in the ideal case
            if self.ideal_case && l.mono.is_coprime(&lm) {
                continue;
            }
            let lcm = l.mono.lcm(&lm);
            let key = PairKey {
                degree: self.order.degree(&lcm, lc),
                j: t,
                i,
            };
            self.pairs.insert(key);
            self.pending.insert((i, t));
        }
        self.basis.push(row);
        self.alive.push(true);
    }

    /// Buchberger's chain criterion for the pair `(i, j)`.
    fn chain_skips(&self, i: usize, j: usize) -> bool {
        let (li, lj) = (self.basis[i].lead(), self.basis[j].lead());
        let lcm = li.mono.lcm(&lj.mono);
        for k in 0..self.basis.len() {
            if k == i || k == j {
                continue;
            }
            let lk = self.basis[k].lead();
            if lk.comp != li.comp || !lk.mono.divides(&lcm) {
                continue;
            }
            let p1 = (i.min(k), i.max(k));
            let p2 = (j.min(k), j.max(k));
            if !self.pending.contains(&p1) && !self.pending.contains(&p2) {
                return true;
            }
        }
        false
    }
}

/// Reduced Gröbner basis of the submodule generated by `rows`.
pub(crate) fn groebner_rows(rows: Vec<Row>, order: &ModuleOrder, ideal_case: bool) -> Vec<Row> {
    let mut st = State {
        order,
        basis: Vec::new(),
        alive: Vec::new(),
        pairs: BTreeSet::new(),
        pending: HashSet::new(),
        ideal_case,
    };
    let mut input: Vec<Row> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    // feed low leading terms first, so early elements are small
    input.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        order.compare(&la.mono, la.comp, &lb.mono, lb.comp)
    });
    for r in input {
        let r = reduce(r, &st.basis, &st.alive, order, false);
        if !r.is_zero() {
            st.add(r);
        }
    }
    while let Some(key) = st.pairs.pop_first() {
        let (i, j) = (key.i, key.j);
        if st.chain_skips(i, j) {
            st.pending.remove(&(i, j));
            continue;
        }
        st.pending.remove(&(i, j));
        let s = s_vector(&st.basis[i], &st.basis[j], order);
        let r = reduce(s, &st.basis, &st.alive, order, false);
        if !r.is_zero() {
            st.add(r);
        }
    }
    interreduce(st.basis, order)
}

/// Minimalizes, tail-reduces and normalizes a Gröbner basis. Result is sorted by
/// ascending leading term.
pub(crate) fn interreduce(basis: Vec<Row>, order: &ModuleOrder) -> Vec<Row> {
    let mut rows: Vec<Row> = basis.into_iter().filter(|r| !r.is_zero()).collect();
    rows.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        order.compare(&la.mono, la.comp, &lb.mono, lb.comp)
    });
    let mut kept: Vec<Row> = Vec::new();
    for r in rows {
        let l = r.lead();
        let redundant = kept
            .iter()
            .any(|k| k.lead().comp == l.comp && k.lead().mono.divides(&l.mono));
        if !redundant {
            kept.push(r);
        }
    }
    let n = kept.len();
    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        let mut alive = vec![true; n];
        alive[idx] = false;
        let mut r = kept[idx].clone();
        // lead is irreducible by the others, so a full reduction only touches the tail
        let tail = Row {
            terms: r.terms.split_off(1),
        };
        let tail = reduce(tail, &kept, &alive, order, true);
        r.terms.extend(tail.terms);
        r.make_monic();
        out.push(r);
    }
    out
}

/// Checks Buchberger's criterion for `rows` as given: every S-vector reduces to zero
/// modulo the set itself.
pub(crate) fn satisfies_buchberger_criterion(rows: &[Row], order: &ModuleOrder) -> bool {
    let rows: Vec<Row> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let alive = vec![true; rows.len()];
    for j in 0..rows.len() {
        for i in 0..j {
            if rows[i].lead().comp != rows[j].lead().comp {
                continue;
            }
            let s = s_vector(&rows[i], &rows[j], order);
            if !reduce(s, &rows, &alive, order, true).is_zero() {
                return false;
            }
        }
    }
    true
}
