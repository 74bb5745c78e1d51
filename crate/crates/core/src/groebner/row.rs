//! Internal sparse representation of module elements, sorted by a module order.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{ModuleOrder, Monomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MTerm {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: Rational,
}

/// Terms in strictly descending order under the owning computation's module order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Row {
    pub terms: Vec<MTerm>,
}

impl Row {
    pub fn from_unsorted(mut terms: Vec<MTerm>, order: &ModuleOrder) -> Row {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort_by(|a, b| order.compare(&b.mono, b.comp, &a.mono, a.comp));
        // combine duplicates
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coeff += t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Row { terms: out }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> &MTerm {
        &self.terms[0]
    }

    pub fn make_monic(&mut self) {
        if let Some(first) = self.terms.first() {
            if !first.coeff.is_one() {
                let inv = first.coeff.recip();
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
    }

    /// `self - c·m·other`, merging in order.
    pub fn sub_mul(&self, c: &Rational, m: &Monomial, other: &Row, order: &ModuleOrder) -> Row {
        self.sub_mul_from(0, c, m, other, order)
    }

    /// Like `sub_mul` but only the terms of `self` starting at `start` take part; earlier
    /// terms are copied unchanged (they are known to be greater than everything in `other·m`).
    pub fn sub_mul_from(
        &self,
        start: usize,
        c: &Rational,
        m: &Monomial,
        other: &Row,
        order: &ModuleOrder,
    ) -> Row {
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        out.extend_from_slice(&a[..start]);
        let mut i = start;
        let mut j = 0;
        let b = &other.terms;
        let mut bm: Option<Monomial> = None;
        while i < a.len() || j < b.len() {
            if j < b.len() && bm.is_none() {
                bm = Some(b[j].mono.mul(m));
            }
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                order.compare(&a[i].mono, a[i].comp, bm.as_ref().unwrap(), b[j].comp)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(MTerm {
                        mono: bm.take().unwrap(),
                        comp: b[j].comp,
                        coeff: -(c * &b[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].coeff - &(c * &b[j].coeff);
                    if !v.is_zero() {
                        out.push(MTerm {
                            mono: bm.take().unwrap(),
                            comp: a[i].comp,
                            coeff: v,
                        });
                    } else {
                        bm = None;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Row { terms: out }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Row {
        Row {
            terms: self
                .terms
                .iter()
                .map(|t| MTerm {
                    mono: t.mono.mul(m),
                    comp: t.comp,
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }
}
