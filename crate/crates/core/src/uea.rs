//! Universal enveloping algebra arithmetic with PBW normal ordering.
//!
//! Words are sequences of basis indices into an [`AlgebraSpec`], stored in
//! normal form: every word is non-decreasing with respect to the basis order.
//! Products rewrite out-of-order adjacent pairs with the rule
//! `e_a e_b -> e_b e_a + [e_a, e_b]` (for `a > b`), which terminates because
//! each step either shortens the word or lowers its inversion count.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::rational::BigRational;

/// Longest word a product is allowed to produce.
pub const WORD_CAP: usize = 12;

/// Longest word `sym` accepts (r! orderings are expanded).
pub const SYM_CAP: usize = 6;

/// Element of the universal enveloping algebra in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UeaElement {
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl UeaElement {
    pub fn zero() -> Self {
        UeaElement::default()
    }

    pub fn one() -> Self {
        UeaElement::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut el = UeaElement::default();
        el.add_term(Vec::new(), c);
        el
    }

    /// Single generator by basis index.
    pub fn generator(idx: usize) -> Self {
        let mut el = UeaElement::default();
        el.add_term(vec![idx], BigRational::one());
        el
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, word: Vec<usize>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UeaElement) -> UeaElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UeaElement {
        let mut out = UeaElement::default();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> UeaElement {
        let mut out = UeaElement::default();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    /// Render with the algebra's basis labels, terms in map order.
    pub fn render(&self, alg: &AlgebraSpec) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (word, coeff)) in self.terms.iter().enumerate() {
            let mags = word
                .iter()
                .map(|&idx| alg.basis[idx].to_string())
                .collect::<Vec<_>>()
                .join("*");
            let abs = num::abs(coeff.clone());
            let mag = if word.is_empty() {
                crate::rational::to_string(&abs)
            } else if abs.is_one() {
                mags
            } else {
                format!("{}*{}", crate::rational::to_string(&abs), mags)
            };
            if i == 0 {
                if coeff < &BigRational::zero() {
                    out.push('-');
                }
                out.push_str(&mag);
            } else if coeff < &BigRational::zero() {
                out.push_str(" - ");
                out.push_str(&mag);
            } else {
                out.push_str(" + ");
                out.push_str(&mag);
            }
        }
        out
    }
}

/// Normal-order `coeff * word`, resolving the leftmost inversion each step.
fn normal_order(word: &[usize], coeff: BigRational, alg: &AlgebraSpec) -> UeaElement {
    normal_order_with(word, coeff, alg, &mut |_| 0)
}

/// Normal-order with a pluggable choice of which inversion to resolve;
/// `choose(m)` picks one of `m` candidate positions. Used to exercise
/// confluence: every strategy must land on the same normal form.
fn normal_order_with(
    word: &[usize],
    coeff: BigRational,
    alg: &AlgebraSpec,
    choose: &mut dyn FnMut(usize) -> usize,
) -> UeaElement {
    let mut out = UeaElement::default();
    let mut stack: Vec<(Vec<usize>, BigRational)> = vec![(word.to_vec(), coeff)];
    while let Some((w, c)) = stack.pop() {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i] > w[i + 1])
            .collect();
        if inversions.is_empty() {
            out.add_term(w, c);
            continue;
        }
        let i = inversions[choose(inversions.len()) % inversions.len()];
        let (a, b) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        for (k, cf) in alg.bracket(a, b) {
            let mut shorter = Vec::with_capacity(w.len() - 1);
            shorter.extend_from_slice(&w[..i]);
            shorter.push(*k);
            shorter.extend_from_slice(&w[i + 2..]);
            stack.push((shorter, &c * cf));
        }
        stack.push((swapped, c));
    }
    out
}

/// Product in the enveloping algebra.
pub fn uea_mul(a: &UeaElement, b: &UeaElement, alg: &AlgebraSpec) -> Result<UeaElement> {
    let mut out = UeaElement::default();
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let len = wa.len() + wb.len();
            if len > WORD_CAP {
                return Err(Error::WordTooLong { len, cap: WORD_CAP });
            }
            let mut w = Vec::with_capacity(len);
            w.extend_from_slice(wa);
            w.extend_from_slice(wb);
            out = out.add(&normal_order(&w, ca * cb, alg));
        }
    }
    Ok(out)
}

/// Ordered product of a list of generators (indices), left to right.
pub fn word_product(word: &[usize], alg: &AlgebraSpec) -> Result<UeaElement> {
    if word.len() > WORD_CAP {
        return Err(Error::WordTooLong {
            len: word.len(),
            cap: WORD_CAP,
        });
    }
    Ok(normal_order(word, BigRational::one(), alg))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Symmetrization of a word: average over all orderings, normal-ordered.
pub fn sym(word: &[usize], alg: &AlgebraSpec) -> Result<UeaElement> {
    if word.is_empty() || word.len() > SYM_CAP {
        return Err(Error::WordTooLong {
            len: word.len(),
            cap: SYM_CAP,
        });
    }
    let perms = permutations(word);
    let count = BigRational::from_integer(num::BigInt::from(perms.len() as u64));
    let mut total = UeaElement::default();
    for p in perms {
        total = total.add(&normal_order(&p, BigRational::one(), alg));
    }
    Ok(total.scale(&count.recip()))
}

/// True iff `c` commutes with every generator of the algebra.
pub fn casimir_check(c: &UeaElement, alg: &AlgebraSpec) -> Result<bool> {
    for idx in 0..alg.dim() {
        let g = UeaElement::generator(idx);
        if uea_mul(c, &g, alg)? != uea_mul(&g, c, alg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normal-order with a seeded random rewrite strategy (confluence harness).
pub fn normal_order_randomized<R: Rng>(
    word: &[usize],
    alg: &AlgebraSpec,
    rng: &mut R,
) -> UeaElement {
    normal_order_with(word, BigRational::one(), alg, &mut |m| rng.gen_range(0..m))
}
