//! Sparse multivariate polynomials over exact rationals.
//!
//! A polynomial is a map from monomials to nonzero coefficients; the map is
//! the canonical form, so structural equality is polynomial equality. The
//! monomial order is lexicographic on the exponent vectors read in ascending
//! variable order (the earliest variable is the most significant), which is a
//! well-order, so division-style algorithms terminate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{self, BigRational};
use crate::vars::VarId;

/// A power product of variables; the constant monomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<VarId, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: VarId) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(VarId, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarId, &u32)> {
        self.0.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (&v, &e) in &other.0 {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Componentwise quotient; `None` unless `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0.clone();
        for (&v, &e) in &other.0 {
            let have = m.get_mut(&v)?;
            if *have < e {
                return None;
            }
            *have -= e;
            if *have == 0 {
                m.remove(&v);
            }
        }
        Some(Monomial(m))
    }

    /// Componentwise minimum (gcd of power products).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = BTreeMap::new();
        for (&v, &e) in &self.0 {
            let o = other.exponent(v);
            let g = e.min(o);
            if g > 0 {
                m.insert(v, g);
            }
        }
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return std::cmp::Ordering::Equal,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        a.next();
                        b.next();
                    } else if va < vb {
                        // `self` has a positive power of the more significant
                        // variable, `other` has zero there.
                        return std::cmp::Ordering::Greater;
                    } else {
                        return std::cmp::Ordering::Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigRational::one());
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in descending monomial order (display order, leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    /// Leading (maximal) term in the canonical monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (&v, _) in m.iter() {
                s.insert(v);
            }
        }
        s
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_var(&self, v: VarId) -> MultiPoly {
        let mv = Monomial::var(v);
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(&mv), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact formal partial derivative.
    pub fn partial(&self, v: VarId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = m.div(&Monomial::var(v)).expect("positive exponent");
            out.add_term(lowered, c * rational::int(e as i64));
        }
        out
    }

    /// Exact evaluation; every variable of the polynomial must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<VarId, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (&v, &e) in m.iter() {
                let x = assignment.get(&v).ok_or(Error::MissingVariable(v))?;
                for _ in 0..e {
                    val *= x;
                }
            }
            total += val;
        }
        Ok(total)
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst_poly(&self, v: VarId, replacement: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let stripped = m.div(&Monomial::from_pairs(&[(v, e)])).expect("exponent present");
            let term = MultiPoly::from_terms([(stripped, c.clone())]).mul(&replacement.pow(e));
            out = out.add(&term);
        }
        out
    }

    /// Exact division; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero remainder");
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let t = MultiPoly::from_terms([(qm, qc)]);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// gcd of the absolute coefficient values (0 for the zero polynomial).
    pub fn content(&self) -> BigRational {
        let mut g = BigRational::zero();
        for c in self.terms.values() {
            g = rational::content_gcd(&g, c);
        }
        g
    }

    /// Largest common power product of all monomials.
    pub fn monomial_gcd(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let mut g = it.next()?.clone();
        for m in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        Some(g)
    }

    /// Divides every monomial by `m`; panics unless `m` divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial divides all terms"), c.clone()))
                .collect(),
        }
    }

    /// JSON form: array of `{"coeff": {"num", "den"}, "monomial": {...}}` in
    /// descending monomial order.
    pub fn to_json(&self) -> Value {
        let arr: Vec<Value> = self
            .terms_desc()
            .map(|(m, c)| {
                let mut mono = serde_json::Map::new();
                for (v, &e) in m.iter() {
                    mono.insert(v.json_key(), json!(e));
                }
                json!({
                    "coeff": {"num": c.numer().to_string(), "den": c.denom().to_string()},
                    "monomial": Value::Object(mono),
                })
            })
            .collect();
        Value::Array(arr)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", rational::to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", rational::to_string(&abs), m)?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: u32, j: u32) -> MultiPoly {
        MultiPoly::var(VarId::x(i, j))
    }

    #[test]
    fn add_identity_and_inverse() {
        let p = x(2, 1);
        assert_eq!(p.add(&MultiPoly::zero()), p);
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn canonical_two_term_form() {
        // x31*x42 - x32*x41, entered in either order, is the same value.
        let d = x(3, 1).mul(&x(4, 2)).sub(&x(3, 2).mul(&x(4, 1)));
        let d2 = x(3, 2).mul(&x(4, 1)).neg().add(&x(4, 2).mul(&x(3, 1)));
        assert_eq!(d, d2);
        assert_eq!(d.num_terms(), 2);
        assert_eq!(d.to_string(), "x_31*x_42 - x_32*x_41");
    }

    #[test]
    fn mul_identity_and_difference_of_squares() {
        let p = x(2, 1).add(&x(3, 1));
        assert_eq!(MultiPoly::one().mul(&p), p);
        let q = x(2, 1).sub(&x(3, 1));
        let prod = p.mul(&q);
        let expect = x(2, 1).mul(&x(2, 1)).sub(&x(3, 1).mul(&x(3, 1)));
        assert_eq!(prod, expect);
        assert_eq!(prod.to_string(), "x_21^2 - x_31^2");
    }

    /// Independent multiplication oracle: expand term by term into a list and
    /// fold the list with repeated single-term additions.
    fn naive_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut pieces = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                pieces.push(MultiPoly::from_terms([(ma.mul(mb), ca * cb)]));
            }
        }
        pieces.iter().fold(MultiPoly::zero(), |acc, t| acc.add(t))
    }

    #[test]
    fn mul_matches_expansion_oracle_and_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(421);
        for _ in 0..60 {
            let p = sample::random_poly(&mut rng, 4, 20, 3);
            let q = sample::random_poly(&mut rng, 4, 20, 3);
            let pq = p.mul(&q);
            assert_eq!(pq, naive_mul(&p, &q));
            assert_eq!(pq, q.mul(&p));
        }
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = sample::random_poly(&mut rng, 4, 10, 2);
            let b = sample::random_poly(&mut rng, 4, 10, 2);
            let c = sample::random_poly(&mut rng, 4, 10, 2);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }

    #[test]
    fn partial_of_single_variable() {
        assert_eq!(x(2, 1).partial(VarId::x(2, 1)), MultiPoly::one());
        let d = x(3, 1).mul(&x(4, 2)).sub(&x(3, 2).mul(&x(4, 1)));
        assert_eq!(d.partial(VarId::x(4, 2)), x(3, 1));
    }

    /// Exact difference-quotient oracle: (p[v+h] - p)/h at h = 0 equals dp/dv.
    #[test]
    fn partial_matches_difference_quotient() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let h = VarId::bhat(9, 9); // fresh symbol, never sampled below
        for _ in 0..40 {
            let p = sample::random_poly(&mut rng, 4, 8, 3);
            for v in p.vars() {
                let shifted = p.subst_poly(v, &MultiPoly::var(v).add(&MultiPoly::var(h)));
                let quotient = shifted.sub(&p).exact_div(&MultiPoly::var(h)).expect("h divides");
                let at_zero = quotient.subst_poly(h, &MultiPoly::zero());
                assert_eq!(at_zero, p.partial(v));
            }
        }
    }

    #[test]
    fn eval_basics() {
        let mut a = BTreeMap::new();
        a.insert(VarId::x(2, 1), int(7));
        assert_eq!(x(2, 1).eval(&a).unwrap(), int(7));

        let d = x(3, 1).mul(&x(4, 2)).sub(&x(3, 2).mul(&x(4, 1)));
        let mut a = BTreeMap::new();
        a.insert(VarId::x(3, 1), int(1));
        a.insert(VarId::x(4, 2), int(2));
        a.insert(VarId::x(3, 2), int(3));
        a.insert(VarId::x(4, 1), int(5));
        assert_eq!(d.eval(&a).unwrap(), int(-13));
    }

    #[test]
    fn eval_missing_variable() {
        let a = BTreeMap::new();
        assert_eq!(x(2, 1).eval(&a), Err(Error::MissingVariable(VarId::x(2, 1))));
    }

    #[test]
    fn eval_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p = sample::random_poly(&mut rng, 3, 8, 2);
            let q = sample::random_poly(&mut rng, 3, 8, 2);
            let mut vars = p.vars();
            vars.extend(q.vars());
            let point = sample::random_point(&mut rng, &vars);
            let lhs = p.mul(&q).eval(&point).unwrap();
            let rhs = p.eval(&point).unwrap() * q.eval(&point).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exact_division_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let p = sample::random_poly(&mut rng, 3, 6, 2);
            let mut q = sample::random_poly(&mut rng, 3, 6, 2);
            if q.is_zero() {
                q = MultiPoly::one();
            }
            let prod = p.mul(&q);
            assert_eq!(prod.exact_div(&q).unwrap(), p);
        }
        // A division that is not exact reports None.
        let p = x(2, 1).add(&MultiPoly::one());
        assert!(p.exact_div(&x(3, 1)).is_none());
    }

    #[test]
    fn content_and_monomial_gcd() {
        let p = x(2, 1).mul(&x(3, 1)).scale(&rat(4, 3)).add(&x(2, 1).scale(&int(2)));
        assert_eq!(p.content(), rat(2, 3));
        assert_eq!(p.monomial_gcd().unwrap(), Monomial::var(VarId::x(2, 1)));
    }

    #[test]
    fn monomial_order_examples() {
        // Earlier variables dominate; higher exponent wins at the first
        // difference.
        let m_a = Monomial::from_pairs(&[(VarId::x(3, 1), 1), (VarId::x(4, 2), 1)]);
        let m_b = Monomial::from_pairs(&[(VarId::x(3, 2), 1), (VarId::x(4, 1), 1)]);
        assert!(m_a > m_b);
        let sq = Monomial::from_pairs(&[(VarId::x(2, 1), 2)]);
        let lin = Monomial::from_pairs(&[(VarId::x(2, 1), 1)]);
        assert!(sq > lin);
        assert!(Monomial::var(VarId::x(2, 1)) > Monomial::var(VarId::x(3, 2)));
    }

    #[test]
    fn display_forms() {
        let p = x(2, 1).scale(&int(-1));
        assert_eq!(p.to_string(), "-x_21");
        let p = x(2, 1).scale(&rat(1, 2)).add(&MultiPoly::constant(int(-3)));
        assert_eq!(p.to_string(), "1/2*x_21 - 3");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let d = x(3, 1).mul(&x(4, 2)).sub(&x(3, 2).mul(&x(4, 1)));
        let v = d.to_json();
        let expect = serde_json::json!([
            {"coeff": {"num": "1", "den": "1"}, "monomial": {"x_3_1": 1, "x_4_2": 1}},
            {"coeff": {"num": "-1", "den": "1"}, "monomial": {"x_3_2": 1, "x_4_1": 1}},
        ]);
        assert_eq!(v, expect);
    }
}
