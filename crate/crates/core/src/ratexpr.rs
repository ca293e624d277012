//! Quotients of multivariate polynomials.
//!
//! Normalization is deliberately partial: the common monomial factor is
//! cancelled, the denominator is made primitive (integer content 1) with a
//! positive leading coefficient, and a zero numerator forces denominator 1.
//! Full multivariate gcd reduction is not performed; equality is decided by
//! cross-multiplication, which is exact regardless of the representative.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::BigRational;
use crate::vars::VarId;

#[derive(Debug, Clone)]
pub struct RationalExpr {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalExpr {
    /// Builds num/den in normalized form. Panics if `den` is the zero
    /// polynomial; denominators are nonzero by construction everywhere else.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalExpr { num, den: MultiPoly::one() };
        }
        let mut num = num;
        let mut den = den;
        let g = num
            .monomial_gcd()
            .expect("nonzero")
            .gcd(&den.monomial_gcd().expect("nonzero"));
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        let mut scale = den.content();
        let (_, lead) = den.leading().expect("nonzero");
        if lead.is_negative() {
            scale = -scale;
        }
        if !scale.is_one() {
            let inv = scale.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalExpr { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalExpr { num: p, den: MultiPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The denominator is the constant 1, i.e. the value is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        RationalExpr::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalExpr) -> RationalExpr {
        RationalExpr::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        RationalExpr::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &BigRational) -> RationalExpr {
        RationalExpr::new(self.num.scale(c), self.den.clone())
    }

    /// Division; fails on a zero divisor.
    pub fn div(&self, other: &RationalExpr) -> Result<RationalExpr> {
        if other.is_zero() {
            return Err(Error::SingularSystem);
        }
        Ok(RationalExpr::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn recip(&self) -> Result<RationalExpr> {
        RationalExpr::one().div(self)
    }

    pub fn pow(&self, e: u32) -> RationalExpr {
        RationalExpr::new(self.num.pow(e), self.den.pow(e))
    }

    /// Quotient-rule partial derivative.
    pub fn partial(&self, v: VarId) -> RationalExpr {
        let num = self
            .num
            .partial(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.partial(v)));
        RationalExpr::new(num, self.den.mul(&self.den))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &BTreeMap<VarId, BigRational>) -> Result<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Substitutes rational expressions for the mapped variables, leaving all
    /// other variables symbolic.
    pub fn subst(&self, map: &BTreeMap<VarId, RationalExpr>) -> Result<RationalExpr> {
        let num = subst_poly_map(&self.num, map);
        let den = subst_poly_map(&self.den, map);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        num.div(&den)
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

/// Substitutes into a polynomial, producing a rational expression.
pub fn subst_poly_map(p: &MultiPoly, map: &BTreeMap<VarId, RationalExpr>) -> RationalExpr {
    let mut out = RationalExpr::zero();
    for (m, c) in p.terms() {
        let mut kept = MultiPoly::constant(c.clone());
        let mut replaced = RationalExpr::one();
        for (&v, &e) in m.iter() {
            match map.get(&v) {
                Some(r) => replaced = replaced.mul(&r.pow(e)),
                None => {
                    for _ in 0..e {
                        kept = kept.mul_var(v);
                    }
                }
            }
        }
        out = out.add(&RationalExpr::from_poly(kept).mul(&replaced));
    }
    out
}

impl PartialEq for RationalExpr {
    /// Cross-multiplication equality: a/b = c/d iff ad - cb = 0.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalExpr {}

impl From<MultiPoly> for RationalExpr {
    fn from(p: MultiPoly) -> Self {
        RationalExpr::from_poly(p)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den_simple = self.den.num_terms() == 1
            && self.den.leading().map(|(m, c)| c.is_one() && m.iter().count() == 1).unwrap_or(false);
        if den_simple {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}
