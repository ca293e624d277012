//! Independent certification of invariance: the infinitesimal criterion as an
//! exact symbolic zero, invariance under random group elements, and
//! functional-independence rank counting. The symbolic criterion and the
//! random-orbit oracle share no logic, so a silent bug in either one shows up
//! as a disagreement.

use std::collections::BTreeMap;

use num::Zero;
use rand::Rng;

use crate::algebra::{coadjoint_rank, AlgebraKind, AlgebraSpec};
use crate::closed_form::InvariantBasis;
use crate::error::{Error, Result};
use crate::lifted::coadjoint_transform;
use crate::matrix::jacobian_rank_at;
use crate::poly::MultiPoly;
use crate::rational::BigRational;
use crate::ratexpr::RationalExpr;
use crate::sample::{random_nonzero_rational, random_rational, rng_from_seed};
use crate::vars::VarId;

const RESAMPLE_CAP: u32 = 50;

/// Per-candidate certificate of the infinitesimal criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub algebra: AlgebraSpec,
    pub candidate: RationalExpr,
    /// One residual per generator, in basis order.
    pub residuals: Vec<RationalExpr>,
    pub pass: bool,
}

/// Rank bookkeeping behind the counting identity dim - rank = #invariants.
#[derive(Debug, Clone, Copy)]
pub struct RankCertificate {
    pub dim: usize,
    pub coadjoint_rank: usize,
    pub expected_count: usize,
    pub jacobian_rank: usize,
    pub basis_size: usize,
}

/// The coadjoint vector field of generator `i`, applied to a polynomial:
/// sum over j of (sum over k of c_ij^k x_k) dP/dx_j, all exact.
fn apply_field(alg: &AlgebraSpec, i: usize, p: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for j in 0..alg.dim() {
        let entries = alg.bracket(i, j);
        if entries.is_empty() {
            continue;
        }
        let dp = p.partial(alg.dual_coordinate(j));
        if dp.is_zero() {
            continue;
        }
        let mut coeff = MultiPoly::zero();
        for (k, c) in entries {
            coeff = coeff.add(&MultiPoly::var(alg.dual_coordinate(*k)).scale(c));
        }
        out = out.add(&coeff.mul(&dp));
    }
    out
}

/// Criterion residual of F = P/Q against generator `i`, with the quotient
/// rule carried out over rational expressions.
pub fn infinitesimal_residual(alg: &AlgebraSpec, f: &RationalExpr, i: usize) -> RationalExpr {
    let mut out = RationalExpr::zero();
    for j in 0..alg.dim() {
        let entries = alg.bracket(i, j);
        if entries.is_empty() {
            continue;
        }
        let df = f.partial(alg.dual_coordinate(j));
        if df.is_zero() {
            continue;
        }
        let mut coeff = MultiPoly::zero();
        for (k, c) in entries {
            coeff = coeff.add(&MultiPoly::var(alg.dual_coordinate(*k)).scale(c));
        }
        out = out.add(&RationalExpr::from_poly(coeff).mul(&df));
    }
    out
}

/// Denominator-cleared residual: Q L(P) - P L(Q), a pure polynomial that is
/// zero exactly when the rational residual is.
pub fn cleared_residual(alg: &AlgebraSpec, f: &RationalExpr, i: usize) -> MultiPoly {
    let lp = apply_field(alg, i, f.num());
    let lq = apply_field(alg, i, f.den());
    f.den().mul(&lp).sub(&f.num().mul(&lq))
}

/// Full criterion report for one candidate.
pub fn criterion_report(alg: &AlgebraSpec, f: &RationalExpr) -> CriterionReport {
    let mut residuals = Vec::with_capacity(alg.dim());
    let mut pass = true;
    for i in 0..alg.dim() {
        if !cleared_residual(alg, f, i).is_zero() {
            pass = false;
        }
        residuals.push(infinitesimal_residual(alg, f, i));
    }
    CriterionReport {
        algebra: alg.clone(),
        candidate: f.clone(),
        residuals,
        pass,
    }
}

fn sample_valid_point(
    rng: &mut impl Rng,
    vars: &[VarId],
    guards: &[&MultiPoly],
) -> Result<BTreeMap<VarId, BigRational>> {
    'attempt: for _ in 0..RESAMPLE_CAP {
        let mut point = BTreeMap::new();
        for &v in vars {
            point.insert(v, random_rational(rng));
        }
        for g in guards {
            if g.eval(&point)?.is_zero() {
                continue 'attempt;
            }
        }
        return Ok(point);
    }
    Err(Error::DegeneratePoint(RESAMPLE_CAP))
}

/// Certifies a basis: every element passes the symbolic criterion for every
/// generator, the Jacobian rank at a generic rational point equals the
/// element count, and that count equals dim - coadjoint rank.
pub fn verify_basis(
    alg: &AlgebraSpec,
    basis: &InvariantBasis,
) -> Result<(Vec<CriterionReport>, RankCertificate)> {
    assert_eq!(alg.kind, basis.kind, "basis kind must match the algebra");
    assert_eq!(alg.n, basis.n, "basis size must match the algebra");

    let mut reports = Vec::with_capacity(basis.elements.len());
    for (pos, f) in basis.elements.iter().enumerate() {
        let report = criterion_report(alg, f);
        if !report.pass {
            let bad = report
                .residuals
                .iter()
                .position(|r| !r.is_zero())
                .expect("failing report has a nonzero residual");
            return Err(Error::VerificationFailure(format!(
                "element {} has nonzero residual against generator {}: {}",
                pos + 1,
                alg.basis[bad],
                report.residuals[bad]
            )));
        }
        reports.push(report);
    }

    let dim = alg.dim();
    let co_rank = coadjoint_rank(alg, 5, crate::sample::DEFAULT_SEED);
    let expected = dim - co_rank;

    let vars: Vec<VarId> = (0..dim).map(|i| alg.dual_coordinate(i)).collect();
    let mut rng = rng_from_seed(crate::sample::DEFAULT_SEED);
    let guards: Vec<&MultiPoly> = basis.elements.iter().map(|f| f.den()).collect();
    let jacobian_rank = if basis.elements.is_empty() {
        0
    } else {
        loop {
            let point = sample_valid_point(&mut rng, &vars, &guards)?;
            match jacobian_rank_at(&basis.elements, &vars, &point) {
                Ok(r) => break r,
                Err(Error::DenominatorVanishes) => continue,
                Err(e) => return Err(e),
            }
        }
    };

    let cert = RankCertificate {
        dim,
        coadjoint_rank: co_rank,
        expected_count: expected,
        jacobian_rank,
        basis_size: basis.elements.len(),
    };
    if cert.basis_size != cert.expected_count {
        return Err(Error::VerificationFailure(format!(
            "basis has {} elements but dim - rank = {}",
            cert.basis_size, cert.expected_count
        )));
    }
    if cert.jacobian_rank != cert.basis_size {
        return Err(Error::VerificationFailure(format!(
            "jacobian rank {} below basis size {}",
            cert.jacobian_rank, cert.basis_size
        )));
    }
    Ok((reports, cert))
}

/// Exact invariance of F under `trials` random group elements. Points and
/// group elements are resampled (up to a cap) when they land on a zero of
/// any denominator involved.
pub fn group_invariance_check(
    kind: AlgebraKind,
    n: u32,
    f: &RationalExpr,
    trials: u32,
    seed: u64,
) -> Result<bool> {
    if kind == AlgebraKind::St {
        return Err(Error::UnsupportedKind("st has no direct group transform here"));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..trials {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > RESAMPLE_CAP {
                return Err(Error::DegeneratePoint(RESAMPLE_CAP));
            }
            let mut b_values = BTreeMap::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    b_values.insert(VarId::b(i, j), random_rational(&mut rng));
                }
                if kind == AlgebraKind::T {
                    b_values.insert(VarId::b(i, i), random_nonzero_rational(&mut rng));
                }
            }
            let mut x_values = BTreeMap::new();
            for i in 1..=n {
                for j in 1..i {
                    x_values.insert(VarId::x(i, j), random_rational(&mut rng));
                }
                if kind == AlgebraKind::T {
                    x_values.insert(VarId::x(i, i), random_rational(&mut rng));
                }
            }
            if f.den().eval(&x_values)?.is_zero() {
                continue;
            }
            let moved = coadjoint_transform(kind, n, &b_values, &x_values)?;
            if f.den().eval(&moved)?.is_zero() {
                continue;
            }
            let before = f.eval(&x_values)?;
            let after = f.eval(&moved)?;
            if before != after {
                return Ok(false);
            }
            break;
        }
    }
    Ok(true)
}

/// True iff g is functionally dependent on fs: adjoining g does not raise
/// the Jacobian rank at a generic rational point.
pub fn functional_dependence_check(
    fs: &[RationalExpr],
    g: &RationalExpr,
    vars: &[VarId],
    seed: u64,
) -> Result<bool> {
    let mut rng = rng_from_seed(seed);
    let mut all: Vec<RationalExpr> = fs.to_vec();
    all.push(g.clone());
    let guards: Vec<&MultiPoly> = all.iter().map(|f| f.den()).collect();
    loop {
        let point = sample_valid_point(&mut rng, vars, &guards)?;
        let base = match jacobian_rank_at(fs, vars, &point) {
            Ok(r) => r,
            Err(Error::DenominatorVanishes) => continue,
            Err(e) => return Err(e),
        };
        let extended = match jacobian_rank_at(&all, vars, &point) {
            Ok(r) => r,
            Err(Error::DenominatorVanishes) => continue,
            Err(e) => return Err(e),
        };
        return Ok(extended == base);
    }
}
