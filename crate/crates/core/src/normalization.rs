//! Moving-frame normalization of the lifted invariants.
//!
//! The pivotal identity B·X = I·B, read entrywise at the significant
//! positions, is linear in the group parameters once the entries of I are
//! pinned to constants.  Pinning follows two fixed patterns:
//!
//! * strict kind: every significant entry is zeroed except the anti-diagonal
//!   positions (n-k+1, k), k <= floor(n/2), whose values become the
//!   invariants;
//! * full kind: the sub-diagonal anti-diagonal entries are set to 1, the
//!   leading diagonal entries I_kk (k <= ceil(n/2)) stay free and become the
//!   invariants, and everything else significant is zeroed.
//!
//! The resulting equations split into small linear subsystems S1..S4 per
//! anti-diagonal index k, solved in order by Cramer's rule over the rational
//! function field.  If the solve ever left equations in x's alone the chosen
//! cross-section would be invalid; that condition is checked and reported.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};

use crate::algebra::{expected_invariant_count, AlgebraKind};
use crate::error::{Error, Result};
use crate::lifted::{lifted_invariant, x_minor, LiftedInvariantMatrix};
use crate::matrix::PolyMatrix;
use crate::poly::MultiPoly;
use crate::ratexpr::{subst_poly_map, RationalExpr};
use crate::rational::{int, BigRational};
use crate::vars::{VarId, VarKind};

/// Placeholder symbol standing for the not-yet-known value of I_ij.
/// These never leak into results; they are solved away with the b's.
fn placeholder(i: u32, j: u32) -> VarId {
    VarId::bhat(i, j)
}

#[derive(Debug, Clone)]
pub struct NormalizationPlan {
    pub kind: AlgebraKind,
    pub n: u32,
    /// (row, col, constant): pinned values of I, constants are 0 or 1.
    pub constraints: Vec<(u32, u32, BigRational)>,
    /// Group parameters in the order the subsystems solve them.
    pub solve_for: Vec<VarId>,
    /// Minors assumed nonzero for the solves to be valid.
    pub genericity: Vec<MultiPoly>,
}

impl NormalizationPlan {
    pub fn constant_at(&self, i: u32, j: u32) -> Option<&BigRational> {
        self.constraints
            .iter()
            .find(|(r, c, _)| *r == i && *c == j)
            .map(|(_, _, v)| v)
    }

    /// Significant positions whose I value stays unknown (the invariants).
    pub fn exempt_positions(&self) -> Vec<(u32, u32)> {
        let n = self.n;
        match self.kind {
            AlgebraKind::T0 => (1..=n / 2).map(|k| (n - k + 1, k)).collect(),
            AlgebraKind::T => (1..=n.div_ceil(2)).map(|k| (k, k)).collect(),
            AlgebraKind::St => Vec::new(),
        }
    }
}

/// Positions of the significant entries, row-major.
fn significant_positions(kind: AlgebraKind, n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            if j < i || kind == AlgebraKind::T {
                out.push((i, j));
            }
        }
    }
    out
}

/// The constraint patterns used in the two basis derivations.
pub fn build_plan(kind: AlgebraKind, n: u32) -> Result<NormalizationPlan> {
    if kind == AlgebraKind::St {
        return Err(Error::UnsupportedKind(
            "the traceless kind takes its basis from the full triangular one",
        ));
    }
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let anti: BTreeSet<(u32, u32)> = (1..=n / 2).map(|k| (n - k + 1, k)).collect();
    let free_diag: BTreeSet<(u32, u32)> = (1..=n.div_ceil(2)).map(|k| (k, k)).collect();
    let mut constraints = Vec::new();
    for (i, j) in significant_positions(kind, n) {
        match kind {
            AlgebraKind::T0 => {
                if !anti.contains(&(i, j)) {
                    constraints.push((i, j, BigRational::zero()));
                }
            }
            AlgebraKind::T => {
                if anti.contains(&(i, j)) {
                    constraints.push((i, j, BigRational::one()));
                } else if !free_diag.contains(&(i, j)) {
                    constraints.push((i, j, BigRational::zero()));
                }
            }
            AlgebraKind::St => unreachable!(),
        }
    }
    let mut solve_for = Vec::new();
    for k in 1..=n.div_ceil(2) {
        let kappa = n - k + 1;
        match kind {
            AlgebraKind::T0 => {
                if k <= n / 2 {
                    // S1 u S2: tail of row kappa.
                    for ip in kappa + 1..=n {
                        solve_for.push(VarId::b(kappa, ip));
                    }
                    // S3: inner part of row k.
                    for j in k + 1..kappa {
                        solve_for.push(VarId::b(k, j));
                    }
                }
                if k >= 2 {
                    // S4: tail of row k.
                    for ip in kappa + 1..=n {
                        solve_for.push(VarId::b(k, ip));
                    }
                }
            }
            AlgebraKind::T => {
                if k <= n / 2 {
                    for ip in kappa + 1..=n {
                        solve_for.push(VarId::b(kappa, ip));
                    }
                    for j in k..=kappa {
                        solve_for.push(VarId::b(k, j));
                    }
                }
                if k >= 2 {
                    for ip in kappa + 1..=n {
                        solve_for.push(VarId::b(k, ip));
                    }
                }
            }
            AlgebraKind::St => unreachable!(),
        }
    }
    let mut genericity = Vec::new();
    if kind == AlgebraKind::T || n >= 3 {
        for l in 1..=n / 2 {
            genericity.push(x_minor(kind, n, n - l + 1, n, 1, l));
        }
    }
    Ok(NormalizationPlan { kind, n, constraints, solve_for, genericity })
}

/// One linear subsystem of the constraint equations.
#[derive(Debug, Clone)]
pub struct Subsystem {
    pub name: String,
    pub k: u32,
    /// Designated unknowns: b parameters and I placeholders.
    pub unknowns: Vec<VarId>,
    /// Positions (i,j) of the equations taken from B·X = I·B.
    pub positions: Vec<(u32, u32)>,
    /// The equation polynomials, written as lhs - rhs = 0.
    pub equations: Vec<MultiPoly>,
}

fn b_entry(kind: AlgebraKind, i: u32, j: u32) -> MultiPoly {
    if i == j && kind == AlgebraKind::T0 {
        MultiPoly::one()
    } else {
        MultiPoly::var(VarId::b(i, j))
    }
}

/// Equation at position (i,j): (B·X)_ij - (I·B)_ij with I filled from the
/// plan (constants where pinned, placeholders where exempt).
fn constraint_equation(plan: &NormalizationPlan, i: u32, j: u32) -> MultiPoly {
    let n = plan.n;
    let kind = plan.kind;
    let mut lhs = MultiPoly::zero();
    for ip in i..=n {
        let x_present = match kind {
            AlgebraKind::T0 => j < ip,
            _ => j <= ip,
        };
        if x_present {
            lhs = lhs.add(&b_entry(kind, i, ip).mul(&MultiPoly::var(VarId::x(ip, j))));
        }
    }
    let mut rhs = MultiPoly::zero();
    for jp in 1..=j {
        let significant = match kind {
            AlgebraKind::T0 => jp < i,
            _ => jp <= i,
        };
        if !significant {
            continue;
        }
        let i_entry = match plan.constant_at(i, jp) {
            Some(c) => MultiPoly::constant(c.clone()),
            None => MultiPoly::var(placeholder(i, jp)),
        };
        if !i_entry.is_zero() {
            rhs = rhs.add(&i_entry.mul(&b_entry(kind, jp, j)));
        }
    }
    lhs.sub(&rhs)
}

/// Rejects equations that are not affine in the designated unknowns.
fn assert_linear(name: &str, equations: &[MultiPoly], unknowns: &[VarId]) -> Result<()> {
    let set: BTreeSet<VarId> = unknowns.iter().copied().collect();
    for eq in equations {
        for (mono, _) in eq.terms() {
            let deg: u32 = mono.iter().filter(|(v, _)| set.contains(v)).map(|(_, e)| *e).sum();
            if deg > 1 {
                return Err(Error::NonlinearSystem(format!(
                    "{name}: monomial {mono} has degree {deg} in the unknowns"
                )));
            }
        }
    }
    Ok(())
}

/// Splits the significant equations into the solve schedule: per k, first
/// S1^k u S2^k (row n-k+1), then S3^k, then S4^k.  Empty subsystems are
/// dropped.  Every returned system is linear in its designated unknowns.
pub fn decompose_subsystems(
    plan: &NormalizationPlan,
    lifted: &LiftedInvariantMatrix,
) -> Result<Vec<Subsystem>> {
    assert_eq!(plan.kind, lifted.kind, "plan and lifted invariant must agree");
    assert_eq!(plan.n, lifted.n, "plan and lifted invariant must agree");
    let n = plan.n;
    let kind = plan.kind;
    let mut systems = Vec::new();
    let mut push = |name: String,
                    k: u32,
                    unknowns: Vec<VarId>,
                    positions: Vec<(u32, u32)>|
     -> Result<()> {
        if unknowns.is_empty() && positions.is_empty() {
            return Ok(());
        }
        assert_eq!(unknowns.len(), positions.len(), "{name}: system must be square");
        let equations: Vec<MultiPoly> =
            positions.iter().map(|&(i, j)| constraint_equation(plan, i, j)).collect();
        assert_linear(&name, &equations, &unknowns)?;
        systems.push(Subsystem { name, k, unknowns, positions, equations });
        Ok(())
    };

    for k in 1..=n.div_ceil(2) {
        let kappa = n - k + 1;
        match kind {
            AlgebraKind::T0 => {
                if k <= n / 2 {
                    // S1^k u S2^k: row kappa, columns 1..k; unknowns are the
                    // tail of row kappa of B plus the exempt value I_{kappa,k}.
                    let mut unknowns: Vec<VarId> =
                        (kappa + 1..=n).map(|ip| VarId::b(kappa, ip)).collect();
                    unknowns.push(placeholder(kappa, k));
                    let positions: Vec<(u32, u32)> = (1..=k).map(|j| (kappa, j)).collect();
                    let name = if k == 1 {
                        format!("S2^{k}")
                    } else {
                        format!("S1^{k} U S2^{k}")
                    };
                    push(name, k, unknowns, positions)?;
                    // S3^k: row kappa, columns strictly between k and kappa,
                    // solved for the inner entries of row k of B.
                    let unknowns: Vec<VarId> = (k + 1..kappa).map(|j| VarId::b(k, j)).collect();
                    let positions: Vec<(u32, u32)> = (k + 1..kappa).map(|j| (kappa, j)).collect();
                    push(format!("S3^{k}"), k, unknowns, positions)?;
                }
                if k >= 2 {
                    // S4^k: row k, columns 1..k-1; unknowns are the entries
                    // of row k of B past column kappa.
                    let unknowns: Vec<VarId> = (kappa + 1..=n).map(|ip| VarId::b(k, ip)).collect();
                    let positions: Vec<(u32, u32)> = (1..k).map(|j| (k, j)).collect();
                    push(format!("S4^{k}"), k, unknowns, positions)?;
                }
            }
            AlgebraKind::T => {
                if k <= n / 2 {
                    // S1^k u S2^k: all of row kappa; unknowns are the off
                    // diagonal tail of row kappa (the diagonal b stays free)
                    // plus b_kj for k <= j <= kappa.
                    let mut unknowns: Vec<VarId> =
                        (kappa + 1..=n).map(|ip| VarId::b(kappa, ip)).collect();
                    unknowns.extend((k..=kappa).map(|j| VarId::b(k, j)));
                    let positions: Vec<(u32, u32)> = (1..=kappa).map(|j| (kappa, j)).collect();
                    let name = if k == 1 {
                        format!("S2^{k}")
                    } else {
                        format!("S1^{k} U S2^{k}")
                    };
                    push(name, k, unknowns, positions)?;
                }
                if k >= 2 {
                    // S3^k: row k, columns 1..k-1; unknowns are the entries
                    // of row k of B past column kappa.
                    let unknowns: Vec<VarId> = (kappa + 1..=n).map(|ip| VarId::b(k, ip)).collect();
                    let positions: Vec<(u32, u32)> = (1..k).map(|j| (k, j)).collect();
                    push(format!("S3^{k}"), k, unknowns, positions)?;
                }
                // S4^k: the diagonal equation (k,k), defining I_kk.
                push(format!("S4^{k}"), k, vec![placeholder(k, k)], vec![(k, k)])?;
            }
            AlgebraKind::St => unreachable!("plan construction rejects this kind"),
        }
    }
    Ok(systems)
}

#[derive(Debug, Clone)]
pub struct NormalizationResult {
    pub kind: AlgebraKind,
    pub n: u32,
    /// Raw invariant values of the exempt entries, in ascending k.
    pub invariants: Vec<RationalExpr>,
    /// Solved group parameters (expressions in x's and the free parameters).
    pub solved_parameters: BTreeMap<VarId, RationalExpr>,
    /// Equations in x's alone left over by the solve; empty for a valid plan.
    pub residual_x_only: Vec<MultiPoly>,
    pub genericity: Vec<MultiPoly>,
}

/// One solved subsystem, for step-by-step reporting.
#[derive(Debug, Clone)]
pub struct SolveStep {
    pub name: String,
    pub solutions: Vec<(VarId, RationalExpr)>,
}

fn is_x_only(e: &RationalExpr) -> bool {
    e.num().vars().iter().chain(e.den().vars().iter()).all(|v| v.kind == VarKind::X)
}

/// Runs the full normalization and keeps the per-subsystem solutions.
pub fn run_normalization_with_trace(
    kind: AlgebraKind,
    n: u32,
) -> Result<(NormalizationResult, Vec<SolveStep>)> {
    let plan = build_plan(kind, n)?;
    let lifted = lifted_invariant(kind, n)?;
    let systems = decompose_subsystems(&plan, &lifted)?;
    let mut subst: BTreeMap<VarId, RationalExpr> = BTreeMap::new();
    let mut steps = Vec::new();

    for sys in &systems {
        let eqs: Vec<RationalExpr> =
            sys.equations.iter().map(|p| subst_poly_map(p, &subst)).collect();
        let zero_map: BTreeMap<VarId, RationalExpr> =
            sys.unknowns.iter().map(|&u| (u, RationalExpr::zero())).collect();
        let m = sys.unknowns.len();
        let a = PolyMatrix::from_fn(m, m, |r, c| eqs[r].partial(sys.unknowns[c]));
        let rhs: Vec<RationalExpr> = eqs
            .iter()
            .map(|e| e.subst(&zero_map).expect("denominators are unknown-free").neg())
            .collect();
        let sol = a.cramer_solve(&rhs)?;
        let mut solutions = Vec::new();
        for (u, s) in sys.unknowns.iter().zip(sol) {
            subst.insert(*u, s.clone());
            solutions.push((*u, s));
        }
        steps.push(SolveStep { name: sys.name.clone(), solutions });
    }

    // Back-substitution check: every constraint equation must vanish
    // identically in the x's and the remaining free parameters.
    let mut residual_x_only = Vec::new();
    for sys in &systems {
        for (pos, poly) in sys.positions.iter().zip(&sys.equations) {
            let value = subst_poly_map(poly, &subst);
            if !value.is_zero() {
                assert!(
                    is_x_only(&value),
                    "unsolved parameters left in equation at {pos:?}: {value}"
                );
                residual_x_only.push(value.num().clone());
            }
        }
    }
    if !residual_x_only.is_empty() {
        return Err(Error::ResidualXEquations(residual_x_only.len()));
    }

    let raw_positions: Vec<(u32, u32)> = plan.exempt_positions();
    let mut invariants = Vec::new();
    for (i, j) in raw_positions {
        let value = subst
            .get(&placeholder(i, j))
            .cloned()
            .unwrap_or_else(|| panic!("exempt entry ({i},{j}) was never solved"));
        assert!(is_x_only(&value), "invariant at ({i},{j}) still depends on parameters");
        invariants.push(value);
    }
    assert_eq!(
        invariants.len(),
        expected_invariant_count(kind, n)?,
        "invariant count must match the dimension count"
    );

    let solved_parameters: BTreeMap<VarId, RationalExpr> = subst
        .into_iter()
        .filter(|(v, _)| v.kind == VarKind::B)
        .collect();

    let result = NormalizationResult {
        kind,
        n,
        invariants,
        solved_parameters,
        residual_x_only,
        genericity: plan.genericity,
    };
    Ok((result, steps))
}

pub fn run_normalization(kind: AlgebraKind, n: u32) -> Result<NormalizationResult> {
    run_normalization_with_trace(kind, n).map(|(r, _)| r)
}

/// Combines the raw normalized values into the published basis: telescoped
/// products (strict kind, giving polynomials) or alternating sums (full
/// kind, starting from the trace).
pub fn recombine(raw: &NormalizationResult) -> Vec<RationalExpr> {
    match raw.kind {
        AlgebraKind::T0 => {
            let mut out = Vec::new();
            let mut acc = RationalExpr::one();
            for (idx, value) in raw.invariants.iter().enumerate() {
                let k = idx as u32 + 1;
                let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                acc = acc.mul(&value.scale(&sign));
                out.push(acc.clone());
            }
            out
        }
        AlgebraKind::T => {
            let mut out = Vec::new();
            let mut total = RationalExpr::zero();
            for value in &raw.invariants {
                total = total.add(value);
            }
            out.push(total.clone());
            let mut prev = total;
            let count = (raw.n as usize - 1) / 2;
            for k in 1..=count {
                let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                let current = raw.invariants[k - 1].scale(&sign).sub(&prev);
                out.push(current.clone());
                prev = current;
            }
            out
        }
        AlgebraKind::St => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifted::x_minor;
    use crate::poly::MultiPoly;
    use crate::sample;
    use crate::vars::VarId;

    fn x(i: u32, j: u32) -> MultiPoly {
        MultiPoly::var(VarId::x(i, j))
    }

    #[test]
    fn strict_plan_examples() {
        let plan = build_plan(AlgebraKind::T0, 4).unwrap();
        let zeroed: Vec<(u32, u32)> =
            plan.constraints.iter().map(|(i, j, _)| (*i, *j)).collect();
        assert_eq!(zeroed, vec![(2, 1), (3, 1), (4, 2), (4, 3)]);
        assert!(plan.constraints.iter().all(|(_, _, c)| c.is_zero()));
        assert_eq!(plan.exempt_positions(), vec![(4, 1), (3, 2)]);

        let plan = build_plan(AlgebraKind::T0, 2).unwrap();
        assert!(plan.constraints.is_empty());
        assert!(plan.genericity.is_empty());
    }

    #[test]
    fn full_plan_small() {
        let plan = build_plan(AlgebraKind::T, 2).unwrap();
        // Anti-diagonal pinned to 1, trailing diagonal zeroed, I_11 free.
        assert_eq!(plan.constant_at(2, 1), Some(&int(1)));
        assert_eq!(plan.constant_at(2, 2), Some(&int(0)));
        assert_eq!(plan.constant_at(1, 1), None);
        assert_eq!(plan.exempt_positions(), vec![(1, 1)]);

        let plan = build_plan(AlgebraKind::T, 5).unwrap();
        assert_eq!(plan.constant_at(5, 1), Some(&int(1)));
        assert_eq!(plan.constant_at(4, 2), Some(&int(1)));
        assert_eq!(plan.constant_at(4, 4), Some(&int(0)));
        assert_eq!(plan.constant_at(5, 5), Some(&int(0)));
        assert_eq!(plan.exempt_positions(), vec![(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn traceless_kind_is_rejected() {
        assert!(matches!(
            build_plan(AlgebraKind::St, 3).unwrap_err(),
            Error::UnsupportedKind(_)
        ));
    }

    #[test]
    fn decompose_smallest_strict() {
        let plan = build_plan(AlgebraKind::T0, 2).unwrap();
        let lifted = lifted_invariant(AlgebraKind::T0, 2).unwrap();
        let systems = decompose_subsystems(&plan, &lifted).unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].name, "S2^1");
        assert_eq!(systems[0].unknowns, vec![placeholder(2, 1)]);
        let expected = x(2, 1).sub(&MultiPoly::var(placeholder(2, 1)));
        assert_eq!(systems[0].equations[0], expected);
    }

    #[test]
    fn decompose_smallest_full() {
        let plan = build_plan(AlgebraKind::T, 2).unwrap();
        let lifted = lifted_invariant(AlgebraKind::T, 2).unwrap();
        let systems = decompose_subsystems(&plan, &lifted).unwrap();
        // S2^1 covers row 2, then S4^1 defines I_11.
        assert_eq!(systems.len(), 2);
        assert_eq!(systems[0].name, "S2^1");
        assert_eq!(systems[0].unknowns, vec![VarId::b(1, 1), VarId::b(1, 2)]);
        // Equation at (2,1): b_22 x_21 - b_11 = 0.
        let expected = MultiPoly::var(VarId::b(2, 2)).mul(&x(2, 1)).sub(&MultiPoly::var(VarId::b(1, 1)));
        assert_eq!(systems[0].equations[0], expected);
        assert_eq!(systems[1].name, "S4^1");
        assert_eq!(systems[1].unknowns, vec![placeholder(1, 1)]);
    }

    #[test]
    fn decompose_strict_four_by_four() {
        let plan = build_plan(AlgebraKind::T0, 4).unwrap();
        let lifted = lifted_invariant(AlgebraKind::T0, 4).unwrap();
        let systems = decompose_subsystems(&plan, &lifted).unwrap();
        let combined = systems.iter().find(|s| s.name == "S1^2 U S2^2").unwrap();
        assert_eq!(combined.unknowns, vec![VarId::b(3, 4), placeholder(3, 2)]);
        assert_eq!(combined.positions, vec![(3, 1), (3, 2)]);
    }

    #[test]
    fn nonlinearity_is_detected() {
        let eq = MultiPoly::var(VarId::b(1, 2)).mul(&MultiPoly::var(placeholder(2, 1)));
        let err =
            assert_linear("bogus", &[eq], &[VarId::b(1, 2), placeholder(2, 1)]).unwrap_err();
        assert!(matches!(err, Error::NonlinearSystem(_)));
    }

    #[test]
    fn strict_raw_invariants_match_the_minor_ratios() {
        for n in 2..=5u32 {
            let result = run_normalization(AlgebraKind::T0, n).unwrap();
            assert!(result.residual_x_only.is_empty());
            for (idx, value) in result.invariants.iter().enumerate() {
                let k = idx as u32 + 1;
                let kappa = n - k + 1;
                let num = x_minor(AlgebraKind::T0, n, kappa, n, 1, k);
                let den = x_minor(AlgebraKind::T0, n, kappa + 1, n, 1, k - 1);
                let sign = if k % 2 == 1 { int(1) } else { int(-1) };
                let expected = RationalExpr::new(num.scale(&sign), den);
                assert_eq!(value, &expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn strict_examples_frozen() {
        let result = run_normalization(AlgebraKind::T0, 4).unwrap();
        assert_eq!(result.invariants.len(), 2);
        assert_eq!(result.invariants[0], RationalExpr::from_poly(x(4, 1)));
        let det = x(3, 1).mul(&x(4, 2)).sub(&x(3, 2).mul(&x(4, 1)));
        let expected = RationalExpr::new(det.neg(), x(4, 1));
        assert_eq!(result.invariants[1], expected);

        let recombined = recombine(&result);
        assert_eq!(recombined[0], RationalExpr::from_poly(x(4, 1)));
        assert_eq!(recombined[1], RationalExpr::from_poly(det));
        assert!(recombined[1].is_polynomial());
    }

    #[test]
    fn full_kind_smallest_case() {
        let result = run_normalization(AlgebraKind::T, 2).unwrap();
        assert_eq!(result.invariants.len(), 1);
        let expected = RationalExpr::from_poly(x(1, 1).add(&x(2, 2)));
        assert_eq!(result.invariants[0], expected);
        let recombined = recombine(&result);
        assert_eq!(recombined, vec![expected]);
    }

    #[test]
    fn full_kind_three_by_three() {
        let result = run_normalization(AlgebraKind::T, 3).unwrap();
        assert_eq!(result.invariants.len(), 2);
        let trace = x(1, 1).add(&x(2, 2)).add(&x(3, 3));
        let j1 = RationalExpr::new(
            x(2, 1).mul(&x(3, 2)).sub(&x(2, 2).mul(&x(3, 1))),
            x(3, 1),
        );
        // Raw values: I_11 = J_1 + J_0, I_22 = -J_1.
        let j0 = RationalExpr::from_poly(trace);
        assert_eq!(result.invariants[0], j0.add(&j1));
        assert_eq!(result.invariants[1], j1.neg());

        let recombined = recombine(&result);
        assert_eq!(recombined.len(), 2);
        assert_eq!(recombined[0], j0);
        assert_eq!(recombined[1], j1);
    }

    #[test]
    fn solved_parameters_satisfy_the_pinned_entries() {
        // Substitute the solved b's into the symbolic I and compare with the
        // plan: pinned entries give their constants, exempt entries give the
        // raw invariants, identically in the remaining free parameters.
        for (kind, n) in [
            (AlgebraKind::T0, 4),
            (AlgebraKind::T0, 5),
            (AlgebraKind::T, 3),
            (AlgebraKind::T, 4),
        ] {
            let plan = build_plan(kind, n).unwrap();
            let lifted = lifted_invariant(kind, n).unwrap();
            let result = run_normalization(kind, n).unwrap();
            for (i, j, c) in &plan.constraints {
                let entry = lifted.entry(*i, *j).subst(&result.solved_parameters).unwrap();
                assert_eq!(entry, RationalExpr::constant(c.clone()), "{kind} n={n} ({i},{j})");
            }
            for (idx, (i, j)) in plan.exempt_positions().into_iter().enumerate() {
                let entry = lifted.entry(i, j).subst(&result.solved_parameters).unwrap();
                assert_eq!(entry, result.invariants[idx], "{kind} n={n} exempt ({i},{j})");
            }
        }
    }

    #[test]
    fn corner_parameter_is_never_solved_and_never_used() {
        // The (1,n) parameter of the unipotent group is inessential: it is
        // not among the solved parameters and no invariant mentions it.
        for n in 2..=5u32 {
            let result = run_normalization(AlgebraKind::T0, n).unwrap();
            let corner = VarId::b(1, n);
            assert!(!result.solved_parameters.contains_key(&corner));
            for inv in &result.invariants {
                assert!(!inv.num().contains_var(corner));
                assert!(!inv.den().contains_var(corner));
            }
        }
    }

    #[test]
    fn counts_and_residuals_up_to_six() {
        for kind in [AlgebraKind::T0, AlgebraKind::T] {
            for n in 2..=6u32 {
                let result = run_normalization(kind, n).unwrap();
                assert!(result.residual_x_only.is_empty(), "{kind} n={n}");
                assert_eq!(
                    result.invariants.len(),
                    expected_invariant_count(kind, n).unwrap(),
                    "{kind} n={n}"
                );
                for inv in &result.invariants {
                    assert!(is_x_only(inv), "{kind} n={n}");
                }
            }
        }
    }

    #[test]
    fn genericity_minors_hold_at_the_default_point() {
        let mut rng = sample::rng_from_seed(sample::DEFAULT_SEED);
        for kind in [AlgebraKind::T0, AlgebraKind::T] {
            for n in 2..=6u32 {
                let plan = build_plan(kind, n).unwrap();
                for minor in &plan.genericity {
                    let point = sample::random_point(&mut rng, &minor.vars());
                    let v = minor.eval(&point).unwrap();
                    assert!(!v.is_zero(), "{kind} n={n}: minor vanished at sample point");
                }
            }
        }
    }

    #[test]
    fn solve_order_matches_the_trace() {
        let (result, steps) = run_normalization_with_trace(AlgebraKind::T0, 4).unwrap();
        let plan = build_plan(AlgebraKind::T0, 4).unwrap();
        let solved_in_order: Vec<VarId> = steps
            .iter()
            .flat_map(|s| s.solutions.iter().map(|(v, _)| *v))
            .filter(|v| v.kind == VarKind::B)
            .collect();
        assert_eq!(solved_in_order, plan.solve_for);
        assert_eq!(result.solved_parameters.len(), plan.solve_for.len());
    }
}
