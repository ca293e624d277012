//! Lifted invariants: the symbolic matrix I = B·X·B⁻¹.
//!
//! B is a generic group element (unipotent for the strictly triangular
//! algebra, invertible triangular otherwise) with symbolic entries b_ij, and
//! X is the matrix of dual coordinates, which is lower triangular because the
//! coordinate dual to e_ij is x_ji.  The entries of I below (or on, for the
//! t(n) case) the diagonal are a complete set of lifted invariants of the
//! coadjoint action; normalization later turns them into honest invariants.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::algebra::AlgebraKind;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::MultiPoly;
use crate::ratexpr::RationalExpr;
use crate::rational::BigRational;
use crate::vars::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Upper triangular, diagonal fixed to 1.
    Unipotent,
    /// Upper triangular with symbolic, invertible diagonal.
    Triangular,
}

impl GroupKind {
    pub fn for_algebra(kind: AlgebraKind) -> Result<Self> {
        match kind {
            AlgebraKind::T0 => Ok(GroupKind::Unipotent),
            AlgebraKind::T => Ok(GroupKind::Triangular),
            AlgebraKind::St => Err(Error::UnsupportedKind(
                "lifted invariants are built for t0 and t; st reuses the t construction",
            )),
        }
    }
}

/// A generic group element with symbolic entries.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub n: u32,
    pub kind: GroupKind,
    pub entries: PolyMatrix,
}

impl GroupElement {
    pub fn generic(kind: GroupKind, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        let entries = PolyMatrix::from_fn(n as usize, n as usize, |r, c| {
            let (i, j) = (r as u32 + 1, c as u32 + 1);
            if i == j {
                match kind {
                    GroupKind::Unipotent => RationalExpr::one(),
                    GroupKind::Triangular => RationalExpr::var(VarId::b(i, j)),
                }
            } else if i < j {
                RationalExpr::var(VarId::b(i, j))
            } else {
                RationalExpr::zero()
            }
        });
        Ok(GroupElement { n, kind, entries })
    }
}

/// Inverse of an upper triangular group element by back-substitution,
/// column by column.  Entries are polynomial for unipotent elements and
/// rational with monomial denominators (products of diagonal b_ii) otherwise.
pub fn symbolic_inverse(g: &GroupElement) -> PolyMatrix {
    let n = g.n as usize;
    let mut inv = PolyMatrix::zero(n, n);
    for j in 0..n {
        let djj = g.entries.get(j, j);
        inv.set(j, j, RationalExpr::one().div(djj).expect("invertible diagonal"));
        for i in (0..j).rev() {
            let mut acc = RationalExpr::zero();
            for k in (i + 1)..=j {
                acc = acc.add(&g.entries.get(i, k).mul(inv.get(k, j)));
            }
            let dii = g.entries.get(i, i);
            inv.set(i, j, acc.neg().div(dii).expect("invertible diagonal"));
        }
    }
    inv
}

/// The lower triangular matrix of dual coordinates (strictly lower for t0).
pub fn x_matrix(kind: AlgebraKind, n: u32) -> PolyMatrix {
    PolyMatrix::from_fn(n as usize, n as usize, |r, c| {
        let (i, j) = (r as u32 + 1, c as u32 + 1);
        let keep = match kind {
            AlgebraKind::T0 => j < i,
            _ => j <= i,
        };
        if keep {
            RationalExpr::var(VarId::x(i, j))
        } else {
            RationalExpr::zero()
        }
    })
}

#[derive(Debug, Clone)]
pub struct LiftedInvariantMatrix {
    pub n: u32,
    pub kind: AlgebraKind,
    pub entries: PolyMatrix,
}

impl LiftedInvariantMatrix {
    /// Entry I_ij, one-based.
    pub fn entry(&self, i: u32, j: u32) -> &RationalExpr {
        self.entries.get(i as usize - 1, j as usize - 1)
    }

    /// Positions carrying coordinates of the coadjoint orbit: j < i for t0,
    /// j <= i for t, row-major order.
    pub fn significant_positions(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let keep = match self.kind {
                    AlgebraKind::T0 => j < i,
                    _ => j <= i,
                };
                if keep {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Builds I = B·X·B⁻¹ for a generic group element.
pub fn lifted_invariant(kind: AlgebraKind, n: u32) -> Result<LiftedInvariantMatrix> {
    let group_kind = GroupKind::for_algebra(kind)?;
    let b = GroupElement::generic(group_kind, n)?;
    let b_inv = symbolic_inverse(&b);
    let x = x_matrix(kind, n);
    let entries = b.entries.mul(&x).mul(&b_inv);
    Ok(LiftedInvariantMatrix { n, kind, entries })
}

/// Entry (i,j) of I written as the explicit double sum
/// sum_{i' >= i, j' <= j} b_ii' bhat_j'j x_i'j', with the inverse entries
/// bhat substituted from `inverse`.  For the unipotent case the diagonal
/// factors are 1 and the sum splits into the familiar four groups.
pub fn expanded_entry(
    kind: AlgebraKind,
    n: u32,
    i: u32,
    j: u32,
    b: &GroupElement,
    inverse: &PolyMatrix,
) -> RationalExpr {
    let mut acc = RationalExpr::zero();
    for ip in i..=n {
        for jp in 1..=j {
            let x_entry = match kind {
                AlgebraKind::T0 => jp < ip,
                _ => jp <= ip,
            };
            if !x_entry {
                continue;
            }
            let term = b
                .entries
                .get(i as usize - 1, ip as usize - 1)
                .mul(inverse.get(jp as usize - 1, j as usize - 1))
                .mul(&RationalExpr::var(VarId::x(ip, jp)));
            acc = acc.add(&term);
        }
    }
    acc
}

fn numeric_upper(kind: GroupKind, n: u32, values: &BTreeMap<VarId, BigRational>) -> Result<Vec<Vec<BigRational>>> {
    let nn = n as usize;
    let mut m = vec![vec![BigRational::zero(); nn]; nn];
    for i in 0..nn {
        for j in i..nn {
            let v = VarId::b(i as u32 + 1, j as u32 + 1);
            if i == j {
                m[i][j] = match kind {
                    GroupKind::Unipotent => BigRational::one(),
                    GroupKind::Triangular => {
                        let d = values.get(&v).cloned().unwrap_or_else(BigRational::zero);
                        if d.is_zero() {
                            return Err(Error::SingularGroupElement);
                        }
                        d
                    }
                };
            } else {
                m[i][j] = values.get(&v).cloned().unwrap_or_else(BigRational::zero);
            }
        }
    }
    Ok(m)
}

fn numeric_inverse_upper(b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = b.len();
    let mut inv = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        inv[j][j] = BigRational::one() / &b[j][j];
        for i in (0..j).rev() {
            let mut acc = BigRational::zero();
            for k in (i + 1)..=j {
                acc += &b[i][k] * &inv[k][j];
            }
            inv[i][j] = -acc / &b[i][i];
        }
    }
    inv
}

fn numeric_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let delta = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &delta;
            }
        }
    }
    out
}

/// The coadjoint action at numeric values: returns the significant entries
/// of B·X·B⁻¹ as a map on the dual coordinates.  Missing values default to
/// zero; a zero diagonal in a triangular element is rejected.
pub fn coadjoint_transform(
    kind: AlgebraKind,
    n: u32,
    b_values: &BTreeMap<VarId, BigRational>,
    x_values: &BTreeMap<VarId, BigRational>,
) -> Result<BTreeMap<VarId, BigRational>> {
    let group_kind = GroupKind::for_algebra(kind)?;
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let nn = n as usize;
    let b = numeric_upper(group_kind, n, b_values)?;
    let b_inv = numeric_inverse_upper(&b);
    let mut x = vec![vec![BigRational::zero(); nn]; nn];
    for i in 0..nn {
        for j in 0..nn {
            let lower = match kind {
                AlgebraKind::T0 => j < i,
                _ => j <= i,
            };
            if lower {
                let v = VarId::x(i as u32 + 1, j as u32 + 1);
                x[i][j] = x_values.get(&v).cloned().unwrap_or_else(BigRational::zero);
            }
        }
    }
    let image = numeric_mul(&numeric_mul(&b, &x), &b_inv);
    let mut out = BTreeMap::new();
    for i in 0..nn {
        for j in 0..nn {
            let lower = match kind {
                AlgebraKind::T0 => j < i,
                _ => j <= i,
            };
            if lower {
                out.insert(VarId::x(i as u32 + 1, j as u32 + 1), image[i][j].clone());
            }
        }
    }
    Ok(out)
}

/// Group multiplication expressed on parameter values: the b-values of the
/// matrix product left·right.
pub fn compose_group_values(
    kind: AlgebraKind,
    n: u32,
    left: &BTreeMap<VarId, BigRational>,
    right: &BTreeMap<VarId, BigRational>,
) -> Result<BTreeMap<VarId, BigRational>> {
    let group_kind = GroupKind::for_algebra(kind)?;
    let l = numeric_upper(group_kind, n, left)?;
    let r = numeric_upper(group_kind, n, right)?;
    let p = numeric_mul(&l, &r);
    let mut out = BTreeMap::new();
    for i in 0..n as usize {
        for j in i..n as usize {
            out.insert(VarId::b(i as u32 + 1, j as u32 + 1), p[i][j].clone());
        }
    }
    Ok(out)
}

/// Convenience: the polynomial det of a dual-coordinate submatrix, rows
/// r1..=r2 and columns c1..=c2 (one-based), entries x_ij for j < i (strict)
/// or j <= i.
pub fn x_submatrix(kind: AlgebraKind, n: u32, r1: u32, r2: u32, c1: u32, c2: u32) -> PolyMatrix {
    let full = x_matrix(kind, n);
    let rows: Vec<usize> = (r1..=r2).map(|r| r as usize - 1).collect();
    let cols: Vec<usize> = (c1..=c2).map(|c| c as usize - 1).collect();
    full.select(&rows, &cols)
}

/// det X^{r1,r2}_{c1,c2} as a polynomial.
pub fn x_minor(kind: AlgebraKind, n: u32, r1: u32, r2: u32, c1: u32, c2: u32) -> MultiPoly {
    if r1 > r2 || c1 > c2 {
        return MultiPoly::one();
    }
    let d = x_submatrix(kind, n, r1, r2, c1, c2).det().expect("square by construction");
    assert!(d.is_polynomial(), "minor of a polynomial matrix");
    d.num().clone()
}
