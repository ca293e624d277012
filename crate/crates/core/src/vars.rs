//! Indexed symbolic variables.
//!
//! Dual coordinates use reversed indices: the coordinate dual to the basis
//! element e_ij is written x_ji, so the coordinate matrix X of t0(n)* is
//! strictly lower triangular and that of t(n)* is lower triangular with
//! diagonal. Group parameters b_ij are upper triangular.

use std::fmt;

/// Which family a variable belongs to.
///
/// The declaration order defines the variable order: X < B < BHAT < FSTAR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// Dual coordinate x_ij (i >= j for t(n), i > j for t0(n)).
    X,
    /// Group parameter b_ij (i <= j).
    B,
    /// Entry of the inverse group element. Inverses are always computed from
    /// b's, so this kind never survives into stored expressions; it exists so
    /// the symbol space matches the formulas it mirrors.
    Bhat,
    /// Coordinate dual to the traceless diagonal generator f_k (row = col = k).
    Fstar,
}

/// One scalar variable: a kind plus a (row, col) index pair, each in 1..=n.
///
/// The derived order is lexicographic on (kind, row, col); it is the variable
/// order underlying the canonical monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub kind: VarKind,
    pub row: u32,
    pub col: u32,
}

impl VarId {
    pub fn x(row: u32, col: u32) -> Self {
        VarId { kind: VarKind::X, row, col }
    }

    pub fn b(row: u32, col: u32) -> Self {
        VarId { kind: VarKind::B, row, col }
    }

    pub fn bhat(row: u32, col: u32) -> Self {
        VarId { kind: VarKind::Bhat, row, col }
    }

    pub fn fstar(k: u32) -> Self {
        VarId { kind: VarKind::Fstar, row: k, col: k }
    }

    /// Key used in JSON monomial objects: `<kind>_<row>_<col>`.
    pub fn json_key(&self) -> String {
        let kind = match self.kind {
            VarKind::X => "x",
            VarKind::B => "b",
            VarKind::Bhat => "bhat",
            VarKind::Fstar => "fstar",
        };
        format!("{}_{}_{}", kind, self.row, self.col)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Fstar => write!(f, "f_{}", self.row),
            _ => {
                let kind = match self.kind {
                    VarKind::X => "x",
                    VarKind::B => "b",
                    VarKind::Bhat => "bhat",
                    VarKind::Fstar => unreachable!(),
                };
                // Indices up to 9 are printed packed (x_21); larger ones keep
                // a separator so the name stays unambiguous.
                if self.row < 10 && self.col < 10 {
                    write!(f, "{}_{}{}", kind, self.row, self.col)
                } else {
                    write!(f, "{}_{}_{}", kind, self.row, self.col)
                }
            }
        }
    }
}
