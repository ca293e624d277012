//! Text, JSON and LaTeX emission for bases, expressions and reports. Text
//! output is the canonical golden-file form; LaTeX keeps the determinant
//! structure visible as bordered matrices instead of expanding it.

use num::One;
use serde_json::{json, Value};

use crate::algebra::AlgebraKind;
use crate::closed_form::InvariantBasis;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::BigRational;
use crate::ratexpr::RationalExpr;
use crate::vars::{VarId, VarKind};
use crate::verifier::{CriterionReport, RankCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "latex" => Some(Format::Latex),
            _ => None,
        }
    }
}

fn latex_index(row: u32, col: u32) -> String {
    if row < 10 && col < 10 {
        format!("{}{}", row, col)
    } else {
        format!("{},{}", row, col)
    }
}

pub fn latex_var(v: VarId) -> String {
    match v.kind {
        VarKind::X => format!("x_{{{}}}", latex_index(v.row, v.col)),
        VarKind::B => format!("b_{{{}}}", latex_index(v.row, v.col)),
        VarKind::Bhat => format!("\\hat b_{{{}}}", latex_index(v.row, v.col)),
        VarKind::Fstar => format!("f_{{{}}}", v.row),
    }
}

fn latex_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn latex_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (t, (mono, coeff)) in p.terms_desc().enumerate() {
        let vars: Vec<String> = mono
            .iter()
            .map(|(&v, &e)| {
                if e == 1 {
                    latex_var(v)
                } else {
                    format!("{}^{{{}}}", latex_var(v), e)
                }
            })
            .collect();
        let mag_vars = vars.join(" ");
        let abs = num::abs(coeff.clone());
        let mag = if mono.is_one() {
            latex_coeff(&abs)
        } else if abs.is_one() {
            mag_vars
        } else {
            format!("{} {}", latex_coeff(&abs), mag_vars)
        };
        let neg = num::Signed::is_negative(coeff);
        if t == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&mag);
    }
    out
}

pub fn latex_ratexpr(f: &RationalExpr) -> String {
    if f.is_polynomial() {
        latex_poly(f.num())
    } else {
        format!("\\frac{{{}}}{{{}}}", latex_poly(f.num()), latex_poly(f.den()))
    }
}

/// k-by-k corner block |X^{kappa,n}_{1,k}| as a vmatrix.
fn latex_corner_minor(n: u32, k: u32) -> String {
    let kap = n - k + 1;
    let rows: Vec<String> = (kap..=n)
        .map(|i| {
            (1..=k)
                .map(|j| latex_var(VarId::x(i, j)))
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!("\\begin{{vmatrix}} {} \\end{{vmatrix}}", rows.join(" \\\\ "))
}

/// Bordered (k+1)-by-(k+1) matrix with top row (x_{j,1..k}, corner) over the
/// block rows kappa..n, as a vmatrix.
fn latex_bordered(n: u32, k: u32, j: u32, corner: &str) -> String {
    let kap = n - k + 1;
    let mut rows = Vec::new();
    let top: Vec<String> = (1..=k)
        .map(|c| latex_var(VarId::x(j, c)))
        .chain(std::iter::once(corner.to_string()))
        .collect();
    rows.push(top.join(" & "));
    for i in kap..=n {
        let row: Vec<String> = (1..=k)
            .map(|c| latex_var(VarId::x(i, c)))
            .chain(std::iter::once(latex_var(VarId::x(i, j))))
            .collect();
        rows.push(row.join(" & "));
    }
    format!("\\begin{{vmatrix}} {} \\end{{vmatrix}}", rows.join(" \\\\ "))
}

fn latex_trace(n: u32) -> String {
    (1..=n)
        .map(|i| latex_var(VarId::x(i, i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Basis elements with the determinant structure left intact, one line each.
pub fn latex_basis(kind: AlgebraKind, n: u32) -> Result<Vec<String>> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let mut out = Vec::new();
    match kind {
        AlgebraKind::T0 => {
            for k in 1..=n / 2 {
                out.push(latex_corner_minor(n, k));
            }
        }
        AlgebraKind::T => {
            for k in 0..=(n - 1) / 2 {
                if k == 0 {
                    out.push(latex_trace(n));
                    continue;
                }
                let kap = n - k + 1;
                let terms: Vec<String> = ((k + 1)..=(kap - 1))
                    .map(|j| latex_bordered(n, k, j, &latex_var(VarId::x(j, j))))
                    .collect();
                out.push(format!(
                    "\\frac{{1}}{{{}}} \\left( {} \\right)",
                    latex_corner_minor(n, k),
                    terms.join(" + ")
                ));
            }
        }
        AlgebraKind::St => {
            for k in 1..=(n - 1) / 2 {
                let terms: Vec<String> = ((k + 1)..=(n - k))
                    .map(|j| latex_bordered(n, k, j, "0"))
                    .collect();
                let sign = if k % 2 == 0 { "-" } else { "" };
                out.push(format!(
                    "{}\\frac{{1}}{{{}}} \\left( {} \\right) + f_{{{}}} - f_{{{}}}",
                    sign,
                    latex_corner_minor(n, k),
                    terms.join(" + "),
                    k,
                    n - k
                ));
            }
        }
    }
    Ok(out)
}

pub fn basis_text(basis: &InvariantBasis) -> String {
    basis
        .elements
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn basis_json(basis: &InvariantBasis) -> Value {
    json!({
        "kind": basis.kind.as_str(),
        "n": basis.n,
        "count": basis.elements.len(),
        "elements": basis.elements.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
    })
}

pub fn verify_json(
    kind: AlgebraKind,
    n: u32,
    reports: &[CriterionReport],
    cert: &RankCertificate,
) -> Value {
    json!({
        "kind": kind.as_str(),
        "n": n,
        "pass": reports.iter().all(|r| r.pass),
        "elements": reports
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({
                    "index": i + 1,
                    "candidate": r.candidate.to_string(),
                    "pass": r.pass,
                    "nonzero_residuals": r.residuals.iter().filter(|x| !x.is_zero()).count(),
                })
            })
            .collect::<Vec<_>>(),
        "certificate": {
            "dim": cert.dim,
            "coadjoint_rank": cert.coadjoint_rank,
            "expected_count": cert.expected_count,
            "jacobian_rank": cert.jacobian_rank,
            "basis_size": cert.basis_size,
        },
    })
}
