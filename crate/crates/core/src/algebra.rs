//! The three triangular matrix Lie algebras and their structure constants.
//!
//! * t0(n): strictly upper triangular matrices, basis e_ij with i < j.
//! * t(n): upper triangular matrices, basis e_ij with i <= j.
//! * st(n): traceless upper triangular matrices, basis e_ij (i < j) together
//!   with the traceless diagonal elements
//!   f_k = ((n-k)/n) (e_11 + ... + e_kk) - (k/n) (e_k+1,k+1 + ... + e_nn).
//!
//! Structure constants are computed from honest sparse matrix commutators
//! and then decomposed over the chosen basis, so the Jacobi identity holds by
//! construction and the tests can verify the advertised closed forms
//! independently.

use std::collections::BTreeMap;

use num::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{rational_kernel, rational_rank};
use crate::rational::{rat, BigRational};
use crate::sample;
use crate::vars::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    T0,
    T,
    St,
}

impl AlgebraKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgebraKind::T0 => "t0",
            AlgebraKind::T => "t",
            AlgebraKind::St => "st",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "t0" => Some(AlgebraKind::T0),
            "t" => Some(AlgebraKind::T),
            "st" => Some(AlgebraKind::St),
            _ => None,
        }
    }
}

impl std::fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    E,
    F,
}

/// A named basis element: E_ij, or F_k (stored with i = j = k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub family: Family,
    pub i: u32,
    pub j: u32,
}

impl BasisLabel {
    pub fn e(i: u32, j: u32) -> Self {
        BasisLabel { family: Family::E, i, j }
    }

    pub fn f(k: u32) -> Self {
        BasisLabel { family: Family::F, i: k, j: k }
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            Family::E => {
                if self.i < 10 && self.j < 10 {
                    write!(f, "e_{}{}", self.i, self.j)
                } else {
                    write!(f, "e_{}_{}", self.i, self.j)
                }
            }
            Family::F => write!(f, "f_{}", self.i),
        }
    }
}

/// Sparse matrix form of a basis element, used while building brackets.
type SparseMat = BTreeMap<(u32, u32), BigRational>;

#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
    pub n: u32,
    pub basis: Vec<BasisLabel>,
    index: BTreeMap<BasisLabel, usize>,
    /// (a, b) -> nonzero coefficients of [e_a, e_b]; both orders stored.
    structure: BTreeMap<(usize, usize), Vec<(usize, BigRational)>>,
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Coefficients of [basis_a, basis_b]; empty when the bracket vanishes.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, BigRational)] {
        self.structure.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All stored nonzero brackets with a < b, in basis order.
    pub fn brackets_upper(&self) -> impl Iterator<Item = (usize, usize, &Vec<(usize, BigRational)>)> {
        self.structure
            .iter()
            .filter(|((a, b), _)| a < b)
            .map(|(&(a, b), v)| (a, b, v))
    }

    /// The coordinate on the dual space paired with basis element `idx`.
    /// Indices are reversed for the E family: the coordinate dual to e_ij is
    /// x_ji, making the dual coordinate matrix lower triangular.
    pub fn dual_coordinate(&self, idx: usize) -> VarId {
        let label = self.basis[idx];
        match label.family {
            Family::E => VarId::x(label.j, label.i),
            Family::F => VarId::fstar(label.i),
        }
    }

    /// Basis index whose dual coordinate is `v`, if any.
    pub fn index_of_dual(&self, v: VarId) -> Option<usize> {
        (0..self.dim()).find(|&idx| self.dual_coordinate(idx) == v)
    }

    pub fn to_json(&self) -> Value {
        let brackets: Vec<Value> = self
            .brackets_upper()
            .map(|(a, b, res)| {
                let result: Vec<Value> = res
                    .iter()
                    .map(|(c, coeff)| {
                        json!({
                            "c": self.basis[*c].to_string(),
                            "coeff": {"num": coeff.numer().to_string(), "den": coeff.denom().to_string()},
                        })
                    })
                    .collect();
                json!({
                    "a": self.basis[a].to_string(),
                    "b": self.basis[b].to_string(),
                    "result": result,
                })
            })
            .collect();
        json!({
            "kind": self.kind.as_str(),
            "n": self.n,
            "dim": self.dim(),
            "brackets": brackets,
        })
    }
}

fn basis_labels(kind: AlgebraKind, n: u32) -> Vec<BasisLabel> {
    let mut basis = Vec::new();
    let start_diag = match kind {
        AlgebraKind::T => 0,
        AlgebraKind::T0 | AlgebraKind::St => 1,
    };
    for d in start_diag..n {
        for i in 1..=(n - d) {
            basis.push(BasisLabel::e(i, i + d));
        }
    }
    if kind == AlgebraKind::St {
        for k in 1..n {
            basis.push(BasisLabel::f(k));
        }
    }
    basis
}

fn label_matrix(label: BasisLabel, n: u32) -> SparseMat {
    let mut m = SparseMat::new();
    match label.family {
        Family::E => {
            m.insert((label.i, label.j), rat(1, 1));
        }
        Family::F => {
            let k = label.i;
            for i in 1..=n {
                let c = if i <= k {
                    rat((n - k) as i64, n as i64)
                } else {
                    rat(-(k as i64), n as i64)
                };
                m.insert((i, i), c);
            }
        }
    }
    m
}

fn sparse_mul(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = SparseMat::new();
    for (&(i, k), ca) in a {
        for (&(k2, j), cb) in b {
            if k != k2 {
                continue;
            }
            let e = out.entry((i, j)).or_insert_with(BigRational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sparse_commutator(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = sparse_mul(a, b);
    for ((i, j), c) in sparse_mul(b, a) {
        let e = out.entry((i, j)).or_insert_with(BigRational::zero);
        *e -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Writes a commutator matrix in the coordinates of the chosen basis.
fn decompose(kind: AlgebraKind, n: u32, m: &SparseMat) -> Vec<(BasisLabel, BigRational)> {
    let mut coords = Vec::new();
    match kind {
        AlgebraKind::T0 | AlgebraKind::T => {
            for (&(i, j), c) in m {
                let ok = if kind == AlgebraKind::T0 { i < j } else { i <= j };
                assert!(ok, "commutator left the algebra: entry at ({i},{j})");
                coords.push((BasisLabel::e(i, j), c.clone()));
            }
        }
        AlgebraKind::St => {
            let mut diag = vec![BigRational::zero(); n as usize + 2];
            for (&(i, j), c) in m {
                if i == j {
                    diag[i as usize] = c.clone();
                } else {
                    assert!(i < j, "commutator left the algebra: entry at ({i},{j})");
                    coords.push((BasisLabel::e(i, j), c.clone()));
                }
            }
            let trace: BigRational = diag.iter().sum();
            assert!(trace.is_zero(), "commutator acquired a trace");
            // diag = sum a_k f_k has the closed inversion a_k = d_k - d_{k+1}.
            for k in 1..n {
                let a = &diag[k as usize] - &diag[k as usize + 1];
                if !a.is_zero() {
                    coords.push((BasisLabel::f(k), a));
                }
            }
        }
    }
    coords
}

/// Builds the basis and the full sparse structure-constant tensor.
pub fn build_algebra(kind: AlgebraKind, n: u32) -> Result<AlgebraSpec> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let basis = basis_labels(kind, n);
    let index: BTreeMap<BasisLabel, usize> =
        basis.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mats: Vec<SparseMat> = basis.iter().map(|&l| label_matrix(l, n)).collect();
    let mut structure = BTreeMap::new();
    for a in 0..basis.len() {
        for b in (a + 1)..basis.len() {
            let comm = sparse_commutator(&mats[a], &mats[b]);
            if comm.is_empty() {
                continue;
            }
            let coords = decompose(kind, n, &comm);
            let fwd: Vec<(usize, BigRational)> = coords
                .iter()
                .map(|(l, c)| (index[l], c.clone()))
                .collect();
            let rev: Vec<(usize, BigRational)> =
                fwd.iter().map(|(k, c)| (*k, -c.clone())).collect();
            structure.insert((a, b), fwd);
            structure.insert((b, a), rev);
        }
    }
    Ok(AlgebraSpec { kind, n, basis, index, structure })
}

/// Exact basis of the center: all x with [x, e_b] = 0 for every b.
pub fn center(alg: &AlgebraSpec) -> Vec<Vec<BigRational>> {
    let dim = alg.dim();
    let mut rows = Vec::new();
    for b in 0..dim {
        for c in 0..dim {
            let mut row = vec![BigRational::zero(); dim];
            let mut nonzero = false;
            for a in 0..dim {
                for (k, coeff) in alg.bracket(a, b) {
                    if *k == c {
                        row[a] = coeff.clone();
                        if !row[a].is_zero() {
                            nonzero = true;
                        }
                    }
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        // Abelian algebra: everything is central.
        return rational_kernel(vec![vec![BigRational::zero(); dim]], dim);
    }
    rational_kernel(rows, dim)
}

/// Maximum over sampled points of rank of M_ij = sum_k c_ij^k x_k.
pub fn coadjoint_rank(alg: &AlgebraSpec, samples: u32, seed: u64) -> usize {
    assert!(samples >= 1, "at least one sample required");
    let dim = alg.dim();
    let mut rng = sample::rng_from_seed(seed);
    let mut best = 0;
    for _ in 0..samples {
        let point: Vec<BigRational> = (0..dim).map(|_| sample::random_rational(&mut rng)).collect();
        let mut m = vec![vec![BigRational::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = BigRational::zero();
                for (k, coeff) in alg.bracket(i, j) {
                    acc += coeff * &point[*k];
                }
                m[i][j] = acc;
            }
        }
        best = best.max(rational_rank(m));
    }
    best
}

/// Number of functionally independent invariants of the coadjoint action.
pub fn expected_invariant_count(kind: AlgebraKind, n: u32) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let n = n as usize;
    Ok(match kind {
        AlgebraKind::T0 => n / 2,
        AlgebraKind::T => (n - 1) / 2 + 1,
        AlgebraKind::St => (n - 1) / 2,
    })
}

/// Checks antisymmetry and the Jacobi identity for every index triple.
/// Returns the first violated triple, if any.
pub fn jacobi_violation(alg: &AlgebraSpec) -> Option<(usize, usize, usize)> {
    let dim = alg.dim();
    let mut dense = vec![vec![vec![BigRational::zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            for (k, c) in alg.bracket(a, b) {
                dense[a][b][*k] = c.clone();
            }
        }
    }
    for a in 0..dim {
        for b in 0..dim {
            for k in 0..dim {
                if dense[a][b][k] != -dense[b][a][k].clone() {
                    return Some((a, b, k));
                }
            }
        }
    }
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                for m in 0..dim {
                    let mut acc = BigRational::zero();
                    for k in 0..dim {
                        acc += &dense[a][b][k] * &dense[k][c][m];
                        acc += &dense[b][c][k] * &dense[k][a][m];
                        acc += &dense[c][a][k] * &dense[k][b][m];
                    }
                    if !acc.is_zero() {
                        return Some((a, b, c));
                    }
                }
            }
        }
    }
    None
}
