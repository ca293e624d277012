//! Closed-form functional bases for the coadjoint invariants of the three
//! triangular families, the bordered-determinant identities their derivation
//! rests on, and symmetrized enveloping-algebra forms of the same elements.
//!
//! Conventions: dual coordinates are reversed (`e_ij` pairs with `x_ji`), so
//! every determinant below is taken from the lower-triangular coordinate
//! matrix X. `kappa` abbreviates the conjugate index n - k + 1.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::algebra::{build_algebra, AlgebraKind, AlgebraSpec, BasisLabel};
use crate::error::{Error, Result};
use crate::lifted::{coadjoint_transform, x_minor};
use crate::matrix::PolyMatrix;
use crate::rational::{rat, BigRational};
use crate::ratexpr::RationalExpr;
use crate::uea::{word_product, UeaElement};
use crate::vars::VarId;

pub(crate) fn kappa(n: u32, k: u32) -> u32 {
    n - k + 1
}

/// Functional basis of coadjoint invariants for one algebra.
#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub kind: AlgebraKind,
    pub n: u32,
    pub elements: Vec<RationalExpr>,
}

impl InvariantBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Looks up an x-coordinate, either symbolically or at a rational point.
type Look<'a> = dyn Fn(u32, u32) -> RationalExpr + 'a;

fn sym_look(i: u32, j: u32) -> RationalExpr {
    RationalExpr::var(VarId::x(i, j))
}

fn point_look<'a>(point: &'a BTreeMap<VarId, BigRational>) -> impl Fn(u32, u32) -> RationalExpr + 'a {
    |i, j| {
        RationalExpr::constant(point.get(&VarId::x(i, j)).cloned().unwrap_or_else(BigRational::zero))
    }
}

/// Plain block X^{r1,r2}_{c1,c2} under a lookup.
fn block(look: &Look, r1: u32, r2: u32, c1: u32, c2: u32) -> PolyMatrix {
    let rows = (r2 + 1 - r1) as usize;
    let cols = (c2 + 1 - c1) as usize;
    PolyMatrix::from_fn(rows, cols, |r, c| look(r1 + r as u32, c1 + c as u32))
}

/// det of the bordered matrix
/// [[X^{top,top}_{1,c}, corner], [X^{r,n}_{1,c}, X^{r,n}_{last_col,last_col}]].
fn bordered_det(
    look: &Look,
    n: u32,
    c: u32,
    top: u32,
    r: u32,
    last_col: u32,
    corner: &RationalExpr,
) -> Result<RationalExpr> {
    let size = (n + 1 - r) as usize + 1;
    debug_assert_eq!(size, c as usize + 1, "bordered matrix must be square");
    let m = PolyMatrix::from_fn(size, size, |ri, ci| {
        let row = if ri == 0 { top } else { r + ri as u32 - 1 };
        if ci < c as usize {
            look(row, ci as u32 + 1)
        } else if ri == 0 {
            corner.clone()
        } else {
            look(row, last_col)
        }
    });
    m.det()
}

/// Strictly upper triangular family: the full minors |X^{kappa,n}_{1,k}|,
/// k = 1..floor(n/2).
pub fn t0_basis(n: u32) -> Result<InvariantBasis> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let mut elements = Vec::new();
    for k in 1..=n / 2 {
        let d = x_minor(AlgebraKind::T0, n, kappa(n, k), n, 1, k);
        elements.push(RationalExpr::from_poly(d));
    }
    Ok(InvariantBasis {
        kind: AlgebraKind::T0,
        n,
        elements,
    })
}

/// Full triangular family: element k (k = 0..floor((n-1)/2)) is the sum of
/// bordered determinants over the middle rows, divided by |X^{kappa,n}_{1,k}|.
/// The k = 0 member degenerates to the trace.
pub fn t_basis(n: u32) -> Result<InvariantBasis> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let mut elements = Vec::new();
    for k in 0..=(n - 1) / 2 {
        let kap = kappa(n, k);
        let mut num = RationalExpr::zero();
        for j in (k + 1)..=(kap - 1) {
            let corner = RationalExpr::var(VarId::x(j, j));
            num = num.add(&bordered_det(&sym_look, n, k, j, kap, j, &corner)?);
        }
        let den = RationalExpr::from_poly(x_minor(AlgebraKind::T, n, kap, n, 1, k));
        elements.push(num.div(&den)?);
    }
    Ok(InvariantBasis {
        kind: AlgebraKind::T,
        n,
        elements,
    })
}

/// Traceless triangular family: same bordered sums with the diagonal corner
/// zeroed, signed by (-1)^{k+1}, plus the dual-coordinate pair f_k - f_{n-k}.
/// Empty at n = 2.
pub fn st_basis(n: u32) -> Result<InvariantBasis> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let mut elements = Vec::new();
    for k in 1..=(n - 1) / 2 {
        let kap = kappa(n, k);
        let mut num = RationalExpr::zero();
        for j in (k + 1)..=(n - k) {
            num = num.add(&bordered_det(&sym_look, n, k, j, kap, j, &RationalExpr::zero())?);
        }
        let den = RationalExpr::from_poly(x_minor(AlgebraKind::T0, n, kap, n, 1, k));
        let sign = if k % 2 == 0 { rat(-1, 1) } else { rat(1, 1) };
        let el = num
            .div(&den)?
            .scale(&sign)
            .add(&RationalExpr::var(VarId::fstar(k)))
            .sub(&RationalExpr::var(VarId::fstar(n - k)));
        elements.push(el);
    }
    Ok(InvariantBasis {
        kind: AlgebraKind::St,
        n,
        elements,
    })
}

pub fn basis_for(kind: AlgebraKind, n: u32) -> Result<InvariantBasis> {
    match kind {
        AlgebraKind::T0 => t0_basis(n),
        AlgebraKind::T => t_basis(n),
        AlgebraKind::St => st_basis(n),
    }
}

/// row . M^{-1} . col for a square M, via Cramer solves.
fn schur_term(row: &[RationalExpr], m: &PolyMatrix, col: &[RationalExpr]) -> Result<RationalExpr> {
    let y = m.cramer_solve(col)?;
    let mut acc = RationalExpr::zero();
    for (a, b) in row.iter().zip(y.iter()) {
        acc = acc.add(&a.mul(b));
    }
    Ok(acc)
}

fn row_slice(look: &Look, i: u32, c1: u32, c2: u32) -> Vec<RationalExpr> {
    (c1..=c2).map(|c| look(i, c)).collect()
}

fn col_slice(look: &Look, r1: u32, r2: u32, j: u32) -> Vec<RationalExpr> {
    (r1..=r2).map(|r| look(r, j)).collect()
}

/// Both bordered-determinant identities behind the normalization solves, for
/// 2 <= k <= floor(n/2), checked under an arbitrary coordinate lookup. The
/// scalar `beta` may be anything; it cancels where it should.
fn lemma3_core(look: &Look, n: u32, k: u32, beta: &RationalExpr) -> Result<bool> {
    assert!(k >= 2 && k <= n / 2, "identity shapes need 2 <= k <= n/2");
    let kap = kappa(n, k);
    let m = block(look, kap + 1, n, 1, k - 1);
    let m_det = m.det()?;
    if m_det.is_zero() {
        return Err(Error::MinorVanishes);
    }
    let sign = if k % 2 == 0 { rat(-1, 1) } else { rat(1, 1) };

    // First identity: a Schur complement equals a signed bordered determinant,
    // for every row i and column j of the middle band.
    for i in k..=kap {
        for j in k..=kap {
            let row = row_slice(look, i, 1, k - 1);
            let col = col_slice(look, kap + 1, n, j);
            let lhs = beta.sub(&schur_term(&row, &m, &col)?);
            let bd = bordered_det(look, n, k - 1, i, kap + 1, j, beta)?;
            let rhs = bd.div(&m_det)?.scale(&sign);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }

    // Second identity: the product of two such complements splits into two
    // bordered determinants; beta enters both and cancels across the sum.
    let p_at = block(look, kap, n, 1, k).det()?;
    for j in (k + 1)..=(kap - 1) {
        let a = look(kap, j).sub(&schur_term(
            &row_slice(look, kap, 1, k - 1),
            &m,
            &col_slice(look, kap + 1, n, j),
        )?);
        let b = look(j, k).sub(&schur_term(
            &row_slice(look, j, 1, k - 1),
            &m,
            &col_slice(look, kap + 1, n, k),
        )?);
        let lhs = a.mul(&b);
        let big = bordered_det(look, n, k, j, kap, j, beta)?;
        let small = bordered_det(look, n, k - 1, j, kap + 1, j, beta)?;
        let rhs = big
            .div(&m_det)?
            .add(&p_at.mul(&small).div(&m_det.mul(&m_det))?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numeric check of both identities at a rational point (absent coordinates
/// read as zero). Errors with MinorVanishes when the pivot minor is singular
/// at the point.
pub fn lemma3_check(
    n: u32,
    k: u32,
    beta: &BigRational,
    point: &BTreeMap<VarId, BigRational>,
) -> Result<bool> {
    let look = point_look(point);
    lemma3_core(&look, n, k, &RationalExpr::constant(beta.clone()))
}

/// Fully symbolic check; `beta` may itself be a symbol.
pub fn lemma3_check_symbolic(n: u32, k: u32, beta: &RationalExpr) -> Result<bool> {
    lemma3_core(&sym_look, n, k, beta)
}

/// Corner-minor transport: the minor |I^{kappa,n}_{1,k}| of the transformed
/// coordinates equals |X^{kappa,n}_{1,k}| before the transform, because the
/// group factors hit it through unit-determinant corner blocks. Returns the
/// pair (transformed minor, original minor) evaluated at rational values.
pub fn note3_trick(
    n: u32,
    k: u32,
    b_values: &BTreeMap<VarId, BigRational>,
    x_values: &BTreeMap<VarId, BigRational>,
) -> Result<(BigRational, BigRational)> {
    assert!(k >= 1 && k <= n / 2);
    let kap = kappa(n, k);
    let moved = coadjoint_transform(AlgebraKind::T0, n, b_values, x_values)?;
    let det_at = |vals: &BTreeMap<VarId, BigRational>| -> Result<BigRational> {
        let look = point_look(vals);
        let d = block(&look, kap, n, 1, k).det()?;
        Ok(d.as_constant().expect("constant matrix has constant det"))
    };
    Ok((det_at(&moved)?, det_at(x_values)?))
}

/// Signed permutations of {0..size-1}; sign by inversion parity.
fn signed_perms(size: usize) -> Vec<(BigRational, Vec<usize>)> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut (0..size).collect(), &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let mut inv = 0usize;
            for a in 0..p.len() {
                for b in (a + 1)..p.len() {
                    if p[a] > p[b] {
                        inv += 1;
                    }
                }
            }
            let sign = if inv % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            (sign, p)
        })
        .collect()
}

/// A cell of a symbolic generator matrix.
#[derive(Clone, Copy)]
enum Cell {
    Zero,
    Gen(u32, u32),
}

/// Determinant of a matrix of generators, expanded over permutations. Each
/// term keeps (row, col, label) for every factor so callers can impose an
/// ordering convention.
fn det_words(m: &[Vec<Cell>]) -> Vec<(BigRational, Vec<(usize, usize, (u32, u32))>)> {
    let size = m.len();
    let mut out = Vec::new();
    'perm: for (sign, p) in signed_perms(size) {
        let mut factors = Vec::with_capacity(size);
        for (row, &col) in p.iter().enumerate() {
            match m[row][col] {
                Cell::Zero => continue 'perm,
                Cell::Gen(i, j) => factors.push((row, col, (i, j))),
            }
        }
        out.push((sign, factors));
    }
    out
}

/// Polynomial Casimir elements of the strictly upper triangular family:
/// the determinant of the corner generator block (e_ij), i = 1..k,
/// j = kappa..n, expanded in the enveloping algebra. The generators involved
/// commute pairwise, so symmetrization is the plain product.
pub fn symmetrize_t0(n: u32) -> Result<Vec<UeaElement>> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let alg = build_algebra(AlgebraKind::T0, n)?;
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        let kap = kappa(n, k);
        let m: Vec<Vec<Cell>> = (1..=k)
            .map(|i| (kap..=n).map(|j| Cell::Gen(i, j)).collect())
            .collect();
        let mut det = UeaElement::zero();
        for (sign, factors) in det_words(&m) {
            let word: Vec<usize> = factors
                .iter()
                .map(|&(_, _, (i, j))| alg.index_of(BasisLabel::e(i, j)).expect("generator"))
                .collect();
            det = det.add(&word_product(&word, &alg)?.scale(&sign));
        }
        out.push(det);
    }
    Ok(out)
}

/// Symmetrized form of one full-triangular basis element, kept as a formal
/// (ordered, unreduced) expression: numerator and denominator are lists of
/// signed generator words, `diag` a signed list of diagonal generators. The
/// element reads num/den + diag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalNcExpr {
    pub n: u32,
    pub k: u32,
    pub num: Vec<(BigRational, Vec<(u32, u32)>)>,
    pub den: Vec<(BigRational, Vec<(u32, u32)>)>,
    pub diag: Vec<(BigRational, u32)>,
}

fn words_to_uea(
    terms: &[(BigRational, Vec<(u32, u32)>)],
    alg: &AlgebraSpec,
) -> Result<UeaElement> {
    let mut out = UeaElement::zero();
    for (c, w) in terms {
        let idxs: Vec<usize> = w
            .iter()
            .map(|&(i, j)| alg.index_of(BasisLabel::e(i, j)).expect("generator"))
            .collect();
        out = out.add(&word_product(&idxs, alg)?.scale(c));
    }
    Ok(out)
}

fn render_words(terms: &[(BigRational, Vec<(u32, u32)>)]) -> String {
    let mut out = String::new();
    for (t, (coeff, word)) in terms.iter().enumerate() {
        let mags = word
            .iter()
            .map(|&(i, j)| BasisLabel::e(i, j).to_string())
            .collect::<Vec<_>>()
            .join("*");
        let abs = coeff.abs();
        let mag = if word.is_empty() {
            crate::rational::to_string(&abs)
        } else if abs.is_one() {
            mags
        } else {
            format!("{}*{}", crate::rational::to_string(&abs), mags)
        };
        if t == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&mag);
    }
    out
}

impl FormalNcExpr {
    pub fn num_uea(&self, alg: &AlgebraSpec) -> Result<UeaElement> {
        words_to_uea(&self.num, alg)
    }

    pub fn den_uea(&self, alg: &AlgebraSpec) -> Result<UeaElement> {
        words_to_uea(&self.den, alg)
    }

    pub fn diag_uea(&self, alg: &AlgebraSpec) -> Result<UeaElement> {
        let mut out = UeaElement::zero();
        for (c, j) in &self.diag {
            let idx = alg.index_of(BasisLabel::e(*j, *j)).expect("diagonal generator");
            out = out.add(&UeaElement::generator(idx).scale(c));
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.num.is_empty() {
            out.push_str(&format!(
                "({})/({})",
                render_words(&self.num),
                render_words(&self.den)
            ));
        }
        for (c, j) in &self.diag {
            let label = BasisLabel::e(*j, *j).to_string();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
                out.push_str(&label);
            } else if c.is_negative() {
                out.push_str(&format!(" - {}", label));
            } else {
                out.push_str(&format!(" + {}", label));
            }
        }
        out
    }
}

/// Symmetrized enveloping-algebra forms of the full-triangular basis,
/// k = 0..floor((n-1)/2). In every numerator word the column factor (from
/// E^{1,k}_{j,j}) is written after the row factor (from E^{j,j}_{kappa,n});
/// that fixed order is what replaces explicit symmetrization and pins the
/// sign of the diagonal correction.
pub fn symmetrized_t_basis(n: u32) -> Result<Vec<FormalNcExpr>> {
    if n < 2 {
        return Err(Error::InvalidSize(n));
    }
    let mut out = Vec::new();
    for k in 0..=(n - 1) / 2 {
        let kap = kappa(n, k);
        let ku = k as usize;

        let den: Vec<(BigRational, Vec<(u32, u32)>)> = if k == 0 {
            vec![(BigRational::one(), Vec::new())]
        } else {
            let grid: Vec<Vec<Cell>> = (1..=k)
                .map(|i| (kap..=n).map(|j| Cell::Gen(i, j)).collect())
                .collect();
            det_words(&grid)
                .into_iter()
                .map(|(sign, factors)| {
                    let mut fs = factors;
                    fs.sort_by_key(|&(row, _, _)| row);
                    (sign, fs.into_iter().map(|(_, _, l)| l).collect())
                })
                .collect()
        };

        let mut num = Vec::new();
        for j in (k + 1)..=(n - k) {
            let mut m: Vec<Vec<Cell>> = Vec::new();
            for i in 1..=k {
                let mut row = vec![Cell::Gen(i, j)];
                row.extend((kap..=n).map(|c| Cell::Gen(i, c)));
                m.push(row);
            }
            let mut last = vec![Cell::Zero];
            last.extend((kap..=n).map(|c| Cell::Gen(j, c)));
            m.push(last);
            for (sign, factors) in det_words(&m) {
                let mut fs = factors;
                // commuting block factors first, then the row factor e_{j.},
                // then the column factor e_{.j} last
                fs.sort_by_key(|&(row, col, _)| {
                    let class = if col == 0 {
                        2
                    } else if row == ku {
                        1
                    } else {
                        0
                    };
                    (class, row)
                });
                num.push((sign, fs.into_iter().map(|(_, _, l)| l).collect::<Vec<_>>()));
            }
        }
        num.sort_by(|a, b| a.1.cmp(&b.1));

        let dsign = if k % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let diag: Vec<(BigRational, u32)> =
            ((k + 1)..=(n - k)).map(|j| (dsign.clone(), j)).collect();

        out.push(FormalNcExpr {
            n,
            k,
            num,
            den,
            diag,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::expected_invariant_count;
    use crate::matrix::jacobian_rank_at;
    use crate::sample::{random_point, random_rational, rng_from_seed};
    use crate::uea::{casimir_check, sym, uea_mul};
    use crate::vars::VarKind;
    use rand::Rng;
    use std::collections::BTreeSet;

    fn x_vars_strict(n: u32) -> BTreeSet<VarId> {
        let mut s = BTreeSet::new();
        for i in 1..=n {
            for j in 1..i {
                s.insert(VarId::x(i, j));
            }
        }
        s
    }

    #[test]
    fn t0_smallest_cases_are_corner_minors() {
        assert_eq!(t0_basis(2).unwrap().elements[0].to_string(), "x_21");
        assert_eq!(t0_basis(3).unwrap().elements[0].to_string(), "x_31");
        let b4 = t0_basis(4).unwrap();
        assert_eq!(b4.elements[0].to_string(), "x_41");
        assert_eq!(b4.elements[1].to_string(), "x_31*x_42 - x_32*x_41");
    }

    #[test]
    fn basis_sizes_match_expected_counts() {
        for n in 2..=8u32 {
            assert_eq!(t0_basis(n).unwrap().len(), expected_invariant_count(AlgebraKind::T0, n).unwrap());
            assert_eq!(t_basis(n).unwrap().len(), expected_invariant_count(AlgebraKind::T, n).unwrap());
            assert_eq!(st_basis(n).unwrap().len(), expected_invariant_count(AlgebraKind::St, n).unwrap());
        }
    }

    #[test]
    fn rejects_tiny_sizes() {
        assert!(matches!(t0_basis(1), Err(Error::InvalidSize(1))));
        assert!(matches!(t_basis(0), Err(Error::InvalidSize(0))));
        assert!(matches!(st_basis(1), Err(Error::InvalidSize(1))));
    }

    #[test]
    fn t_basis_smallest_cases() {
        let b2 = t_basis(2).unwrap();
        assert_eq!(b2.elements.len(), 1);
        assert_eq!(b2.elements[0].to_string(), "x_11 + x_22");

        let b3 = t_basis(3).unwrap();
        let trace = RationalExpr::var(VarId::x(1, 1))
            .add(&RationalExpr::var(VarId::x(2, 2)))
            .add(&RationalExpr::var(VarId::x(3, 3)));
        assert_eq!(b3.elements[0], trace);
        // (x_21 x_32 - x_22 x_31) / x_31
        let x = |i, j| RationalExpr::var(VarId::x(i, j));
        let expected = x(2, 1)
            .mul(&x(3, 2))
            .sub(&x(2, 2).mul(&x(3, 1)))
            .div(&x(3, 1))
            .unwrap();
        assert_eq!(b3.elements[1], expected);
    }

    #[test]
    fn t_basis_element_two_has_the_two_row_pivot_denominator() {
        let b5 = t_basis(5).unwrap();
        let den = x_minor(AlgebraKind::T, 5, 4, 5, 1, 2);
        assert_eq!(b5.elements[2].den(), &den);
    }

    #[test]
    fn t_basis_matches_independent_expanded_forms() {
        // same elements written as literal determinant sums over 2x2 and 3x3
        // bordered matrices, built without the shared helper
        let x = |i, j| RationalExpr::var(VarId::x(i, j));
        for n in [3u32, 5] {
            let b = t_basis(n).unwrap();
            let mut second = RationalExpr::zero();
            for j in 2..=(n - 1) {
                let d = x(j, 1).mul(&x(n, j)).sub(&x(j, j).mul(&x(n, 1)));
                second = second.add(&d);
            }
            second = second.div(&x(n, 1)).unwrap();
            assert_eq!(b.elements[1], second, "n={}", n);
        }
        let b5 = t_basis(5).unwrap();
        let mut third = RationalExpr::zero();
        for j in 3..=3u32 {
            let m = PolyMatrix::from_fn(3, 3, |r, c| {
                let row = [j, 4, 5][r];
                let col = [1, 2, j][c];
                x(row, col)
            });
            third = third.add(&m.det().unwrap());
        }
        let den2 = x(4, 1).mul(&x(5, 2)).sub(&x(4, 2).mul(&x(5, 1)));
        third = third.div(&den2).unwrap();
        assert_eq!(b5.elements[2], third);
    }

    #[test]
    fn st_basis_smallest_case() {
        let b = st_basis(3).unwrap();
        assert_eq!(b.len(), 1);
        let x = |i, j| RationalExpr::var(VarId::x(i, j));
        let expected = x(2, 1)
            .mul(&x(3, 2))
            .div(&x(3, 1))
            .unwrap()
            .add(&RationalExpr::var(VarId::fstar(1)))
            .sub(&RationalExpr::var(VarId::fstar(2)));
        assert_eq!(b.elements[0], expected);
        assert!(st_basis(2).unwrap().is_empty());
    }

    #[test]
    fn st_elements_use_one_dual_pair_each() {
        for n in 3..=7u32 {
            for (idx, el) in st_basis(n).unwrap().elements.iter().enumerate() {
                let k = idx as u32 + 1;
                let mut fvars: Vec<VarId> = el
                    .num()
                    .vars()
                    .into_iter()
                    .filter(|v| v.kind == VarKind::Fstar)
                    .collect();
                fvars.sort();
                assert_eq!(fvars, vec![VarId::fstar(k), VarId::fstar(n - k)]);
                // coefficient pattern +1 / -1, linear in each
                let dk = el.partial(VarId::fstar(k));
                let dnk = el.partial(VarId::fstar(n - k));
                assert_eq!(dk, RationalExpr::one());
                assert_eq!(dnk, RationalExpr::one().neg());
            }
        }
    }

    #[test]
    fn st_elements_project_onto_t_basis_combination() {
        // substituting the traceless diagonal duals turns element k into
        // (-1)^{k+1} (t element k) + ((n-2k)/n) (t element 0)
        for n in 3..=6u32 {
            let st = st_basis(n).unwrap();
            let t = t_basis(n).unwrap();
            let nn = n as i64;
            let mut map: BTreeMap<VarId, RationalExpr> = BTreeMap::new();
            for m in 1..n {
                let mut l = RationalExpr::zero();
                for i in 1..=n {
                    let c = if i <= m {
                        rat(nn - m as i64, nn)
                    } else {
                        rat(-(m as i64), nn)
                    };
                    l = l.add(&RationalExpr::var(VarId::x(i, i)).scale(&c));
                }
                map.insert(VarId::fstar(m), l);
            }
            for (idx, el) in st.elements.iter().enumerate() {
                let k = idx as i64 + 1;
                let projected = el.subst(&map).unwrap();
                let sign = if k % 2 == 0 { rat(-1, 1) } else { rat(1, 1) };
                let expected = t.elements[idx + 1]
                    .scale(&sign)
                    .add(&t.elements[0].scale(&rat(nn - 2 * k, nn)));
                assert_eq!(projected, expected, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn jacobian_ranks_equal_basis_sizes() {
        let mut rng = rng_from_seed(42);
        for n in 2..=5u32 {
            for kind in [AlgebraKind::T0, AlgebraKind::T, AlgebraKind::St] {
                let basis = basis_for(kind, n).unwrap();
                if basis.is_empty() {
                    continue;
                }
                let mut vars: BTreeSet<VarId> = BTreeSet::new();
                for el in &basis.elements {
                    vars.extend(el.num().vars());
                    vars.extend(el.den().vars());
                }
                let var_list: Vec<VarId> = vars.iter().copied().collect();
                let rank = loop {
                    let point = random_point(&mut rng, &vars);
                    match jacobian_rank_at(&basis.elements, &var_list, &point) {
                        Ok(r) => break r,
                        Err(_) => continue,
                    }
                };
                assert_eq!(rank, basis.len(), "kind={:?} n={}", kind, n);
            }
        }
    }

    #[test]
    fn lemma3_passes_at_seed_point() {
        let mut rng = rng_from_seed(42);
        let p4 = random_point(&mut rng, &x_vars_strict(4));
        assert!(lemma3_check(4, 2, &BigRational::zero(), &p4).unwrap());
        let p5 = random_point(&mut rng, &x_vars_strict(5));
        assert!(lemma3_check(5, 2, &rat(17, 3), &p5).unwrap());
    }

    #[test]
    fn lemma3_numeric_sweep() {
        let mut rng = rng_from_seed(42);
        for n in 4..=8u32 {
            for k in 2..=n / 2 {
                for _ in 0..3 {
                    let point = random_point(&mut rng, &x_vars_strict(n));
                    let beta = random_rational(&mut rng);
                    match lemma3_check(n, k, &beta, &point) {
                        Ok(pass) => assert!(pass, "n={} k={}", n, k),
                        Err(Error::MinorVanishes) => continue,
                        Err(e) => panic!("unexpected error: {:?}", e),
                    }
                }
            }
        }
    }

    #[test]
    fn lemma3_symbolic_with_symbolic_beta() {
        // beta as a fresh symbol (a group-parameter name, unused by x)
        let beta = RationalExpr::var(VarId::b(1, 1));
        for (n, k) in [(4u32, 2u32), (5, 2)] {
            assert!(lemma3_check_symbolic(n, k, &beta).unwrap(), "n={} k={}", n, k);
        }
        assert!(lemma3_check_symbolic(5, 2, &RationalExpr::constant(rat(17, 3))).unwrap());
    }

    #[test]
    fn lemma3_reports_singular_pivot() {
        // n=5, k=2 pivots on x_51 alone; zero it out
        let mut point = BTreeMap::new();
        for i in 2..=5u32 {
            for j in 1..i {
                point.insert(VarId::x(i, j), BigRational::one());
            }
        }
        point.insert(VarId::x(5, 1), BigRational::zero());
        assert!(matches!(
            lemma3_check(5, 2, &BigRational::zero(), &point),
            Err(Error::MinorVanishes)
        ));
    }

    #[test]
    fn corner_minor_survives_transform() {
        let mut rng = rng_from_seed(42);
        for trial in 0..100 {
            let n = 2 + (trial % 6) as u32; // 2..=7
            let k = 1 + rng.gen_range(0..n / 2);
            let x_point = random_point(&mut rng, &x_vars_strict(n));
            let mut b_point = BTreeMap::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    b_point.insert(VarId::b(i, j), random_rational(&mut rng));
                }
            }
            let (lhs, rhs) = note3_trick(n, k, &b_point, &x_point).unwrap();
            assert_eq!(lhs, rhs, "n={} k={}", n, k);
        }
    }

    #[test]
    fn corner_minor_frozen_examples() {
        let mut rng = rng_from_seed(7);
        for (n, k) in [(4u32, 2u32), (6, 3)] {
            let x_point = random_point(&mut rng, &x_vars_strict(n));
            let mut b_point = BTreeMap::new();
            for i in 1..=n {
                for j in (i + 1)..=n {
                    b_point.insert(VarId::b(i, j), random_rational(&mut rng));
                }
            }
            let (lhs, rhs) = note3_trick(n, k, &b_point, &x_point).unwrap();
            assert_eq!(lhs, rhs);
            // and rhs really is the plain corner minor at the point
            let el = x_minor(AlgebraKind::T0, n, n - k + 1, n, 1, k);
            assert_eq!(RationalExpr::from_poly(el).eval(&x_point).unwrap(), rhs);
        }
    }

    #[test]
    fn t0_symmetrization_smallest_cases() {
        let alg2 = build_algebra(AlgebraKind::T0, 2).unwrap();
        let c2 = symmetrize_t0(2).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].render(&alg2), "e_12");

        let alg4 = build_algebra(AlgebraKind::T0, 4).unwrap();
        let c4 = symmetrize_t0(4).unwrap();
        assert_eq!(c4.len(), 2);
        assert_eq!(c4[0].render(&alg4), "e_14");
        // e_13 e_24 - e_14 e_23
        let g = |i, j| UeaElement::generator(alg4.index_of(BasisLabel::e(i, j)).unwrap());
        let expected = uea_mul(&g(1, 3), &g(2, 4), &alg4)
            .unwrap()
            .sub(&uea_mul(&g(1, 4), &g(2, 3), &alg4).unwrap());
        assert_eq!(c4[1], expected);
    }

    #[test]
    fn t0_symmetrizations_are_casimirs() {
        for n in 2..=5u32 {
            let alg = build_algebra(AlgebraKind::T0, n).unwrap();
            for (ki, c) in symmetrize_t0(n).unwrap().iter().enumerate() {
                assert!(casimir_check(c, &alg).unwrap(), "n={} k={}", n, ki + 1);
            }
        }
    }

    #[test]
    fn symmetrized_t_smallest_cases() {
        let s2 = symmetrized_t_basis(2).unwrap();
        assert_eq!(s2.len(), 1);
        assert_eq!(s2[0].render(), "e_11 + e_22");

        let s3 = symmetrized_t_basis(3).unwrap();
        assert_eq!(s3.len(), 2);
        assert_eq!(s3[0].render(), "e_11 + e_22 + e_33");
        assert_eq!(s3[1].num, vec![(rat(1, 1), vec![(2, 3), (1, 2)])]);
        assert_eq!(s3[1].den, vec![(rat(1, 1), vec![(1, 3)])]);
        assert_eq!(s3[1].diag, vec![(rat(-1, 1), 2)]);
        assert_eq!(s3[1].render(), "(e_23*e_12)/(e_13) - e_22");
    }

    #[test]
    fn symmetrized_t_matches_explicit_symmetrization() {
        // Sum_j Sym(bordered det with corner e_jj)
        //   = num + (-1)^{k+1} k(n-2k)/2 den + den * diag
        // in the enveloping algebra: the fixed factor order stands in for
        // symmetrization up to the constant carried by the denominator. Each
        // merged commutator monomial arises from k splittings, all with
        // relative sign (-1)^{k+1}, whence the constant.
        for n in 3..=6u32 {
            let alg = build_algebra(AlgebraKind::T, n).unwrap();
            for expr in symmetrized_t_basis(n).unwrap().iter().skip(1) {
                let k = expr.k;
                let kap = kappa(n, k);
                let mut symmed = UeaElement::zero();
                for j in (k + 1)..=(n - k) {
                    let mut m: Vec<Vec<Cell>> = Vec::new();
                    for i in 1..=k {
                        let mut row = vec![Cell::Gen(i, j)];
                        row.extend((kap..=n).map(|c| Cell::Gen(i, c)));
                        m.push(row);
                    }
                    let mut last = vec![Cell::Gen(j, j)];
                    last.extend((kap..=n).map(|c| Cell::Gen(j, c)));
                    m.push(last);
                    for (sign, factors) in det_words(&m) {
                        let word: Vec<usize> = factors
                            .iter()
                            .map(|&(_, _, (i, j))| {
                                alg.index_of(BasisLabel::e(i, j)).expect("generator")
                            })
                            .collect();
                        symmed = symmed.add(&sym(&word, &alg).unwrap().scale(&sign));
                    }
                }
                let num = expr.num_uea(&alg).unwrap();
                let den = expr.den_uea(&alg).unwrap();
                let diag = expr.diag_uea(&alg).unwrap();
                let ksign = if k % 2 == 0 { -1i64 } else { 1 };
                let c = rat(ksign * k as i64 * (n as i64 - 2 * k as i64), 2);
                let expected = num
                    .add(&den.scale(&c))
                    .add(&uea_mul(&den, &diag, &alg).unwrap());
                assert_eq!(symmed, expected, "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn flipping_the_noncommuting_pair_shifts_by_the_denominator() {
        // swapping the last two factors of every numerator word (the one
        // noncommuting pair) changes the element by (-1)^{k+1} k(n-2k) den:
        // the commutator corrections aggregate to copies of the denominator
        // determinant, never to zero
        for n in 3..=6u32 {
            let alg = build_algebra(AlgebraKind::T, n).unwrap();
            for expr in symmetrized_t_basis(n).unwrap().iter().skip(1) {
                let k = expr.k;
                let mut flipped = expr.clone();
                for (_, w) in flipped.num.iter_mut() {
                    let len = w.len();
                    w.swap(len - 2, len - 1);
                }
                let conv = expr.num_uea(&alg).unwrap();
                let flip = flipped.num_uea(&alg).unwrap();
                let den = expr.den_uea(&alg).unwrap();
                let ksign = if k % 2 == 0 { -1i64 } else { 1 };
                let c = rat(ksign * k as i64 * (n as i64 - 2 * k as i64), 1);
                assert_ne!(conv, flip);
                assert_eq!(flip.sub(&conv), den.scale(&c), "n={} k={}", n, k);
            }
        }
    }
}
