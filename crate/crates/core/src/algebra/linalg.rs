//! Exact linear algebra over the rationals and over field nodes.
//!
//! Rational matrices get the full toolkit (rref, rank, nullspace, Bareiss
//! determinants on cleared denominators, inverse, adjugate).  Matrices over
//! extension nodes get rank/nullspace/solve through fallible Gaussian
//! elimination: pivot inversions may raise a [`SplitEvent`].

use crate::algebra::field::{FElem, SplitEvent};
use crate::algebra::rat::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<Rat>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &QMat) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of the right nullspace (column vectors).
pub fn nullspace(m: &QMat) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = -w[pi][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_bareiss_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    }
}

/// Determinant of a rational matrix (clears denominators row by row and
/// divides back).
pub fn det_rational(m: &QMat) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = Rat::one();
    let mut im: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let l = crate::algebra::rat::denom_lcm(row);
        scale *= Rat::new(BigInt::one(), l.clone());
        im.push(row.iter().map(|r| r.numer() * (&l / r.denom())).collect());
    }
    Rat::from_integer(det_bareiss_int(&im)) * scale
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut w: QMat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut w);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(w.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Classical adjugate: `adj(m) * m = det(m) * I`.
pub fn adjugate(m: &QMat) -> QMat {
    let n = m.len();
    let det = det_rational(m);
    if !det.is_zero() {
        let inv = inverse(m).expect("nonsingular");
        return inv
            .into_iter()
            .map(|row| row.into_iter().map(|x| &x * &det).collect())
            .collect();
    }
    // cofactor fallback for singular input
    let mut adj = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: QMat = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let cof = det_rational(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let v = &out[i][j] + &a[i][l] * &b[l][j];
                out[i][j] = v;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// elimination over a field node
// ---------------------------------------------------------------------------

pub type FMat = Vec<Vec<FElem>>;

/// Row echelon reduction over a node.  Pivot inversions may split.
/// Returns pivot columns.
pub fn fe_rref(m: &mut FMat) -> Result<Vec<usize>, SplitEvent> {
    let rows = m.len();
    if rows == 0 {
        return Ok(vec![]);
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv()?;
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    Ok(pivots)
}

pub fn fe_rank(m: &FMat) -> Result<usize, SplitEvent> {
    let mut w = m.clone();
    Ok(fe_rref(&mut w)?.len())
}

pub fn fe_nullspace(m: &FMat) -> Result<Vec<Vec<FElem>>, SplitEvent> {
    if m.is_empty() {
        return Ok(vec![]);
    }
    let cols = m[0].len();
    let mut w = m.clone();
    let pivots = fe_rref(&mut w)?;
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![FElem::zero(); cols];
        v[free] = FElem::one();
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = w[pi][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn fe_det(m: &FMat) -> Result<FElem, SplitEvent> {
    let n = m.len();
    if n == 0 {
        return Ok(FElem::one());
    }
    let mut a = m.to_vec();
    let mut det = FElem::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(FElem::zero());
        };
        if piv != k {
            a.swap(k, piv);
            det = det.neg();
        }
        det = det.mul(&a[k][k]);
        let inv = a[k][k].inv()?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let d = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&d);
            }
        }
    }
    Ok(det)
}
