//! The generic Hilbert-Burch matrix on the balanced locus.
//!
//! For an even degree d = 2c, the coefficients of a triple fill a family of
//! Toeplitz-block convolution matrices A^(i).  The square matrix A^(c-1) has
//! determinant w, nonzero exactly on the balanced locus; the almost-square
//! matrix A^(c) yields three Eagon-Northcott relation vectors (anchored at
//! columns 1, c+2, 2c+3), which assemble into three candidate syzygy columns
//! q1, q2, q3.  Dropping column j gives a Hilbert-Burch matrix wherever w
//! and the y^d-coefficient of g_j are nonzero, and the signed minors of the
//! dropped-column matrix equal (-1)^(jc+1) z_{0,j} w^2 (g1, g2, g3)
//! identically in the coefficients.
//!
//! The construction is generic over a commutative ring so the same code
//! runs on rational specializations and on sparse integer polynomials in
//! the generic coefficients (for the symbolic identity check).

use crate::algebra::field::{FElem, FieldNode};
use crate::algebra::linalg;
use crate::algebra::mpoly::ZMPoly;
use crate::algebra::rat::Rat;
use crate::algebra::ring::{det_subsets, CRing};
use crate::binforms::BinForm;
use crate::error::CurveError;
use crate::syzygy::{is_balanced, minor_unit, HBMatrix, ParamTriple};

/// The convolution matrix A^(i) over an arbitrary ring: `coeff(k, j)` is the
/// coefficient of x^k y^(d-k) in the j-th form (j in 0..3).
pub fn conv_matrix<R: CRing>(coeff: &dyn Fn(usize, usize) -> R, d: usize, i: usize) -> Vec<Vec<R>> {
    let rows = d + i + 1;
    let cols = 3 * (i + 1);
    let mut m = vec![vec![R::zero(); cols]; rows];
    for j in 0..3 {
        for t in 0..=i {
            let col = j * (i + 1) + t;
            for k in 0..=d {
                m[k + t][col] = coeff(k, j);
            }
        }
    }
    m
}

fn minor_two_cols<R: CRing>(a: &[Vec<R>], skip1: usize, skip2: usize, det: &dyn Fn(&[Vec<R>]) -> R) -> R {
    let sub: Vec<Vec<R>> = a
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != skip1 && *c != skip2)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    det(&sub)
}

/// The Eagon-Northcott relation on A^(c) obtained by crossing out the
/// column with 0-indexed position `anchor`: entry l is, up to the table's
/// sign, the maximal minor of A^(c) with columns l and anchor removed.
fn relation_vector<R: CRing>(
    a: &[Vec<R>],
    anchor: usize,
    det: &dyn Fn(&[Vec<R>]) -> R,
) -> Vec<R> {
    let ncols = a[0].len();
    let mut b = vec![R::zero(); ncols];
    for (l, slot) in b.iter_mut().enumerate() {
        if l == anchor {
            continue;
        }
        let m = if l < anchor {
            minor_two_cols(a, l, anchor, det)
        } else {
            minor_two_cols(a, anchor, l, det)
        };
        // sign pattern of the displayed relation table (0-indexed l):
        // (-1)^l below the anchor, (-1)^(l+1) above it
        let signed = if l < anchor {
            if l % 2 == 0 {
                m
            } else {
                m.neg()
            }
        } else if l % 2 == 1 {
            m
        } else {
            m.neg()
        };
        *slot = signed;
    }
    b
}

/// Output of the generic construction: `w` and the three syzygy columns.
/// `q[j][row][t]` is the coefficient of x^t y^(c-t) in the row-th entry of
/// the column vector anchored at block j.
pub struct GenericData<R> {
    pub c: usize,
    pub w: R,
    pub q: Vec<Vec<Vec<R>>>,
}

pub fn generic_data<R: CRing>(
    coeff: &dyn Fn(usize, usize) -> R,
    d: usize,
    det: &dyn Fn(&[Vec<R>]) -> R,
    anchors_wanted: &[usize],
) -> GenericData<R> {
    assert!(d % 2 == 0 && d >= 2);
    let c = d / 2;
    let w = det(&conv_matrix(coeff, d, c - 1));
    let a = conv_matrix(coeff, d, c);
    debug_assert_eq!(a.len(), 3 * c + 1);
    debug_assert_eq!(a[0].len(), 3 * c + 3);
    let anchor_cols = [0usize, c + 1, 2 * c + 2];
    let mut q: Vec<Vec<Vec<R>>> = vec![Vec::new(); 3];
    for &j in anchors_wanted {
        let b = relation_vector(&a, anchor_cols[j], det);
        let mut col: Vec<Vec<R>> = Vec::with_capacity(3);
        for row in 0..3 {
            col.push(b[row * (c + 1)..(row + 1) * (c + 1)].to_vec());
        }
        q[j] = col;
    }
    GenericData { c, w, q }
}

fn det_rat(m: &[Vec<Rat>]) -> Rat {
    linalg::det_rational(&m.to_vec())
}

fn column_to_binforms(col: &[Vec<Rat>], c: usize) -> [BinForm; 3] {
    let node = FieldNode::Base;
    let mk = |row: &Vec<Rat>| {
        BinForm::new(
            node.clone(),
            c,
            row.iter().map(|r| FElem::Rat(r.clone())).collect(),
        )
    };
    [mk(&col[0]), mk(&col[1]), mk(&col[2])]
}

/// The generic closed-form Hilbert-Burch matrix for a balanced triple, with
/// the unit normalized to 1.  When no form has a nonzero y^d-coefficient the
/// triple is sheared by x -> x + t y first and the result sheared back.
pub fn hb_generic_balanced(g: &ParamTriple) -> Result<HBMatrix, CurveError> {
    if g.d % 2 != 0 {
        return Err(CurveError::invalid("balanced construction needs even degree"));
    }
    let (bal, _) = is_balanced(g)?;
    if !bal {
        return Err(CurveError::invalid("unbalanced, use hb_kernel"));
    }
    let d = g.d;
    let c = d / 2;
    for t in 0..=(3 * d as i64) {
        let sheared = if t == 0 {
            g.clone()
        } else {
            ParamTriple::new(
                g.g[0].shear_x(t),
                g.g[1].shear_x(t),
                g.g[2].shear_x(t),
            )
            .unwrap()
        };
        // smallest j with the y^d-coefficient nonzero
        let Some(j) = (0..3).find(|&j| !sheared.g[j].coeff(0).is_zero()) else {
            continue;
        };
        let coeff = |k: usize, jj: usize| -> Rat { sheared.g[jj].coeff(k).as_rat().unwrap().clone() };
        let keep: Vec<usize> = (0..3).filter(|&a| a != j).collect();
        let data = generic_data(&coeff, d, &det_rat, &keep);
        let cols: Vec<[BinForm; 3]> = keep
            .iter()
            .map(|&a| column_to_binforms(&data.q[a], c))
            .collect();
        let entries = [
            [cols[0][0].clone(), cols[1][0].clone()],
            [cols[0][1].clone(), cols[1][1].clone()],
            [cols[0][2].clone(), cols[1][2].clone()],
        ];
        let phi_sheared = HBMatrix::new(entries, (c, c));
        // transform back
        let phi = if t == 0 {
            phi_sheared
        } else {
            let un = |f: &BinForm| f.shear_x(-t);
            let e = &phi_sheared.entries;
            HBMatrix::new(
                [
                    [un(&e[0][0]), un(&e[0][1])],
                    [un(&e[1][0]), un(&e[1][1])],
                    [un(&e[2][0]), un(&e[2][1])],
                ],
                (c, c),
            )
        };
        let minors = phi.signed_minors();
        if minors.iter().all(|m| m.is_zero()) {
            return Err(CurveError::internal(
                "generic construction produced dependent columns on the balanced locus",
            ));
        }
        let Some(u) = minor_unit(&minors, g) else {
            return Err(CurveError::internal(
                "generic construction minors are not proportional to the triple",
            ));
        };
        return Ok(phi.scale_col(1, &FElem::Rat(u.recip())));
    }
    Err(CurveError::internal(
        "fallback exhaustion: no shear made a y^d-coefficient nonzero",
    ))
}

// ---------------------------------------------------------------------------
// the determinant identity
// ---------------------------------------------------------------------------

/// Index layout for the symbolic ring: 3d+3 generic coefficients z_{k,j}
/// followed by x and y.
fn z_index(d: usize, k: usize, j: usize) -> usize {
    j * (d + 1) + k
}

/// Exact symbolic check of the identity
/// `Phi(d2^(j)) = (-1)^(jc+1) z_{0,j} w^2 (G1, G2, G3)` (j is 1-indexed)
/// as polynomials in all generic coefficients, for every j.
pub fn zz_identity_symbolic(c: usize) -> bool {
    let d = 2 * c;
    let nv = 3 * d + 5;
    let xi = 3 * d + 3;
    let yi = 3 * d + 4;
    let coeff = |k: usize, j: usize| ZMPoly::var(nv, z_index(d, k, j));
    let det = |m: &[Vec<ZMPoly>]| det_subsets(m);
    let data = generic_data(&coeff, d, &det, &[0, 1, 2]);
    let w2 = data.w.mul(&data.w);
    // entries of the column vectors as polynomials in z, x, y
    let entry = |j: usize, row: usize| -> ZMPoly {
        let mut acc = ZMPoly::zero_nv(nv);
        for (t, b) in data.q[j][row].iter().enumerate() {
            let mut mono = ZMPoly::constant(nv, 1);
            for _ in 0..t {
                mono = mono.mul(&ZMPoly::var(nv, xi));
            }
            for _ in 0..(c - t) {
                mono = mono.mul(&ZMPoly::var(nv, yi));
            }
            acc = acc.add(&b.mul(&mono));
        }
        acc
    };
    let big_g = |j: usize| -> ZMPoly {
        let mut acc = ZMPoly::zero_nv(nv);
        for k in 0..=d {
            let mut mono = ZMPoly::var(nv, z_index(d, k, j));
            for _ in 0..k {
                mono = mono.mul(&ZMPoly::var(nv, xi));
            }
            for _ in 0..(d - k) {
                mono = mono.mul(&ZMPoly::var(nv, yi));
            }
            acc = acc.add(&mono);
        }
        acc
    };
    for j in 0..3usize {
        let keep: Vec<usize> = (0..3).filter(|&a| a != j).collect();
        // signed minors of the 3x2 matrix [q_keep0 q_keep1]
        let minor = |skip: usize| -> ZMPoly {
            let rows: Vec<usize> = (0..3).filter(|&r| r != skip).collect();
            entry(keep[0], rows[0])
                .mul(&entry(keep[1], rows[1]))
                .sub(&entry(keep[0], rows[1]).mul(&entry(keep[1], rows[0])))
        };
        let phi = [minor(0), minor(1).neg(), minor(2)];
        // expected scalar: (-1)^((j+1)c+1) z_{0,j} w^2 with 1-indexed j
        let scalar = {
            let s = ZMPoly::var(nv, z_index(d, 0, j)).mul(&w2);
            if ((j + 1) * c + 1) % 2 == 1 {
                s.neg()
            } else {
                s
            }
        };
        for (i, phi_i) in phi.iter().enumerate() {
            let rhs = scalar.mul(&big_g(i));
            if !phi_i.sub(&rhs).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The same identity on a random integer specialization with w != 0;
/// exact equality of binary forms.  Returns false when the drawn point has
/// w = 0 (caller should redraw).
pub fn zz_identity_specialized(c: usize, lambda: &[[i64; 3]]) -> Option<bool> {
    let d = 2 * c;
    assert_eq!(lambda.len(), d + 1);
    let coeff = |k: usize, j: usize| Rat::from_integer(lambda[k][j].into());
    let data = generic_data(&coeff, d, &det_rat, &[0, 1, 2]);
    if CRing::is_zero(&data.w) {
        return None;
    }
    let w2 = &data.w * &data.w;
    let g: Vec<BinForm> = (0..3)
        .map(|j| {
            BinForm::new(
                FieldNode::Base,
                d,
                (0..=d).map(|k| FElem::Rat(coeff(k, j))).collect(),
            )
        })
        .collect();
    for j in 0..3usize {
        let keep: Vec<usize> = (0..3).filter(|&a| a != j).collect();
        let cols: Vec<[BinForm; 3]> = keep
            .iter()
            .map(|&a| column_to_binforms(&data.q[a], c))
            .collect();
        let phi = HBMatrix::new(
            [
                [cols[0][0].clone(), cols[1][0].clone()],
                [cols[0][1].clone(), cols[1][1].clone()],
                [cols[0][2].clone(), cols[1][2].clone()],
            ],
            (c, c),
        );
        let minors = phi.signed_minors();
        let sign = if ((j + 1) * c + 1) % 2 == 1 { -1i64 } else { 1 };
        let scalar = coeff(0, j) * &w2 * Rat::from_integer(sign.into());
        for i in 0..3 {
            let rhs = g[i].scale(&FElem::Rat(scalar.clone()));
            if !minors[i].eq_form(&rhs) {
                return Some(false);
            }
        }
    }
    Some(true)
}
