//! Companion matrices of a balanced Hilbert-Burch matrix and the
//! classification machinery built on them.
//!
//! For a 3x2 matrix phi with all entries of degree c, extracting x and y
//! from T*phi gives a (c+1)x2 matrix C of linear forms in T1, T2, T3, and
//! re-indexing the same coefficient tensor gives a (c+1)x3 matrix A of
//! linear forms in u1, u2 with C*u^T = A*T^T.  The span of the 2x2 minors
//! of C and the gcd of the 3x3 minors of A classify the multiplicity-c
//! singularities on or infinitely near the curve, and drive the
//! decomposition of balanced matrices into eleven orbits.

pub mod orbit;

use crate::algebra::field::{FElem, FieldNode, SplitEvent};
use crate::algebra::linalg::{fe_nullspace, fe_rank, FMat};
use crate::binforms::{bf_factor_q, bf_gcd, bf_squarefree, BinForm};
use crate::error::CurveError;
use crate::syzygy::{hb_kernel, is_balanced, HBMatrix, ParamTriple};

/// The seven configurations of multiplicity-c singularities on or
/// infinitely near a curve of degree 2c.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CPLabel {
    Empty,
    C,
    CC,
    CCC,
    CcolC,
    CcolCC,
    CcolCcolC,
}

impl CPLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CPLabel::Empty => "empty",
            CPLabel::C => "c",
            CPLabel::CC => "c,c",
            CPLabel::CCC => "c,c,c",
            CPLabel::CcolC => "c:c",
            CPLabel::CcolCC => "c:c,c",
            CPLabel::CcolCcolC => "c:c:c",
        }
    }
}

impl std::fmt::Display for CPLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// The eleven orbit labels of balanced Hilbert-Burch matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ECPLabel {
    Mu2,
    CcolCcolC,
    CcolCC,
    CCC,
    CcolC,
    CC,
    CMu4,
    CMu5,
    EmptyMu4,
    EmptyMu5,
    EmptyMu6,
}

impl ECPLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ECPLabel::Mu2 => "mu2",
            ECPLabel::CcolCcolC => "c:c:c",
            ECPLabel::CcolCC => "c:c,c",
            ECPLabel::CCC => "c,c,c",
            ECPLabel::CcolC => "c:c",
            ECPLabel::CC => "c,c",
            ECPLabel::CMu4 => "(c,mu4)",
            ECPLabel::CMu5 => "(c,mu5)",
            ECPLabel::EmptyMu4 => "(empty,mu4)",
            ECPLabel::EmptyMu5 => "(empty,mu5)",
            ECPLabel::EmptyMu6 => "(empty,mu6)",
        }
    }

    /// The configuration of multiplicity-c singularities the orbit induces.
    pub fn cp(&self) -> CPLabel {
        match self {
            ECPLabel::Mu2 | ECPLabel::CcolCcolC => CPLabel::CcolCcolC,
            ECPLabel::CcolCC => CPLabel::CcolCC,
            ECPLabel::CCC => CPLabel::CCC,
            ECPLabel::CcolC => CPLabel::CcolC,
            ECPLabel::CC => CPLabel::CC,
            ECPLabel::CMu4 | ECPLabel::CMu5 => CPLabel::C,
            _ => CPLabel::Empty,
        }
    }
}

impl std::fmt::Display for ECPLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Linear form in T1, T2, T3.
pub type LinT = [FElem; 3];
/// Linear form in u1, u2.
pub type LinU = [FElem; 2];

/// C is (c+1) x 2 with entries linear in T; A is (c+1) x 3 with entries
/// linear in u; both are re-indexings of the coefficient tensor of phi.
pub fn build_c_a(phi: &HBMatrix) -> Result<(Vec<[LinT; 2]>, Vec<[LinU; 3]>), CurveError> {
    if !phi.is_balanced() {
        return Err(CurveError::invalid("companion matrices need a balanced matrix"));
    }
    let c = phi.col_degs.0;
    let mut cm: Vec<[LinT; 2]> = Vec::with_capacity(c + 1);
    let mut am: Vec<[LinU; 3]> = Vec::with_capacity(c + 1);
    for r in 0..=c {
        let z = FElem::zero;
        let mut crow: [LinT; 2] = [[z(), z(), z()], [z(), z(), z()]];
        let mut arow: [LinU; 3] = [[z(), z()], [z(), z()], [z(), z()]];
        for i in 0..3 {
            for k in 0..2 {
                let coeff = phi.entries[i][k].coeff(r);
                crow[k][i] = coeff.clone();
                arow[i][k] = coeff;
            }
        }
        cm.push(crow);
        am.push(arow);
    }
    Ok((cm, am))
}

/// Validate that C and A are the coefficient tensor of phi (the defining
/// identities hold by construction; this re-expands them).
pub fn check_c_a_identity(phi: &HBMatrix) -> bool {
    let (cm, am) = match build_c_a(phi) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let c = phi.col_degs.0;
    for i in 0..3 {
        for k in 0..2 {
            for r in 0..=c {
                let lhs = phi.entries[i][k].coeff(r);
                if !lhs.eq_elem(&cm[r][k][i]) || !lhs.eq_elem(&am[r][i][k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Row-reduced companion matrices in the basis of the entry span with
/// first-appearance (column-major) ordering, zero rows suppressed.
pub fn reduced_c_a(phi: &HBMatrix) -> Result<(Vec<[LinT; 2]>, Vec<[LinU; 3]>), SplitEvent> {
    let c = phi.col_degs.0;
    // entries in column-major order
    let entries: Vec<&BinForm> = (0..2)
        .flat_map(|k| (0..3).map(move |i| &phi.entries[i][k]))
        .collect();
    // greedy basis by first appearance
    let mut basis: Vec<Vec<FElem>> = Vec::new();
    let mut coords: Vec<Vec<FElem>> = Vec::new(); // per entry, coords in basis
    for e in &entries {
        let v: Vec<FElem> = (0..=c).map(|r| e.coeff(r)).collect();
        // solve v = sum coords * basis
        let expressed = express_in_span(&basis, &v)?;
        match expressed {
            Some(co) => coords.push(co),
            None => {
                basis.push(v);
                let mut co = vec![FElem::zero(); basis.len()];
                co[basis.len() - 1] = FElem::one();
                coords.push(co);
            }
        }
    }
    let mu = basis.len();
    let pad = |co: &[FElem]| -> Vec<FElem> {
        let mut v = co.to_vec();
        v.resize(mu, FElem::zero());
        v
    };
    // index entries back: entry (i, k) is at column-major position k*3 + i
    let z = FElem::zero;
    let mut cm: Vec<[LinT; 2]> = (0..mu)
        .map(|_| [[z(), z(), z()], [z(), z(), z()]])
        .collect();
    let mut am: Vec<[LinU; 3]> = (0..mu)
        .map(|_| [[z(), z()], [z(), z()], [z(), z()]])
        .collect();
    for k in 0..2 {
        for i in 0..3 {
            let co = pad(&coords[k * 3 + i]);
            for (b, coeff) in co.iter().enumerate() {
                cm[b][k][i] = cm[b][k][i].add(coeff);
                am[b][i][k] = am[b][i][k].add(coeff);
            }
        }
    }
    Ok((cm, am))
}

/// Coordinates of v in the span of `basis`, or None when independent.
fn express_in_span(basis: &[Vec<FElem>], v: &[FElem]) -> Result<Option<Vec<FElem>>, SplitEvent> {
    if basis.is_empty() {
        return Ok(if v.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        });
    }
    // solve basis^T * co = v by elimination on the augmented matrix
    let n = v.len();
    let m = basis.len();
    let mut aug: FMat = (0..n)
        .map(|r| {
            let mut row: Vec<FElem> = (0..m).map(|b| basis[b][r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let pivots = crate::algebra::linalg::fe_rref(&mut aug)?;
    if pivots.contains(&m) {
        return Ok(None); // inconsistent: v independent
    }
    let mut co = vec![FElem::zero(); m];
    for (pi, &pc) in pivots.iter().enumerate() {
        co[pc] = aug[pi][m].clone();
    }
    Ok(Some(co))
}

/// Number of linearly independent entries of phi.
pub fn mu_i1(phi: &HBMatrix) -> Result<usize, SplitEvent> {
    let c = phi.col_degs.1;
    let mut m: FMat = Vec::with_capacity(6);
    for k in 0..2 {
        for i in 0..3 {
            m.push((0..=c).map(|r| phi.entries[i][k].coeff(r)).collect());
        }
    }
    fe_rank(&m)
}

/// Dimension of the span of the 2x2 minors of C inside the 6-dimensional
/// space of quadrics in T1, T2, T3.
pub fn mu_i2c(cm: &[[LinT; 2]]) -> Result<usize, SplitEvent> {
    let quad_index = |i: usize, j: usize| -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        match (a, b) {
            (0, 0) => 0,
            (0, 1) => 1,
            (0, 2) => 2,
            (1, 1) => 3,
            (1, 2) => 4,
            (2, 2) => 5,
            _ => unreachable!(),
        }
    };
    let n = cm.len();
    let mut rows: FMat = Vec::new();
    for r in 0..n {
        for s in (r + 1)..n {
            let mut v = vec![FElem::zero(); 6];
            for i in 0..3 {
                for j in 0..3 {
                    let t = cm[r][0][i]
                        .mul(&cm[s][1][j])
                        .sub(&cm[r][1][i].mul(&cm[s][0][j]));
                    let q = quad_index(i, j);
                    v[q] = v[q].add(&t);
                }
            }
            rows.push(v);
        }
    }
    fe_rank(&rows)
}

/// Gcd of all 3x3 minors of A, normalized; a binary form of degree <= 3 in
/// u1, u2, or the zero form when every minor vanishes.
pub fn gcd_i3a(am: &[[LinU; 3]], node: &FieldNode) -> Result<BinForm, SplitEvent> {
    let n = am.len();
    let mut acc: Option<BinForm> = None;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let det = det3_linu(&am[a], &am[b], &am[c], node);
                if det.is_zero() {
                    continue;
                }
                acc = Some(match acc {
                    None => det.normalized()?,
                    Some(g) => bf_gcd(&g, &det)?,
                });
                if acc.as_ref().map(|g| g.deg() == 0).unwrap_or(false) {
                    return Ok(acc.unwrap());
                }
            }
        }
    }
    Ok(acc.unwrap_or_else(|| BinForm::zero(node.clone(), 0)))
}

/// Determinant of a 3x3 matrix of binary linear forms in u, expanded as a
/// binary cubic.  The coefficient slot of x holds u1, of y holds u2.
fn det3_linu(r0: &[LinU; 3], r1: &[LinU; 3], r2: &[LinU; 3], node: &FieldNode) -> BinForm {
    let lin = |l: &LinU| -> BinForm {
        BinForm::new(node.clone(), 1, vec![l[1].clone(), l[0].clone()])
    };
    let mut acc = BinForm::zero(node.clone(), 3);
    let rows = [r0, r1, r2];
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    for (perm, sign) in PERMS.iter() {
        let term = lin(&rows[0][perm[0]])
            .mul(&lin(&rows[1][perm[1]]))
            .mul(&lin(&rows[2][perm[2]]));
        let term = if *sign < 0 { term.neg() } else { term };
        acc = acc.add(&term);
    }
    acc
}

/// Exponent multiset of a u-form over the closure, sorted descending: a
/// squarefree class of degree k at multiplicity m contributes k copies of m.
pub fn exponent_shape(g: &BinForm) -> Result<Vec<usize>, SplitEvent> {
    if g.is_zero() || g.deg() == 0 {
        return Ok(vec![]);
    }
    let mut shape = Vec::new();
    for (part, m) in bf_squarefree(g)? {
        for _ in 0..part.deg() {
            shape.push(m);
        }
    }
    shape.sort_unstable_by(|a, b| b.cmp(a));
    Ok(shape)
}

/// The three chart invariants of a balanced matrix.
pub struct ChartInvariants {
    pub mu1: usize,
    pub mu2c: usize,
    /// None encodes the zero form (all 3x3 minors vanish).
    pub gcd_shape: Option<Vec<usize>>,
    pub gcd: BinForm,
}

pub fn chart_invariants(phi: &HBMatrix) -> Result<ChartInvariants, SplitEvent> {
    let (cm, am) = build_c_a(phi).expect("balanced input");
    let mu1 = mu_i1(phi)?;
    let mu2c = mu_i2c(&cm)?;
    let g = gcd_i3a(&am, phi.node())?;
    let gcd_shape = if g.is_zero() {
        None
    } else {
        Some(exponent_shape(&g)?)
    };
    Ok(ChartInvariants { mu1, mu2c, gcd_shape, gcd: g })
}

/// Orbit label from the invariant chart; every triple of values that can
/// occur for a height-two balanced matrix determines the label uniquely.
pub fn ecp_from_invariants(inv: &ChartInvariants) -> Result<ECPLabel, CurveError> {
    let shape = inv.gcd_shape.as_deref();
    let lab = match (inv.mu1, inv.mu2c, shape) {
        (6, 6, Some([])) => ECPLabel::EmptyMu6,
        (5, 6, Some([])) => ECPLabel::EmptyMu5,
        (5, 5, Some([1])) => ECPLabel::CMu5,
        (4, 6, Some([])) => ECPLabel::EmptyMu4,
        (4, 5, Some([1])) => ECPLabel::CMu4,
        (4, 4, Some([1, 1])) => ECPLabel::CC,
        (4, 4, Some([2])) => ECPLabel::CcolC,
        (3, 3, Some([1, 1, 1])) => ECPLabel::CCC,
        (3, 3, Some([2, 1])) => ECPLabel::CcolCC,
        (3, 3, Some([3])) => ECPLabel::CcolCcolC,
        (2, 1, None) => ECPLabel::Mu2,
        (m1, m2, s) => {
            return Err(CurveError::internal(format!(
                "invariants (mu1={}, mu2C={}, shape={:?}) match no chart row",
                m1, m2, s
            )))
        }
    };
    Ok(lab)
}

/// One conjugacy class of multiplicity-c singular points.
pub struct McPoint {
    /// Q-irreducible factor of gcd I3(A) in the u variables.
    pub factor: BinForm,
    /// Number of conjugate points in this class.
    pub conjugacy: usize,
    /// Infinitely-near multiplicity-c points above each: exponent - 1.
    pub infinitely_near: usize,
    /// The field the point coordinates live in.
    pub node: FieldNode,
    /// Coordinates of the on-curve point, first nonzero coordinate 1.
    pub point: [FElem; 3],
}

/// The configuration of multiplicity-c singularities on or infinitely near
/// the curve of a balanced birational triple, with per-point data.
pub fn cp_configuration(g: &ParamTriple) -> Result<(CPLabel, Vec<McPoint>), CurveError> {
    let (bal, _) = is_balanced(g)?;
    if !bal {
        return Err(CurveError::invalid("configuration needs a balanced triple"));
    }
    let phi = hb_kernel(g)?;
    cp_configuration_of_matrix(&phi)
}

/// Same as [`cp_configuration`] but starting from the Hilbert-Burch matrix.
pub fn cp_configuration_of_matrix(phi: &HBMatrix) -> Result<(CPLabel, Vec<McPoint>), CurveError> {
    let (_, am) = build_c_a(phi)?;
    let gcd = gcd_i3a(&am, phi.node())
        .map_err(|e| CurveError::internal(format!("unexpected split over the base field: {}", e)))?;
    if gcd.is_zero() {
        return Err(CurveError::internal(
            "gcd I3(A) vanished identically (non-birational input?)",
        ));
    }
    if gcd.deg() == 0 {
        return Ok((CPLabel::Empty, vec![]));
    }
    let mut points = Vec::new();
    let mut shape: Vec<usize> = Vec::new();
    for (factor, e) in bf_factor_q(&gcd) {
        let k = factor.deg();
        for _ in 0..k {
            shape.push(e);
        }
        // adjoin a root of the factor: q = [alpha : 1], or [1 : 0] for the
        // factor u2 (the "y" form in u-coordinates)
        let (node, q): (FieldNode, [FElem; 2]) = if factor.y_valuation() == 1 {
            (FieldNode::Base, [FElem::one(), FElem::zero()])
        } else {
            let p = factor.dehom();
            if p.degree() == Some(1) {
                let root = p.coeff(0).neg().div(&p.coeff(1)).unwrap();
                (FieldNode::Base, [root, FElem::one()])
            } else {
                let node = FieldNode::Base
                    .extend(&p.monic().unwrap(), "a")
                    .map_err(|e| CurveError::internal(format!("{}", e)))?;
                let root = node.generator();
                (node, [root, FElem::one()])
            }
        };
        let point = on_curve_point(phi, &q)?;
        points.push(McPoint {
            factor,
            conjugacy: k,
            infinitely_near: e - 1,
            node,
            point,
        });
    }
    shape.sort_unstable_by(|a, b| b.cmp(a));
    let label = match shape.as_slice() {
        [1] => CPLabel::C,
        [1, 1] => CPLabel::CC,
        [1, 1, 1] => CPLabel::CCC,
        [2] => CPLabel::CcolC,
        [2, 1] => CPLabel::CcolCC,
        [3] => CPLabel::CcolCcolC,
        s => {
            return Err(CurveError::internal(format!(
                "gcd I3(A) exponent shape {:?} is not in the configuration poset",
                s
            )))
        }
    };
    Ok((label, points))
}

/// The point paired with a column direction q: the unique p with
/// p * phi * q^T = 0, found as the kernel of the coefficient matrix of
/// phi * q^T.  First nonzero coordinate normalized to 1.
pub fn on_curve_point(phi: &HBMatrix, q: &[FElem; 2]) -> Result<[FElem; 3], CurveError> {
    let c = phi.col_degs.1;
    let mut m: FMat = Vec::with_capacity(c + 1);
    for r in 0..=c {
        let mut row = Vec::with_capacity(3);
        for i in 0..3 {
            row.push(
                phi.entries[i][0]
                    .coeff(r)
                    .mul(&q[0])
                    .add(&phi.entries[i][1].coeff(r).mul(&q[1])),
            );
        }
        m.push(row);
    }
    let ns = fe_nullspace(&m)
        .map_err(|e| CurveError::internal(format!("split while solving for the point: {}", e)))?;
    if ns.len() != 1 {
        return Err(CurveError::internal(format!(
            "point correspondence kernel has dimension {} (expected 1)",
            ns.len()
        )));
    }
    let v = &ns[0];
    let lead = v.iter().find(|x| !x.is_zero()).unwrap();
    let inv = lead
        .inv()
        .map_err(|e| CurveError::internal(format!("split while normalizing the point: {}", e)))?;
    Ok([v[0].mul(&inv), v[1].mul(&inv), v[2].mul(&inv)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(deg: usize, coeffs: &[i64]) -> BinForm {
        BinForm::from_int_coeffs(FieldNode::Base, deg, coeffs)
    }

    fn hb(c: usize, rows: [[&BinForm; 2]; 3]) -> HBMatrix {
        HBMatrix::new(
            [
                [rows[0][0].clone(), rows[0][1].clone()],
                [rows[1][0].clone(), rows[1][1].clone()],
                [rows[2][0].clone(), rows[2][1].clone()],
            ],
            (c, c),
        )
    }

    /// The canonical c:c:c quartic instance: Q1 = x^2, Q2 = y(x+y),
    /// Q3 = x^2 + y^2.
    fn ccc_quartic() -> HBMatrix {
        let q1 = bf(2, &[0, 0, 1]);
        let q2 = bf(2, &[1, 1, 0]);
        let q3 = bf(2, &[1, 0, 1]);
        let z = BinForm::zero(FieldNode::Base, 2);
        hb(2, [[&q1, &q2], [&q3, &q1], [&z, &q3]])
    }

    #[test]
    fn identity_holds_on_random_matrices() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for c in 1..=4 {
            let rows: Vec<[BinForm; 2]> = (0..3)
                .map(|_| {
                    [
                        BinForm::random(FieldNode::Base, c, &mut rng),
                        BinForm::random(FieldNode::Base, c, &mut rng),
                    ]
                })
                .collect();
            let phi = HBMatrix::new(
                [rows[0].clone(), rows[1].clone(), rows[2].clone()],
                (c, c),
            );
            assert!(check_c_a_identity(&phi));
        }
    }

    #[test]
    fn reduced_matrices_of_canonical_ccc() {
        // C' = [[T1,T2],[T2,T3],[0,T1]], A' = [[u1,u2,0],[0,u1,u2],[u2,0,0]]
        let phi = ccc_quartic();
        let (cm, am) = reduced_c_a(&phi).unwrap();
        assert_eq!(cm.len(), 3);
        let lin_t = |l: &LinT| -> Vec<String> { l.iter().map(|x| x.to_string()).collect() };
        assert_eq!(lin_t(&cm[0][0]), vec!["1", "0", "0"]); // T1
        assert_eq!(lin_t(&cm[0][1]), vec!["0", "1", "0"]); // T2
        assert_eq!(lin_t(&cm[1][0]), vec!["0", "1", "0"]); // T2
        assert_eq!(lin_t(&cm[1][1]), vec!["0", "0", "1"]); // T3
        assert_eq!(lin_t(&cm[2][0]), vec!["0", "0", "0"]); // 0
        assert_eq!(lin_t(&cm[2][1]), vec!["1", "0", "0"]); // T1
        let lin_u = |l: &LinU| -> Vec<String> { l.iter().map(|x| x.to_string()).collect() };
        assert_eq!(lin_u(&am[0][0]), vec!["1", "0"]); // u1
        assert_eq!(lin_u(&am[0][1]), vec!["0", "1"]); // u2
        assert_eq!(lin_u(&am[0][2]), vec!["0", "0"]);
        assert_eq!(lin_u(&am[1][0]), vec!["0", "0"]);
        assert_eq!(lin_u(&am[1][1]), vec!["1", "0"]); // u1
        assert_eq!(lin_u(&am[1][2]), vec!["0", "1"]); // u2
        assert_eq!(lin_u(&am[2][0]), vec!["0", "1"]); // u2
        assert_eq!(lin_u(&am[2][1]), vec!["0", "0"]);
        assert_eq!(lin_u(&am[2][2]), vec!["0", "0"]);
    }

    #[test]
    fn chart_values_of_canonical_ccc() {
        let phi = ccc_quartic();
        let inv = chart_invariants(&phi).unwrap();
        assert_eq!(inv.mu1, 3);
        assert_eq!(inv.mu2c, 3);
        assert_eq!(inv.gcd_shape, Some(vec![3]));
        assert_eq!(inv.gcd.deg(), 3);
        // gcd I3(A) = u2^3: in the (u1 <-> x, u2 <-> y) encoding that form
        // has y-valuation 3
        assert_eq!(inv.gcd.y_valuation(), 3);
        assert_eq!(ecp_from_invariants(&inv).unwrap(), ECPLabel::CcolCcolC);
    }

    #[test]
    fn mu2_row_of_chart() {
        // [[Q1, 0], [Q2, Q1], [0, Q2]] with Q1 = x^3, Q2 = y^3 (c = 3)
        let q1 = bf(3, &[0, 0, 0, 1]);
        let q2 = bf(3, &[1, 0, 0, 0]);
        let z = BinForm::zero(FieldNode::Base, 3);
        let phi = hb(3, [[&q1, &z], [&q2, &q1], [&z, &q2]]);
        let inv = chart_invariants(&phi).unwrap();
        assert_eq!(inv.mu1, 2);
        assert_eq!(inv.mu2c, 1);
        assert_eq!(inv.gcd_shape, None);
        assert_eq!(ecp_from_invariants(&inv).unwrap(), ECPLabel::Mu2);
    }

    #[test]
    fn configuration_of_canonical_ccc() {
        let phi = ccc_quartic();
        let (label, points) = cp_configuration_of_matrix(&phi).unwrap();
        assert_eq!(label, CPLabel::CcolCcolC);
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].infinitely_near, 2);
        assert_eq!(points[0].conjugacy, 1);
        // the singular point is [0:0:1]
        let p = &points[0].point;
        assert!(p[0].is_zero() && p[1].is_zero() && p[2].is_one());
    }

    #[test]
    fn configuration_of_three_points() {
        // [[Q1,Q1],[Q2,0],[0,Q3]] with the same Q's: label (c,c,c) with
        // points [0:0:1], [0:1:0], [1:0:0]
        let q1 = bf(2, &[0, 0, 1]);
        let q2 = bf(2, &[1, 1, 0]);
        let q3 = bf(2, &[1, 0, 1]);
        let z = BinForm::zero(FieldNode::Base, 2);
        let phi = hb(2, [[&q1, &q1], [&q2, &z], [&z, &q3]]);
        let (label, points) = cp_configuration_of_matrix(&phi).unwrap();
        assert_eq!(label, CPLabel::CCC);
        assert_eq!(points.len(), 3);
        let mut coords: Vec<String> = points
            .iter()
            .map(|p| format!("[{}:{}:{}]", p.point[0], p.point[1], p.point[2]))
            .collect();
        coords.sort();
        assert_eq!(
            coords,
            vec!["[0:0:1]", "[0:1:0]", "[1:0:0]"]
        );
    }
}
