//! Normal-form reduction at a singular point and the infinitely-near
//! singularities read off the blow-up.
//!
//! A singular point of multiplicity d_j (one of the two column degrees)
//! moves to [0:0:1] with the matrix in the shape
//! [[P1,Q1],[P2,Q2],[0,Q3]], deg P_i = d - d_j, deg Q_i = d_j, and
//! gcd(P1,Q1) = gcd(P2,Q2) = 1.  A point (p, [a:b]) of the blow-up is
//! singular of multiplicity m' exactly when gcd(Q3, a P1 + b P2) has degree
//! m' >= 2, and the displayed matrices of the two blow-up charts allow the
//! analysis to recurse.

use crate::algebra::field::{FElem, FieldNode};
use crate::algebra::linalg::{fe_rref, FMat};
use crate::algebra::upoly::UniPoly;
use crate::binforms::{bf_gcd, bf_squarefree, BinForm};
use crate::error::CurveError;
use crate::syzygy::HBMatrix;

/// A Hilbert-Burch matrix in the Triple Lemma normal form at [0:0:1].
#[derive(Clone)]
pub struct NormalizedHB {
    pub p1: BinForm,
    pub p2: BinForm,
    pub q1: BinForm,
    pub q2: BinForm,
    pub q3: BinForm,
    /// Total degree of the parameterized curve.
    pub d: usize,
    /// The matched column degree (the multiplicity of the point).
    pub dj: usize,
    pub node: FieldNode,
    /// Row transformation applied (bottom row is the point).
    pub chi: [[FElem; 3]; 3],
}

impl NormalizedHB {
    pub fn delta(&self) -> BinForm {
        self.p1.mul(&self.q2).sub(&self.p2.mul(&self.q1))
    }
}

/// Move the singular point p (with multiplicity equal to one of the column
/// degrees) of the curve of `phi` to [0:0:1] and normalize.
pub fn normalize_at_point(phi: &HBMatrix, p: &[FElem; 3]) -> Result<NormalizedHB, CurveError> {
    let node = ambient_node(phi, p);
    let phi = phi.transport(&node);
    let p = [p[0].transport(&node), p[1].transport(&node), p[2].transport(&node)];
    let row = phi.row_combine(&p);
    let delta = bf_gcd(&row[0], &row[1])?;
    let m = delta.deg();
    let (d1, d2) = phi.col_degs;
    if m != d1 && m != d2 {
        return Err(CurveError::invalid(
            "Triple Lemma inapplicable at this point (multiplicity is not a column degree)",
        ));
    }
    // invertible chi with bottom row p
    let pivot = (0..3)
        .rev()
        .find(|&i| !p[i].is_zero())
        .expect("point has a nonzero coordinate");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let z = FElem::zero;
    let mut chi = [[z(), z(), z()], [z(), z(), z()], [z(), z(), z()]];
    chi[0][others[0]] = FElem::one();
    chi[1][others[1]] = FElem::one();
    chi[2] = p.clone();
    let work = phi.row_transform(&chi);
    let (a1, a2) = (work.entries[2][0].clone(), work.entries[2][1].clone());
    // column operations making the bottom row (0, *): afterwards the first
    // column holds the P's (degree d - dj) and the second the Q's
    let d = d1 + d2;
    let (pcol, qcol, q3) = if a1.is_zero() {
        (
            [work.entries[0][0].clone(), work.entries[1][0].clone()],
            [work.entries[0][1].clone(), work.entries[1][1].clone()],
            a2.clone(),
        )
    } else if a2.is_zero() {
        (
            [work.entries[0][1].clone(), work.entries[1][1].clone()],
            [work.entries[0][0].clone(), work.entries[1][0].clone()],
            a1.clone(),
        )
    } else {
        let h1 = a1.div_exact(&delta);
        let h2 = a2.div_exact(&delta);
        if m == d2 {
            // h1 and h2 are constants; kill the first entry
            let f = h1.coeff(0).div(&h2.coeff(0))?;
            let c0: Vec<BinForm> = (0..2)
                .map(|i| work.entries[i][0].sub(&work.entries[i][1].scale(&f)))
                .collect();
            (
                [c0[0].clone(), c0[1].clone()],
                [work.entries[0][1].clone(), work.entries[1][1].clone()],
                a2.clone(),
            )
        } else {
            // h1 is a constant, h2 has positive degree: clear the second
            // entry, then swap
            let g = h1.coeff(0).inv()?;
            let h = h2.scale(&g);
            let c1: Vec<BinForm> = (0..2)
                .map(|i| work.entries[i][1].sub(&work.entries[i][0].mul(&h)))
                .collect();
            (
                [c1[0].clone(), c1[1].clone()],
                [work.entries[0][0].clone(), work.entries[1][0].clone()],
                a1.clone(),
            )
        }
    };
    let dj = q3.deg();
    debug_assert_eq!(dj, m);
    let mut out = NormalizedHB {
        p1: pcol[0].clone(),
        p2: pcol[1].clone(),
        q1: qcol[0].clone(),
        q2: qcol[1].clone(),
        q3,
        d,
        dj,
        node: node.clone(),
        chi,
    };
    // row cleanup: add multiples of the bottom row to enforce
    // gcd(P1, Q1) = gcd(P2, Q2) = 1 (only the Q side moves)
    for i in 0..2 {
        let (pi, qi) = if i == 0 {
            (out.p1.clone(), out.q1.clone())
        } else {
            (out.p2.clone(), out.q2.clone())
        };
        let mut fixed = None;
        for t in 0..=(3 * d as i64) {
            let cand = qi.add(&out.q3.scale(&FElem::from_int(t)));
            if cand.is_zero() {
                continue;
            }
            if pi.is_zero() {
                // a zero P entry leaves nothing to be coprime to
                fixed = Some(qi.clone());
                break;
            }
            let g = bf_gcd(&pi, &cand)?;
            if g.deg() == 0 {
                fixed = Some(cand);
                break;
            }
        }
        let Some(q) = fixed else {
            return Err(CurveError::internal(
                "row cleanup could not reach coprimality (height violation?)",
            ));
        };
        if i == 0 {
            out.q1 = q;
        } else {
            out.q2 = q;
        }
    }
    Ok(out)
}

fn ambient_node(phi: &HBMatrix, p: &[FElem; 3]) -> FieldNode {
    let mut node = phi.node().clone();
    for c in p.iter() {
        if c.depth() > node.depth() {
            node = c.node();
        }
    }
    node
}

/// The Hilbert-Burch matrices of the two blow-up charts.
pub fn blowup_matrices(n: &NormalizedHB) -> Result<(HBMatrix, HBMatrix), CurveError> {
    let delta = n.delta();
    if delta.is_zero() {
        return Err(CurveError::internal("vanishing determinant in the blow-up"));
    }
    let node = n.node.clone();
    let dlow = n.d - n.dj;
    let zl = BinForm::zero(node.clone(), dlow);
    let zh = BinForm::zero(node.clone(), n.d);
    let first = HBMatrix::new(
        [
            [zl.clone(), delta.neg()],
            [n.p2.clone(), zh.clone()],
            [n.p1.clone(), n.p2.mul(&n.q3)],
        ],
        (dlow, n.d),
    );
    let second = HBMatrix::new(
        [
            [zl, delta.clone()],
            [n.p1.clone(), zh],
            [n.p2.clone(), n.p1.mul(&n.q3)],
        ],
        (dlow, n.d),
    );
    Ok((first, second))
}

/// One conjugacy class of points in the first neighborhood.
pub struct NeighborhoodPoint {
    /// Field containing the direction coordinates.
    pub node: FieldNode,
    /// The direction [a : b] on the exceptional line.
    pub direction: [FElem; 2],
    /// Multiplicity of the blown-up point.
    pub multiplicity: usize,
    /// Number of conjugate copies of this point over the base of the chain.
    pub conjugacy: usize,
    /// Minimal polynomial of the normalized direction parameter (degree =
    /// conjugacy); the parameter is a/b, or b/a when `at_infinity`.
    pub minpoly: UniPoly,
    pub at_infinity: bool,
}

/// Distinct parameter-root classes of a binary form over the closure of the
/// node: (class node, root as [a : b], class degree).
pub fn parameter_root_classes(
    f: &BinForm,
    name_hint: &str,
) -> Result<Vec<(FieldNode, [FElem; 2], usize)>, CurveError> {
    assert!(!f.is_zero());
    let node = f.node().clone();
    let mut out = Vec::new();
    let parts = bf_squarefree(f)?;
    for (part, _) in parts {
        if part.y_valuation() >= 1 {
            out.push((node.clone(), [FElem::one(), FElem::zero()], 1));
        }
        let p = part.dehom();
        let Some(pd) = p.degree() else { continue };
        if pd == 0 {
            continue;
        }
        if node.is_base() {
            for (h, _) in crate::algebra::factorq::factor_over_q(&p) {
                match h.degree() {
                    Some(1) => {
                        out.push((node.clone(), [h.coeff(0).neg(), FElem::one()], 1));
                    }
                    Some(k) => {
                        let ext = node.extend(&h, name_hint)?;
                        let root = ext.generator();
                        out.push((ext, [root, FElem::one()], k));
                    }
                    None => unreachable!(),
                }
            }
        } else {
            let pm = p.monic()?;
            match pm.degree() {
                Some(1) => {
                    out.push((node.clone(), [pm.coeff(0).neg(), FElem::one()], 1));
                }
                Some(k) => {
                    let ext = node.extend(&pm, name_hint)?;
                    let root = ext.generator();
                    out.push((ext, [root, FElem::one()], k));
                }
                None => unreachable!(),
            }
        }
    }
    Ok(out)
}

/// Coordinates of an element relative to the product basis of the tower
/// levels strictly above `base_depth`.
fn relative_coords(e: &FElem, node: &FieldNode, base_depth: usize) -> Vec<FElem> {
    if node.depth() <= base_depth {
        return vec![e.clone()];
    }
    let FieldNode::Ext(desc) = node else { unreachable!() };
    let md = desc.modulus.degree().unwrap();
    let rep = if e.depth() == node.depth() {
        e.rep_poly(&desc.parent)
    } else {
        UniPoly::constant(desc.parent.clone(), e.clone())
    };
    let mut out = Vec::new();
    for i in 0..md {
        out.extend(relative_coords(&rep.coeff(i), &desc.parent, base_depth));
    }
    out
}

/// Minimal polynomial of `e` over the subfield at `base_depth` in the tower
/// of `node` (by linear algebra on powers).
pub fn minpoly_over(
    e: &FElem,
    node: &FieldNode,
    base_depth: usize,
) -> Result<UniPoly, CurveError> {
    let base = node.ancestor(base_depth).clone();
    let mut pows: Vec<Vec<FElem>> = Vec::new();
    let mut cur = FElem::one();
    loop {
        pows.push(relative_coords(&cur, node, base_depth));
        // try to express the last power in the span of the previous ones
        let k = pows.len() - 1;
        if k >= 1 {
            let dim = pows[0].len();
            let mut aug: FMat = (0..dim)
                .map(|r| {
                    let mut row: Vec<FElem> =
                        (0..k).map(|j| pows[j][r].clone()).collect();
                    row.push(pows[k][r].clone());
                    row
                })
                .collect();
            let pivots = fe_rref(&mut aug).map_err(CurveError::Split)?;
            if !pivots.contains(&k) {
                // dependent: monic minimal polynomial of degree k
                let mut coeffs = vec![FElem::zero(); k + 1];
                for (pi, &pc) in pivots.iter().enumerate() {
                    coeffs[pc] = aug[pi][k].neg();
                }
                coeffs[k] = FElem::one();
                return Ok(UniPoly::from_coeffs(base, coeffs));
            }
        }
        cur = cur.mul(e);
        if pows.len() > pows[0].len() + 1 {
            return Err(CurveError::internal("minimal polynomial search exceeded the degree"));
        }
    }
}

/// The distinct points of the first neighborhood, one entry per conjugacy
/// class over the node of the normalized matrix.
pub fn first_neighborhood(n: &NormalizedHB) -> Result<Vec<NeighborhoodPoint>, CurveError> {
    let base_depth = n.node.depth();
    if n.q3.deg() == 0 {
        return Ok(vec![]);
    }
    let sqf_q3 = {
        let parts = bf_squarefree(&n.q3)?;
        parts
            .iter()
            .map(|(f, _)| f.clone())
            .reduce(|a, b| a.mul(&b))
            .expect("nonzero form")
    };
    let classes = parameter_root_classes(&n.q3, &format!("e{}", base_depth + 1))?;
    let mut out: Vec<NeighborhoodPoint> = Vec::new();
    let mut covered = 0usize;
    for (cnode, root, _cdeg) in classes {
        let results = crate::algebra::field::with_splitting(&cnode, &mut |leaf| {
            let q0 = root[0].transport(leaf);
            let q1 = root[1].transport(leaf);
            let a = n.p2.transport(leaf).eval(&q0, &q1).neg();
            let b = n.p1.transport(leaf).eval(&q0, &q1);
            // normalized direction parameter
            let (tau, at_inf) = if b.is_zero() {
                (FElem::zero(), true)
            } else {
                (a.div(&b.clone())?, false)
            };
            Ok((a, b, tau, at_inf, leaf.clone()))
        });
        for (leaf, (a, b, tau, at_inf, _)) in results {
            let minpoly = if at_inf {
                UniPoly::var(n.node.clone())
            } else {
                minpoly_over(&tau, &leaf, base_depth)?
            };
            // dedupe against already-seen direction classes
            if out.iter().any(|np| {
                np.at_infinity == at_inf && (at_inf || np.minpoly.eq_poly(&minpoly))
            }) {
                continue;
            }
            // rebuild a clean node for the direction and compute the
            // multiplicity there
            let (dnode, da, db) = if at_inf {
                (n.node.clone(), FElem::one(), FElem::zero())
            } else if minpoly.degree() == Some(1) {
                (n.node.clone(), minpoly.coeff(0).neg(), FElem::one())
            } else {
                let ext = n.node.extend(&minpoly, &format!("d{}", base_depth + 1))?;
                let g = ext.generator();
                (ext, g, FElem::one())
            };
            let combo = n
                .p1
                .transport(&dnode)
                .scale(&da)
                .add(&n.p2.transport(&dnode).scale(&db));
            let g = bf_gcd(&n.q3.transport(&dnode), &combo)?;
            let mult = g.deg();
            if mult == 0 {
                return Err(CurveError::internal(
                    "a root of Q3 produced a constant gcd in its own direction",
                ));
            }
            // distinct roots of Q3 with this direction, for the coverage
            // bookkeeping
            let cover = bf_gcd(&sqf_q3.transport(&dnode), &combo)?.deg();
            let conjugacy = if at_inf { 1 } else { minpoly.degree().unwrap() };
            covered += conjugacy * cover;
            let _ = (a, b);
            out.push(NeighborhoodPoint {
                node: dnode,
                direction: [da, db],
                multiplicity: mult,
                conjugacy,
                minpoly,
                at_infinity: at_inf,
            });
        }
    }
    // bookkeeping: the direction classes partition the distinct roots
    if covered != sqf_q3.deg() {
        return Err(CurveError::internal(format!(
            "direction classes cover {} of {} distinct roots of Q3",
            covered,
            sqf_q3.deg()
        )));
    }
    Ok(out)
}

/// One node of the infinitely-near singularity tree.
#[derive(Clone, Debug)]
pub struct InfNode {
    pub multiplicity: usize,
    pub conjugacy: usize,
    pub children: Vec<InfNode>,
    /// False when the Triple Lemma could not resolve below this point.
    pub resolved: bool,
}

/// The tree of infinitely-near singular points above a normalized point.
/// `budget` is the remaining delta contribution available for infinitely
/// near points (delta_p minus binom(m_p, 2)); every singular neighborhood
/// point consumes conjugacy * binom(m', 2) of it.
pub fn neighborhood_tree(
    n: &NormalizedHB,
    budget: &mut i64,
    depth_left: usize,
) -> Result<Vec<InfNode>, CurveError> {
    let points = first_neighborhood(n)?;
    let mut out = Vec::new();
    for np in points {
        if np.multiplicity < 2 {
            continue;
        }
        let m = np.multiplicity;
        // Corollary-style bound: first-neighborhood multiplicities stay
        // within the smaller column degree
        if m > n.d - n.dj {
            return Err(CurveError::internal(format!(
                "neighborhood multiplicity {} exceeds the bound {}",
                m,
                n.d - n.dj
            )));
        }
        let cost = (np.conjugacy as i64) * binom2(m);
        if *budget < cost {
            return Err(CurveError::internal(
                "delta budget exhausted before the neighborhood closed",
            ));
        }
        *budget -= cost;
        let mut node = InfNode {
            multiplicity: m,
            conjugacy: np.conjugacy,
            children: Vec::new(),
            resolved: true,
        };
        if depth_left == 0 {
            node.resolved = false;
            out.push(node);
            continue;
        }
        // recurse when the blow-up matrix admits the Triple Lemma at this
        // point: its column degrees are (d - dj, d)
        if m != n.d - n.dj || *budget > 0 {
            // only descend when something could still be found or the
            // multiplicity sequence needs confirmation of termination
        }
        if m == n.d - n.dj && *budget >= 0 {
            let (first, second) = blowup_matrices(n)?;
            let (chart, cparam) = if !np.direction[0].is_zero() {
                (
                    first.transport(&np.node),
                    np.direction[1].div(&np.direction[0])?,
                )
            } else {
                (second.transport(&np.node), FElem::zero())
            };
            let p_next = [FElem::zero(), cparam, FElem::one()];
            match normalize_at_point(&chart, &p_next) {
                Ok(next) => {
                    node.children = neighborhood_tree(&next, budget, depth_left - 1)?;
                }
                Err(CurveError::InvalidInput(_)) => {
                    node.resolved = false;
                }
                Err(e) => return Err(e),
            }
        } else if *budget > 0 {
            node.resolved = false;
        }
        out.push(node);
    }
    Ok(out)
}

pub fn binom2(m: usize) -> i64 {
    (m as i64) * (m as i64 - 1) / 2
}
