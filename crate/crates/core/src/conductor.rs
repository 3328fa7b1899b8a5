//! The conductor of the coordinate ring of the curve in the Veronese ring,
//! computed through a presentation matrix built from the Hilbert-Burch
//! matrix.
//!
//! The row vector [T1,T2,T3] * phi * N (with N the two-block monomial
//! matrix) expands as rho^(d) * M', a (d+1) x (d+2) matrix of linear forms.
//! Completing g1, g2, g3 to a monomial basis of the degree-d forms gives a
//! change of basis E'; the adjugate times M' with the first three rows
//! deleted presents the quotient of the Veronese by the coordinate ring.
//! Substituting g_i for T_i in the maximal minors and taking the gcd yields
//! the conductor form c_g of degree (d-1)(d-2), whose root exponents carry
//! the delta invariants.

use crate::algebra::field::{FElem, FieldNode};
use crate::algebra::linalg::{self, QMat};
use crate::algebra::rat::Rat;
use crate::algebra::tripoly::TriPoly;
use crate::binforms::{bf_factor_q, bf_gcd, BinForm};
use crate::error::CurveError;
use crate::syzygy::{HBMatrix, ParamTriple};
use num_traits::{One, Zero};

/// A matrix of linear forms in T1, T2, T3.
pub type TLinMatrix = Vec<Vec<TriPoly>>;

pub struct ConductorResult {
    /// The conductor form, degree (d-1)(d-2), normalized.
    pub c_g: BinForm,
    /// Q-irreducible factors with exponents.
    pub factors: Vec<(BinForm, usize)>,
    /// The d-1 minimal generators of the extended conductor ideal:
    /// c_g times the monomials of degree d-2.
    pub generators: Vec<BinForm>,
}

/// The presentation matrix M_g ((d-2) x (d+2), linear entries).
pub fn build_mg(g: &ParamTriple, phi: &HBMatrix) -> Result<TLinMatrix, CurveError> {
    let d = g.d;
    if d < 3 {
        return Err(CurveError::invalid("conductor machinery needs degree >= 3"));
    }
    if !g.linearly_independent() {
        return Err(CurveError::invalid("the three forms are linearly dependent"));
    }
    let mprime = build_mprime(g, phi);
    let eprime = basis_completion(g);
    let eadj = linalg::adjugate(&eprime);
    // M = (E * M') with the first three rows deleted
    let mut out: TLinMatrix = Vec::with_capacity(d - 2);
    for r in 3..=d {
        let mut row: Vec<TriPoly> = Vec::with_capacity(d + 2);
        for c in 0..(d + 2) {
            let mut acc = TriPoly::zero();
            for k in 0..=d {
                if eadj[r][k].is_zero() {
                    continue;
                }
                acc = acc.add(&mprime[k][c].scale(&eadj[r][k]));
            }
            row.push(acc);
        }
        out.push(row);
    }
    Ok(out)
}

/// The (d+1) x (d+2) matrix M' with [T1,T2,T3] phi N = rho^(d) M'.
pub fn build_mprime(g: &ParamTriple, phi: &HBMatrix) -> TLinMatrix {
    let d = g.d;
    let (d1, d2) = phi.col_degs;
    // T*phi as per-power linear forms: tphi[k][r] = coefficient of x^r in
    // column k, as a linear form in T
    let lin_at = |k: usize, r: i64| -> [Rat; 3] {
        let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
        if r < 0 {
            return out;
        }
        let r = r as usize;
        for (i, o) in out.iter_mut().enumerate() {
            *o = phi.entries[i][k].coeff(r).as_rat().unwrap().clone();
        }
        out
    };
    let mut m: TLinMatrix = vec![vec![TriPoly::zero(); d + 2]; d + 1];
    for (row, mrow) in m.iter_mut().enumerate() {
        // first block: a1 * x^t y^(d2-t), t = 0..=d2
        for t in 0..=d2 {
            let l = lin_at(0, row as i64 - t as i64);
            mrow[t] = TriPoly::linear(&l);
        }
        // second block: a2 * x^t y^(d1-t), t = 0..=d1
        for t in 0..=d1 {
            let l = lin_at(1, row as i64 - t as i64);
            mrow[d2 + 1 + t] = TriPoly::linear(&l);
        }
    }
    m
}

/// Complete g1, g2, g3 to a basis of the degree-d forms by appending
/// standard monomials x^i y^(d-i) in decreasing i, skipping those already
/// in the running span; returns the (d+1) x (d+1) change of basis with
/// columns the coefficient vectors.
pub fn basis_completion(g: &ParamTriple) -> QMat {
    let d = g.d;
    let mut cols: Vec<Vec<Rat>> = (0..3)
        .map(|j| {
            (0..=d)
                .map(|k| g.g[j].coeff(k).as_rat().unwrap().clone())
                .collect()
        })
        .collect();
    for i in (0..=d).rev() {
        if cols.len() == d + 1 {
            break;
        }
        let mut cand = vec![Rat::zero(); d + 1];
        cand[i] = Rat::one();
        let mut probe: QMat = cols.clone();
        probe.push(cand.clone());
        if linalg::rank(&probe) == cols.len() + 1 {
            cols.push(cand);
        }
    }
    assert_eq!(cols.len(), d + 1, "basis completion failed");
    // E'[r][k] = coefficient of x^r in the k-th basis form
    (0..=d)
        .map(|r| (0..=d).map(|k| cols[k][r].clone()).collect())
        .collect()
}

/// The conductor form and its factorization.
pub fn conductor_gcd(g: &ParamTriple) -> Result<ConductorResult, CurveError> {
    let phi = crate::syzygy::hb_kernel(g)?;
    conductor_gcd_with(g, &phi)
}

pub fn conductor_gcd_with(g: &ParamTriple, phi: &HBMatrix) -> Result<ConductorResult, CurveError> {
    let d = g.d;
    let m = build_mg(g, phi)?;
    let rows = d - 2;
    let cols = d + 2;
    // substitution table: every degree-(d-2) monomial in T evaluated at the
    // parameterization once, shared across all minors
    let mono_table: std::collections::BTreeMap<[u16; 3], BinForm> = {
        let mut pows: Vec<Vec<BinForm>> = Vec::with_capacity(3);
        for gi in g.g.iter() {
            let mut v = vec![BinForm::constant(FieldNode::Base, FElem::one())];
            for k in 1..=(d - 2) {
                let nxt = v[k - 1].mul(gi);
                v.push(nxt);
            }
            pows.push(v);
        }
        let mut t = std::collections::BTreeMap::new();
        for i in 0..=(d - 2) {
            for j in 0..=(d - 2 - i) {
                let k = d - 2 - i - j;
                let val = pows[0][i].mul(&pows[1][j]).mul(&pows[2][k]);
                t.insert([i as u16, j as u16, k as u16], val);
            }
        }
        t
    };
    // all maximal minors, substituted at the parameterization
    let mut subbed: Vec<BinForm> = Vec::new();
    let mut chosen: Vec<usize> = (0..rows).collect();
    loop {
        let sub: Vec<Vec<TriPoly>> = (0..rows)
            .map(|r| chosen.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let minor = crate::algebra::ring::det_subsets(&sub);
        if !minor.is_zero() {
            let mut val = BinForm::zero(FieldNode::Base, d * (d - 2));
            for (e, c) in minor.terms.iter() {
                val = val.add(&mono_table[e].scale(&FElem::Rat(c.clone())));
            }
            if !val.is_zero() {
                subbed.push(val);
            }
        }
        // next combination of columns
        let mut i = rows;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if chosen[i] < cols - rows + i {
                chosen[i] += 1;
                for j in i + 1..rows {
                    chosen[j] = chosen[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    if subbed.is_empty() {
        return Err(CurveError::internal("all substituted conductor minors vanished"));
    }
    let mut cg = subbed[0].clone();
    for v in subbed.iter().skip(1) {
        if cg.deg() == 0 {
            break;
        }
        cg = bf_gcd(&cg, v)?;
    }
    let cg = cg.normalized()?;
    let want = (d - 1) * (d - 2);
    if cg.deg() != want {
        return Err(CurveError::internal(format!(
            "conductor gcd has degree {} (expected {}); input may not be a true triple",
            cg.deg(),
            want
        )));
    }
    // the quotients minor / c_g span the full space of degree-(d-2) forms
    let mut qmat: QMat = Vec::new();
    for v in &subbed {
        let q = v.div_exact(&cg);
        qmat.push(
            (0..=(d - 2))
                .map(|k| q.coeff(k).as_rat().unwrap().clone())
                .collect(),
        );
    }
    if linalg::rank(&qmat) != d - 1 {
        return Err(CurveError::internal(
            "conductor quotients do not span the expected space",
        ));
    }
    let factors = bf_factor_q(&cg);
    let node = FieldNode::Base;
    let generators: Vec<BinForm> = (0..=(d - 2))
        .map(|i| cg.mul(&BinForm::monomial(node.clone(), d - 2, i, FElem::one())))
        .collect();
    Ok(ConductorResult { c_g: cg, factors, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syzygy::hb_kernel;
    use rand::Rng;
    use rand::SeedableRng;

    fn e6_quartic() -> ParamTriple {
        ParamTriple::from_int_coeffs(
            4,
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0],
        )
    }

    #[test]
    fn dimensions_for_the_monomial_quartic() {
        let g = e6_quartic();
        let phi = hb_kernel(&g).unwrap();
        let mp = build_mprime(&g, &phi);
        assert_eq!((mp.len(), mp[0].len()), (5, 6));
        let m = build_mg(&g, &phi).unwrap();
        assert_eq!((m.len(), m[0].len()), (2, 6));
        assert!(m
            .iter()
            .flatten()
            .all(|e| e.is_zero() || e.total_degree() == Some(1)));
    }

    #[test]
    fn mprime_identity_random_quartics() {
        // [T1,T2,T3] phi N = rho^(d) M' checked by evaluation
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for g in crate::syzygy::sample_true_triples(4, 3, 23) {
            let phi = hb_kernel(&g).unwrap();
            let mp = build_mprime(&g, &phi);
            let d = g.d;
            let (d1, d2) = phi.col_degs;
            for _ in 0..3 {
                let t: Vec<Rat> = (0..3)
                    .map(|_| Rat::from_integer(rng.gen_range(-5..=5).into()))
                    .collect();
                let xv = FElem::from_int(rng.gen_range(-3..=3));
                let yv = FElem::from_int(rng.gen_range(-3..=3));
                // lhs entries: (sum_i t_i phi[i][k]) * monomial
                let tphi: Vec<BinForm> = (0..2)
                    .map(|k| {
                        let mut acc = BinForm::zero(
                            FieldNode::Base,
                            if k == 0 { d1 } else { d2 },
                        );
                        for i in 0..3 {
                            acc = acc.add(&phi.entries[i][k].scale(&FElem::Rat(t[i].clone())));
                        }
                        acc
                    })
                    .collect();
                for col in 0..(d + 2) {
                    let lhs = if col <= d2 {
                        // a1 * x^col y^(d2-col)
                        let m = BinForm::monomial(FieldNode::Base, d2, col, FElem::one());
                        tphi[0].mul(&m).eval(&xv, &yv)
                    } else {
                        let tcol = col - d2 - 1;
                        let m = BinForm::monomial(FieldNode::Base, d1, tcol, FElem::one());
                        tphi[1].mul(&m).eval(&xv, &yv)
                    };
                    let mut rhs = FElem::zero();
                    for r in 0..=d {
                        let lin = mp[r][col].eval_felem(&[
                            FElem::Rat(t[0].clone()),
                            FElem::Rat(t[1].clone()),
                            FElem::Rat(t[2].clone()),
                        ]);
                        let mono = BinForm::monomial(FieldNode::Base, d, r, FElem::one())
                            .eval(&xv, &yv);
                        rhs = rhs.add(&lin.mul(&mono));
                    }
                    assert!(lhs.eq_elem(&rhs), "column {} mismatch", col);
                }
            }
        }
    }

    #[test]
    fn conductor_of_monomial_quartic_is_x6() {
        let g = e6_quartic();
        let res = conductor_gcd(&g).unwrap();
        assert_eq!(res.c_g.deg(), 6);
        // x^6 up to unit
        let x6 = BinForm::from_int_coeffs(FieldNode::Base, 6, &[0, 0, 0, 0, 0, 0, 1]);
        assert!(res.c_g.proportional(&x6));
        assert_eq!(res.factors.len(), 1);
        assert_eq!(res.factors[0].1, 6);
        assert_eq!(res.generators.len(), 3);
        assert!(res.generators.iter().all(|f| f.deg() == 8));
    }

    fn triple_from_shape(q1: &[i64], q2: &[i64], q3: &[i64]) -> ParamTriple {
        let b = |c: &[i64]| BinForm::from_int_coeffs(FieldNode::Base, 2, c);
        let (q1, q2, q3) = (b(q1), b(q2), b(q3));
        let minors = HBMatrix::new(
            [
                [q1.clone(), q1.clone()],
                [q2.clone(), BinForm::zero(FieldNode::Base, 2)],
                [BinForm::zero(FieldNode::Base, 2), q3.clone()],
            ],
            (2, 2),
        )
        .signed_minors();
        ParamTriple::new(minors[0].clone(), minors[1].clone(), minors[2].clone()).unwrap()
    }

    #[test]
    fn three_node_quartic_has_six_simple_roots() {
        // three squarefree pairwise-coprime quadrics: all three
        // multiplicity-2 points are ordinary nodes
        let g = triple_from_shape(&[0, 1, 0], &[-1, 0, 1], &[6, 5, 1]);
        let res = conductor_gcd(&g).unwrap();
        assert_eq!(res.c_g.deg(), 6);
        assert!(res.factors.iter().all(|(_, e)| *e == 1));
        let total: usize = res.factors.iter().map(|(f, _)| f.deg()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn canonical_instance_with_one_cusp() {
        // Q1 = x^2 makes [1:0:0] a cusp: shape l1^2 l2 l3 l4 l5
        let g = triple_from_shape(&[0, 0, 1], &[1, 1, 0], &[1, 0, 1]);
        let res = conductor_gcd(&g).unwrap();
        assert_eq!(res.c_g.deg(), 6);
        let mut shape: Vec<usize> = Vec::new();
        for (f, e) in &res.factors {
            for _ in 0..f.deg() {
                shape.push(*e);
            }
        }
        shape.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(shape, vec![2, 1, 1, 1, 1]);
    }
}
