//! Independent brute-force ground truth: implicitization by a resultant,
//! multiplicities of the implicit curve, and cross-validation of the
//! syzygy-based reports.
//!
//! The implicit equation is the resultant in (x, y) of the two column forms
//! of T * phi, computed as one fraction-free determinant over the
//! polynomial ring in T.  Multiplicity at a point is the least order of a
//! nonvanishing partial derivative, which in characteristic zero agrees
//! with the lowest-degree-term definition after moving the point to the
//! origin.

use crate::algebra::field::FElem;
use crate::algebra::linalg::{self, QMat};
use crate::algebra::rat::Rat;
use crate::algebra::tripoly::{resultant_t3, tripoly_det_bareiss, TriPoly};
use crate::binforms::{bf_gcd, bf_squarefree};
use crate::error::CurveError;
use crate::singloc::SingularPointReport;
use crate::syzygy::{birationality, HBMatrix, ParamTriple};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;

pub struct ImplicitCurve {
    pub f: TriPoly,
    pub degree: usize,
    /// Degree of the parameterization onto the image.
    pub r: usize,
}

/// Resultant of the two columns of T*phi in (x, y): a homogeneous
/// T-polynomial of degree d.  For birational input this is the reduced
/// implicit equation (normalized); otherwise it is a unit times F^r and the
/// reduced F is recovered by interpolation and verified exactly.
pub fn implicitize(g: &ParamTriple, phi: &HBMatrix) -> Result<ImplicitCurve, CurveError> {
    let (d1, d2) = phi.col_degs;
    let d = d1 + d2;
    // Sylvester matrix of the two columns in the x, y variables, entries in
    // Q[T]: column k of phi is a form of degree dk whose coefficients are
    // linear forms in T
    let lin = |k: usize, r: i64| -> TriPoly {
        if r < 0 {
            return TriPoly::zero();
        }
        let r = r as usize;
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero()];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = phi.entries[i][k].coeff(r).as_rat().unwrap().clone();
        }
        TriPoly::linear(&c)
    };
    let size = d;
    let mut mat: Vec<Vec<TriPoly>> = vec![vec![TriPoly::zero(); size]; size];
    // rows 0..d2: shifts of column 0 (degree d1); rows d2..d: shifts of
    // column 1 (degree d2); columns indexed by x-exponent in degree d-1
    for r in 0..d2 {
        for k in 0..=d1 {
            mat[r][r + k] = lin(0, d1 as i64 - k as i64);
        }
    }
    for r in 0..d1 {
        for k in 0..=d2 {
            mat[d2 + r][r + k] = lin(1, d2 as i64 - k as i64);
        }
    }
    let res = tripoly_det_bareiss(&mat);
    if res.is_zero() {
        return Err(CurveError::internal(
            "vanishing resultant (height-two violation)",
        ));
    }
    let res = res.normalized();
    let (r, e) = birationality(g)?;
    if r == 1 {
        check_vanishing(&res, g)?;
        return Ok(ImplicitCurve { f: res, degree: d, r });
    }
    // non-birational: recover the reduced equation by interpolation and
    // verify the r-th power identity exactly
    let f = interpolate_reduced(g, e)?;
    let mut pow = TriPoly::constant(Rat::one());
    for _ in 0..r {
        pow = pow.mul(&f);
    }
    if !pow.normalized().eq_poly(&res) {
        return Err(CurveError::internal(
            "interpolated equation does not reproduce the resultant power",
        ));
    }
    check_vanishing(&f, g)?;
    Ok(ImplicitCurve { f, degree: e, r })
}

fn check_vanishing(f: &TriPoly, g: &ParamTriple) -> Result<(), CurveError> {
    let composed = f.eval_binforms(&[g.g[0].clone(), g.g[1].clone(), g.g[2].clone()]);
    if !composed.is_zero() {
        return Err(CurveError::internal(
            "implicit equation does not vanish on the parameterization",
        ));
    }
    Ok(())
}

/// The unique degree-e curve through enough images of rational parameters.
fn interpolate_reduced(g: &ParamTriple, e: usize) -> Result<TriPoly, CurveError> {
    let monos: Vec<[u16; 3]> = {
        let mut v = Vec::new();
        for i in 0..=e {
            for j in 0..=(e - i) {
                v.push([i as u16, j as u16, (e - i - j) as u16]);
            }
        }
        v
    };
    let needed = e * e + 1;
    let mut rows: QMat = Vec::new();
    let mut seen: Vec<[Rat; 3]> = Vec::new();
    let mut t: i64 = 0;
    while seen.len() < needed && t < 10_000 {
        let p = g.eval(&FElem::from_int(t), &FElem::one());
        t += 1;
        let pr: Vec<Rat> = p.iter().map(|c| c.as_rat().unwrap().clone()).collect();
        if pr.iter().all(|c| c.is_zero()) {
            continue;
        }
        // projective dedupe
        let mut canon = pr.clone();
        if let Some(lead) = canon.iter().find(|c| !c.is_zero()).cloned() {
            for c in canon.iter_mut() {
                *c /= lead.clone();
            }
        }
        let key = [canon[0].clone(), canon[1].clone(), canon[2].clone()];
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let mut row = Vec::with_capacity(monos.len());
        for m in &monos {
            let mut v = Rat::one();
            for (idx, &exp) in m.iter().enumerate() {
                for _ in 0..exp {
                    v *= pr[idx].clone();
                }
            }
            row.push(v);
        }
        rows.push(row);
    }
    if seen.len() < needed {
        return Err(CurveError::internal("not enough distinct curve points for interpolation"));
    }
    let ns = linalg::nullspace(&rows);
    if ns.len() != 1 {
        return Err(CurveError::internal(format!(
            "interpolation kernel has dimension {} (expected 1)",
            ns.len()
        )));
    }
    let mut f = TriPoly::zero();
    for (m, c) in monos.iter().zip(ns[0].iter()) {
        f.insert(*m, c.clone());
    }
    Ok(f.normalized())
}

/// Multiplicity of the curve at a point: the least total order k such that
/// some k-th partial derivative does not vanish at the point (0 when the
/// point is off the curve).
pub fn multiplicity_at(f: &TriPoly, p: &[FElem; 3]) -> usize {
    assert!(!f.is_zero(), "multiplicity of the zero polynomial");
    let deg = f.total_degree().unwrap_or(0) as usize;
    let mut layer: Vec<TriPoly> = vec![f.clone()];
    for k in 0..=deg {
        if layer
            .iter()
            .any(|h| !h.eval_felem(p).is_zero())
        {
            return k;
        }
        let mut next = Vec::new();
        for h in &layer {
            for var in 0..3 {
                let d = h.derivative(var);
                if !d.is_zero() {
                    next.push(d);
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    deg + 1 // identically zero along every derivative: cannot happen for nonzero f
}

pub struct OracleReport {
    pub vanishes: bool,
    pub degree_ok: bool,
    pub multiplicities_ok: bool,
    pub point_count: Option<usize>,
    pub point_count_ok: Option<bool>,
    pub details: Vec<String>,
}

/// Cross-validate the syzygy-based reports against the implicit equation.
/// For quartics a direct search for the common roots of the three partial
/// derivatives (through pairwise resultants in generic coordinates) counts
/// the singular points independently.
pub fn cross_validate(
    g: &ParamTriple,
    phi: &HBMatrix,
    reports: &[SingularPointReport],
) -> Result<OracleReport, CurveError> {
    let curve = implicitize(g, phi)?;
    let mut details = Vec::new();
    let vanishes = {
        let composed =
            curve
                .f
                .eval_binforms(&[g.g[0].clone(), g.g[1].clone(), g.g[2].clone()]);
        composed.is_zero()
    };
    if !vanishes {
        details.push("implicit equation does not vanish on the parameterization".into());
    }
    let degree_ok = curve.degree == g.d / curve.r && curve.r == 1;
    if !degree_ok {
        details.push(format!(
            "degree check: deg F = {}, r = {}",
            curve.degree, curve.r
        ));
    }
    let mut multiplicities_ok = true;
    for (i, rep) in reports.iter().enumerate() {
        let m = multiplicity_at(&curve.f, &rep.point);
        if m != rep.m {
            multiplicities_ok = false;
            details.push(format!(
                "point {}: oracle multiplicity {} vs reported {}",
                i, m, rep.m
            ));
        }
    }
    let (point_count, point_count_ok) = if g.d == 4 {
        let expected: usize = reports.iter().map(|r| r.conjugacy).sum();
        let count = singular_point_count_quartic(&curve.f, expected)?;
        (Some(count), Some(count == expected))
    } else {
        (None, None)
    };
    if point_count_ok == Some(false) {
        details.push(format!(
            "direct singular point count {:?} vs reported {}",
            point_count,
            reports.iter().map(|r| r.conjugacy).sum::<usize>()
        ));
    }
    Ok(OracleReport {
        vanishes,
        degree_ok,
        multiplicities_ok,
        point_count,
        point_count_ok,
        details,
    })
}

/// Count the distinct common roots of the three partial derivatives by
/// projecting from [0:0:1] in random coordinates: the distinct roots of the
/// gcd of the pairwise resultants.  Retries a few coordinate changes and
/// returns the count that matches the expectation when seen, otherwise the
/// last computed count.
fn singular_point_count_quartic(f: &TriPoly, expected: usize) -> Result<usize, CurveError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0_CA7);
    let mut last = None;
    for _ in 0..4 {
        let m: [[Rat; 3]; 3] = {
            let mut m = [
                [Rat::zero(), Rat::zero(), Rat::zero()],
                [Rat::zero(), Rat::zero(), Rat::zero()],
                [Rat::zero(), Rat::zero(), Rat::zero()],
            ];
            for row in m.iter_mut() {
                for e in row.iter_mut() {
                    *e = Rat::from_integer(rng.gen_range(-6..=6).into());
                }
            }
            m
        };
        let q: QMat = m.iter().map(|r| r.to_vec()).collect();
        if linalg::det_rational(&q).is_zero() {
            continue;
        }
        let fc = f.linear_change(&m);
        let p: Vec<TriPoly> = (0..3).map(|v| fc.derivative(v)).collect();
        let deg3 = |h: &TriPoly| h.terms.keys().map(|e| e[2]).max().unwrap_or(0);
        if p.iter().any(|h| deg3(h) == 0) {
            continue;
        }
        let r01 = resultant_t3(&p[0], &p[1]);
        let r02 = resultant_t3(&p[0], &p[2]);
        let r12 = resultant_t3(&p[1], &p[2]);
        if r01.is_zero() || r02.is_zero() || r12.is_zero() {
            continue;
        }
        let g1 = bf_gcd(&r01, &r02)?;
        let g2 = bf_gcd(&g1, &r12)?;
        if g2.deg() == 0 {
            last = Some(0);
            if expected == 0 {
                return Ok(0);
            }
            continue;
        }
        let distinct: usize = bf_squarefree(&g2)?
            .iter()
            .map(|(part, _)| part.deg())
            .sum();
        last = Some(distinct);
        if distinct == expected {
            return Ok(distinct);
        }
    }
    last.ok_or_else(|| CurveError::internal("no usable coordinate change for the point count"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldNode;
    use crate::binforms::BinForm;
    use crate::singloc::analyze;
    use crate::syzygy::hb_kernel;

    #[test]
    fn implicit_equation_of_monomial_quartic() {
        // (x^4, x^3 y, y^4) -> T1^3 T3 - T2^4 up to unit
        let g = ParamTriple::from_int_coeffs(
            4,
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0],
        );
        let phi = hb_kernel(&g).unwrap();
        let curve = implicitize(&g, &phi).unwrap();
        assert_eq!((curve.degree, curve.r), (4, 1));
        let mut want = TriPoly::zero();
        want.insert([3, 0, 1], Rat::one());
        want.insert([0, 4, 0], -Rat::one());
        assert!(curve.f.eq_poly(&want.normalized()));
    }

    #[test]
    fn implicit_equation_of_conic() {
        let g = ParamTriple::from_int_coeffs(2, &[0, 0, 1], &[0, 1, 0], &[1, 0, 0]);
        let phi = hb_kernel(&g).unwrap();
        let curve = implicitize(&g, &phi).unwrap();
        assert_eq!((curve.degree, curve.r), (2, 1));
        // T1 T3 - T2^2 (normalized with lex leading coefficient one)
        let mut want = TriPoly::zero();
        want.insert([1, 0, 1], Rat::one());
        want.insert([0, 2, 0], -Rat::one());
        assert!(curve.f.eq_poly(&want));
    }

    #[test]
    fn nonbirational_power_extraction() {
        // (x^4, x^2 y^2, y^4): resultant = unit (T2^2 - T1 T3)^2, F reduced
        let g = ParamTriple::from_int_coeffs(
            4,
            &[0, 0, 0, 0, 1],
            &[0, 0, 1, 0, 0],
            &[1, 0, 0, 0, 0],
        );
        let phi = hb_kernel(&g).unwrap();
        let curve = implicitize(&g, &phi).unwrap();
        assert_eq!((curve.degree, curve.r), (2, 2));
        let mut want = TriPoly::zero();
        want.insert([1, 0, 1], Rat::one());
        want.insert([0, 2, 0], -Rat::one());
        assert!(curve.f.eq_poly(&want));
    }

    #[test]
    fn multiplicity_of_implicit_points() {
        // F = T1^3 T3 - T2^4 at [0:0:1] -> 3; on a smooth conic -> 1;
        // off-curve -> 0
        let mut f = TriPoly::zero();
        f.insert([3, 0, 1], Rat::one());
        f.insert([0, 4, 0], -Rat::one());
        let p = [FElem::zero(), FElem::zero(), FElem::one()];
        assert_eq!(multiplicity_at(&f, &p), 3);
        let mut conic = TriPoly::zero();
        conic.insert([0, 2, 0], Rat::one());
        conic.insert([1, 0, 1], -Rat::one());
        let smooth = [FElem::one(), FElem::zero(), FElem::zero()];
        assert_eq!(multiplicity_at(&conic, &smooth), 1);
        let off = [FElem::one(), FElem::from_int(2), FElem::one()];
        assert_eq!(multiplicity_at(&conic, &off), 0);
    }

    #[test]
    fn cross_validation_of_the_monomial_quartic() {
        let g = ParamTriple::from_int_coeffs(
            4,
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0],
        );
        let rep = analyze(&g).unwrap();
        let oracle = cross_validate(&g, &rep.phi, &rep.points).unwrap();
        assert!(oracle.vanishes && oracle.degree_ok && oracle.multiplicities_ok);
        assert_eq!(oracle.point_count, Some(1));
        assert_eq!(oracle.point_count_ok, Some(true));
    }

    #[test]
    fn cross_validation_of_a_three_point_quartic() {
        // one cusp and two nodes
        let b = |c: &[i64]| BinForm::from_int_coeffs(FieldNode::Base, 2, c);
        let (q1, q2, q3) = (b(&[0, 0, 1]), b(&[1, 1, 0]), b(&[1, 0, 1]));
        let z = BinForm::zero(FieldNode::Base, 2);
        let m = HBMatrix::new(
            [[q1.clone(), q1.clone()], [q2, z.clone()], [z, q3]],
            (2, 2),
        )
        .signed_minors();
        let g = ParamTriple::new(m[0].clone(), m[1].clone(), m[2].clone()).unwrap();
        let rep = analyze(&g).unwrap();
        let oracle = cross_validate(&g, &rep.phi, &rep.points).unwrap();
        assert!(oracle.vanishes && oracle.degree_ok && oracle.multiplicities_ok);
        let expected: usize = rep.points.iter().map(|r| r.conjugacy).sum();
        assert_eq!(oracle.point_count, Some(expected));
    }
}
