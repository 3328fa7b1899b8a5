//! Fiber-by-fiber singularity analysis.
//!
//! The roots of the conductor form are exactly the parameters of singular
//! points.  Each Q-irreducible factor is processed once: a root is
//! adjoined, the image point computed, and the gcd of the generalized row
//! carries the multiplicity, branch count, and branch multiplicities.  The
//! factors whose roots lie in the same fiber are retired together, and the
//! delta invariant is half the sum of the conductor exponents over the
//! fiber.

use crate::algebra::field::{FElem, FieldNode};
use crate::binforms::{bf_gcd, bf_squarefree, BinForm};
use crate::biproj::{cp_configuration_of_matrix, CPLabel, McPoint};
use crate::blowup::{binom2, neighborhood_tree, normalize_at_point, InfNode};
use crate::conductor::{conductor_gcd_with, ConductorResult};
use crate::error::CurveError;
use crate::syzygy::{
    base_point_free, birationality, hb_kernel, is_balanced, HBMatrix, ParamTriple,
};

/// One conjugacy class of singular points.
pub struct SingularPointReport {
    /// Q-irreducible factor of the conductor form defining the parameter.
    pub factor: BinForm,
    /// Field of the point coordinates.
    pub node: FieldNode,
    /// The parameter on the line: [alpha : 1], or [1 : 0].
    pub parameter: [FElem; 2],
    /// Image point, first nonzero coordinate normalized to 1.
    pub point: [FElem; 3],
    pub m: usize,
    pub s: usize,
    pub branch_multiplicities: Vec<usize>,
    pub delta: i64,
    pub t_exponents: Vec<usize>,
    pub conjugacy: usize,
    /// Infinitely-near singularity tree (None when the point is not
    /// resolvable by the normal-form machinery and something remains).
    pub inf_tree: Option<Vec<InfNode>>,
    pub resolved: bool,
}

impl SingularPointReport {
    /// The multiplicity-sequence string in colon/comma notation, when the
    /// infinitely-near tree is a plain chain.
    pub fn multiplicity_sequence(&self) -> Option<String> {
        let tree = self.inf_tree.as_ref()?;
        if !self.resolved {
            return None;
        }
        let mut chain = vec![self.m];
        let mut level = tree;
        loop {
            let singular: Vec<&InfNode> = level.iter().collect();
            if singular.is_empty() {
                break;
            }
            if singular.len() > 1 || singular[0].conjugacy != 1 || !singular[0].resolved {
                return None;
            }
            chain.push(singular[0].multiplicity);
            level = &singular[0].children;
        }
        let head: Vec<String> = chain.iter().map(|m| m.to_string()).collect();
        let tail: Vec<&str> = std::iter::repeat("1").take(self.s).collect();
        Some(format!("{}:{}", head.join(":"), tail.join(",")))
    }
}

/// The nine singularity types a rational plane quartic can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarticType {
    pub name: &'static str,
    pub sequence: &'static str,
}

/// Lookup by (m, delta, s); total on the values realized by true quartics.
pub fn quartic_type(m: usize, delta: i64, s: usize) -> Option<QuarticType> {
    let t = |name, sequence| Some(QuarticType { name, sequence });
    match (m, delta, s) {
        (2, 1, 2) => t("A1", "2:1,1"),
        (2, 1, 1) => t("A2", "2:1"),
        (2, 2, 2) => t("A3", "2:2:1,1"),
        (2, 2, 1) => t("A4", "2:2:1"),
        (2, 3, 2) => t("A5", "2:2:2:1,1"),
        (2, 3, 1) => t("A6", "2:2:2:1"),
        (3, 3, 3) => t("D4", "3:1,1,1"),
        (3, 3, 2) => t("D5", "3:1,1"),
        (3, 3, 1) => t("E6", "3:1"),
        _ => None,
    }
}

pub struct QuarticClassification {
    /// Type of each report (parallel to the report list).
    pub per_point: Vec<QuarticType>,
    /// Canonical 13-way configuration label.
    pub configuration: String,
    /// Stratum tag in the full quartic poset (two configurations are
    /// identified there).
    pub qcp: String,
    /// Stratum tag in the balanced poset; None for triple-point curves.
    pub bqp: Option<String>,
}

/// Full analysis of one parameterization.
pub struct CurveReport {
    pub d: usize,
    pub base_point_free: bool,
    pub birational: bool,
    pub r: usize,
    pub e: usize,
    pub balanced: bool,
    pub phi: HBMatrix,
    pub conductor: ConductorResult,
    pub points: Vec<SingularPointReport>,
    pub jacobian_gcd: BinForm,
    pub multc: Option<(CPLabel, Vec<McPoint>)>,
    pub quartic: Option<QuarticClassification>,
    pub genus_check: bool,
}

/// Gcd of the three 2x2 minors of the transposed Jacobian of the
/// parameterization, normalized.
pub fn jacobian_gcd(g: &ParamTriple) -> BinForm {
    let dx: Vec<BinForm> = g.g.iter().map(|f| f.derivative_x()).collect();
    let dy: Vec<BinForm> = g.g.iter().map(|f| f.derivative_y()).collect();
    let minor = |i: usize, j: usize| dx[i].mul(&dy[j]).sub(&dx[j].mul(&dy[i]));
    let minors = [minor(0, 1), minor(0, 2), minor(1, 2)];
    let mut acc: Option<BinForm> = None;
    for m in minors.iter() {
        if m.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => m.normalized().expect("base field"),
            Some(g) => bf_gcd(&g, m).expect("base field"),
        });
    }
    acc.unwrap_or_else(|| BinForm::constant(g.g[0].node().clone(), FElem::one()))
}

/// Fiber-by-fiber singular point reports from the conductor factorization.
pub fn analyze_singularities(
    g: &ParamTriple,
    phi: &HBMatrix,
    cond: &ConductorResult,
) -> Result<Vec<SingularPointReport>, CurveError> {
    let (d1, d2) = phi.col_degs;
    let factors = &cond.factors;
    let mut remaining: Vec<usize> = factors.iter().map(|(f, _)| f.deg()).collect();
    let mut out: Vec<SingularPointReport> = Vec::new();
    for idx in 0..factors.len() {
        if remaining[idx] == 0 {
            continue;
        }
        let (factor, _t) = &factors[idx];
        let k = factor.deg();
        // adjoin the parameter
        let (node, q): (FieldNode, [FElem; 2]) = if factor.y_valuation() == 1 {
            (FieldNode::Base, [FElem::one(), FElem::zero()])
        } else {
            let p = factor.dehom().monic().expect("base field");
            if p.degree() == Some(1) {
                (FieldNode::Base, [p.coeff(0).neg(), FElem::one()])
            } else {
                let ext = FieldNode::Base.extend(&p, "a")?;
                let root = ext.generator();
                (ext, [root, FElem::one()])
            }
        };
        // image point: the raw coordinates stay integral in the generator
        // and keep the row arithmetic small; normalization happens once at
        // the end for the report
        let raw = g.eval(&q[0], &q[1]);
        if raw.iter().all(|c| c.is_zero()) {
            return Err(CurveError::internal("parameter maps to the zero vector"));
        }
        let phi_n = phi.transport(&node);
        let row = phi_n.row_combine(&raw);
        let delta_p = bf_gcd(&row[0], &row[1])?;
        let m = delta_p.deg();
        if m < 2 {
            return Err(CurveError::internal(
                "conductor root above a smooth point (gcd degree < 2)",
            ));
        }
        if m > d2 || (m < d2 && m > d1) {
            return Err(CurveError::internal(format!(
                "multiplicity {} violates the column-degree bounds ({}, {})",
                m, d1, d2
            )));
        }
        let classes = bf_squarefree(&delta_p)?;
        let mut branch_multiplicities = Vec::new();
        let mut s = 0usize;
        let mut sqf: Option<BinForm> = None;
        for (part, mult) in &classes {
            for _ in 0..part.deg() {
                branch_multiplicities.push(*mult);
            }
            s += part.deg();
            sqf = Some(match sqf {
                None => part.clone(),
                Some(f) => f.mul(part),
            });
        }
        branch_multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        let sqf = sqf.ok_or_else(|| CurveError::internal("empty fiber"))?;
        // fiber membership per conductor factor; with a single factor every
        // fiber root is one of its roots
        let mut b = vec![0usize; factors.len()];
        let mut t_exponents: Vec<usize> = Vec::new();
        let mut two_delta = 0usize;
        if factors.len() == 1 {
            b[0] = s;
            let t = factors[0].1;
            for _ in 0..s {
                t_exponents.push(t);
            }
            two_delta = s * t;
        } else {
            for (i, (f, t)) in factors.iter().enumerate() {
                // reduce the factor once before the gcd to keep the
                // Euclidean steps short
                let lifted = f.transport(&node).dehom();
                let sq_dehom = sqf.dehom();
                let common = if sq_dehom.degree().unwrap_or(0) == 0 {
                    // fiber root classes all at [1:0]
                    bf_gcd(&sqf, &f.transport(&node))?
                } else {
                    let (_, rem) = lifted.divrem(&sq_dehom)?;
                    let base = sqf.dehom().gcd(&rem)?;
                    let ydeg = if f.y_valuation() == 1 && sqf.y_valuation() == 1 {
                        1
                    } else {
                        0
                    };
                    crate::binforms::BinForm::homogenize(
                        &base,
                        base.degree().unwrap_or(0) + ydeg,
                    )
                };
                b[i] = common.deg();
                for _ in 0..b[i] {
                    t_exponents.push(*t);
                }
                two_delta += b[i] * t;
            }
        }
        let fiber_size: usize = b.iter().sum();
        if fiber_size != s {
            return Err(CurveError::internal(format!(
                "worklist accounting mismatch: fiber holds {} roots, gcd retirement saw {}",
                s, fiber_size
            )));
        }
        let a = b[idx];
        if a == 0 || k % a != 0 {
            return Err(CurveError::internal(
                "conjugacy accounting failed (self factor not in its own fiber)",
            ));
        }
        let conjugacy = k / a;
        for (i, bi) in b.iter().enumerate() {
            let retire = conjugacy * bi;
            if remaining[i] < retire {
                return Err(CurveError::internal("fiber retirement exceeded the root budget"));
            }
            remaining[i] -= retire;
        }
        if two_delta % 2 != 0 {
            return Err(CurveError::internal("odd conductor exponent sum over a fiber"));
        }
        let delta = (two_delta / 2) as i64;
        t_exponents.sort_unstable_by(|a, b| b.cmp(a));
        // infinitely-near structure
        let lead = raw.iter().find(|c| !c.is_zero()).unwrap();
        let inv = lead.inv()?;
        let point = [raw[0].mul(&inv), raw[1].mul(&inv), raw[2].mul(&inv)];
        let mut budget = delta - binom2(m);
        let (inf_tree, resolved) = if budget == 0 {
            (Some(vec![]), true)
        } else if m == d1 || m == d2 {
            match normalize_at_point(&phi_n, &point) {
                Ok(nf) => {
                    let tree = neighborhood_tree(&nf, &mut budget, g.d)?;
                    let ok = budget == 0 && all_resolved(&tree);
                    (Some(tree), ok)
                }
                Err(CurveError::InvalidInput(_)) => (None, false),
                Err(e) => return Err(e),
            }
        } else {
            (None, false)
        };
        out.push(SingularPointReport {
            factor: factor.clone(),
            node,
            parameter: q,
            point,
            m,
            s,
            branch_multiplicities,
            delta,
            t_exponents,
            conjugacy,
            inf_tree,
            resolved,
        });
    }
    if remaining.iter().any(|&r| r != 0) {
        return Err(CurveError::internal("unretired conductor roots after the worklist"));
    }
    Ok(out)
}

fn all_resolved(tree: &[InfNode]) -> bool {
    tree.iter().all(|n| n.resolved && all_resolved(&n.children))
}

/// Max-Noether budget: the delta invariants of a degree-d rational curve
/// sum to binom(d-1, 2).
pub fn genus_check(d: usize, points: &[SingularPointReport]) -> bool {
    let total: i64 = points.iter().map(|p| (p.conjugacy as i64) * p.delta).sum();
    total == binom2(d - 1)
}

/// The conductor exponent multiset expected for each quartic configuration.
fn chart_shape(config: &str) -> Option<Vec<usize>> {
    let v: Vec<usize> = match config {
        "(2:1,1)^3" => vec![1, 1, 1, 1, 1, 1],
        "(2:2:1,1),(2:1,1)" => vec![2, 2, 1, 1],
        "(2:1,1)^2,(2:1)" => vec![2, 1, 1, 1, 1],
        "(2:2:2:1,1)" => vec![3, 3],
        "(2:2:1),(2:1,1)" => vec![4, 1, 1],
        "(2:2:1,1),(2:1)" => vec![2, 2, 2],
        "(2:1,1),(2:1)^2" => vec![2, 2, 1, 1],
        "(2:2:2:1)" => vec![6],
        "(2:2:1),(2:1)" => vec![4, 2],
        "(2:1)^3" => vec![2, 2, 2],
        "(3:1,1,1)" => vec![2, 2, 2],
        "(3:1,1)" => vec![4, 2],
        "(3:1)" => vec![6],
        _ => return None,
    };
    Some(v)
}

/// Classify a quartic through the (m, delta, s) table; the conductor
/// exponent shape is cross-checked against the chart.
pub fn quartic_classify(
    points: &[SingularPointReport],
    cond: &ConductorResult,
) -> Result<QuarticClassification, CurveError> {
    let mut per_point = Vec::with_capacity(points.len());
    // expanded list including conjugate copies, for the configuration
    let mut expanded: Vec<QuarticType> = Vec::new();
    for p in points {
        let t = quartic_type(p.m, p.delta, p.s).ok_or_else(|| {
            CurveError::internal(format!(
                "(m, delta, s) = ({}, {}, {}) is not a quartic singularity",
                p.m, p.delta, p.s
            ))
        })?;
        per_point.push(t);
        for _ in 0..p.conjugacy {
            expanded.push(t);
        }
    }
    // canonical order: delta descending, then branch count descending
    expanded.sort_by(
        |x, y| match (type_delta(y).cmp(&type_delta(x)), type_s(y).cmp(&type_s(x))) {
            (std::cmp::Ordering::Equal, o) => o,
            (o, _) => o,
        },
    );
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < expanded.len() {
        let mut j = i;
        while j < expanded.len() && expanded[j] == expanded[i] {
            j += 1;
        }
        let count = j - i;
        if count == 1 {
            parts.push(format!("({})", expanded[i].sequence));
        } else {
            parts.push(format!("({})^{}", expanded[i].sequence, count));
        }
        i = j;
    }
    let configuration = parts.join(",");
    // chart cross-check
    let mut shape: Vec<usize> = Vec::new();
    for (f, e) in &cond.factors {
        for _ in 0..f.deg() {
            shape.push(*e);
        }
    }
    shape.sort_unstable_by(|a, b| b.cmp(a));
    let expect = chart_shape(&configuration).ok_or_else(|| {
        CurveError::internal(format!("configuration {} not in the 13-way list", configuration))
    })?;
    if shape != expect {
        return Err(CurveError::internal(format!(
            "conductor exponent shape {:?} does not match the chart row {:?} for {}",
            shape, expect, configuration
        )));
    }
    let qcp = match configuration.as_str() {
        "(2:2:1),(2:1,1)" | "(2:2:1,1),(2:1)" => {
            "(2:2:1),(2:1,1)=(2:2:1,1),(2:1)".to_string()
        }
        other => other.to_string(),
    };
    let bqp = if configuration.starts_with("(3") {
        None
    } else {
        Some(configuration.clone())
    };
    Ok(QuarticClassification { per_point, configuration, qcp, bqp })
}

fn type_delta(t: &QuarticType) -> i64 {
    match t.name {
        "A1" | "A2" => 1,
        "A3" | "A4" => 2,
        _ => 3,
    }
}

fn type_s(t: &QuarticType) -> usize {
    match t.name {
        "A1" | "A3" | "A5" => 2,
        "D4" => 3,
        "D5" => 2,
        _ => 1,
    }
}

/// Validity data for diagnosis without a full analysis.
pub struct Validity {
    pub linearly_independent: bool,
    pub base_point_free: bool,
    pub r_e: Option<(usize, usize)>,
}

pub fn diagnose(g: &ParamTriple) -> Result<Validity, CurveError> {
    let li = g.linearly_independent();
    let bpf = base_point_free(g);
    let r_e = if bpf { Some(birationality(g)?) } else { None };
    Ok(Validity { linearly_independent: li, base_point_free: bpf, r_e })
}

/// Full pipeline on a true triple.
pub fn analyze(g: &ParamTriple) -> Result<CurveReport, CurveError> {
    if !g.linearly_independent() {
        return Err(CurveError::invalid(
            "degenerate parameterization (linearly dependent forms)",
        ));
    }
    if !base_point_free(g) {
        return Err(CurveError::invalid("base points present"));
    }
    let (r, e) = birationality(g)?;
    if r != 1 {
        return Err(CurveError::invalid(format!(
            "not birational: generically {}-to-one onto a curve of degree {} (r = {}, e = {})",
            r, e, r, e
        )));
    }
    let phi = hb_kernel(g)?;
    let balanced = if g.d % 2 == 0 {
        is_balanced(g)?.0
    } else {
        false
    };
    let cond = conductor_gcd_with(g, &phi)?;
    let points = analyze_singularities(g, &phi, &cond)?;
    let jac = jacobian_gcd(g);
    // jacobian degree consistency
    let jac_deg: usize = jac.deg();
    let expect: usize = points
        .iter()
        .map(|p| p.conjugacy * (p.m - p.s))
        .sum();
    if jac_deg != expect {
        return Err(CurveError::internal(format!(
            "Jacobian gcd degree {} disagrees with sum(m - s) = {}",
            jac_deg, expect
        )));
    }
    let multc = if balanced {
        Some(cp_configuration_of_matrix(&phi)?)
    } else {
        None
    };
    let quartic = if g.d == 4 {
        Some(quartic_classify(&points, &cond)?)
    } else {
        None
    };
    let genus = genus_check(g.d, &points);
    if !genus {
        return Err(CurveError::internal(
            "Max-Noether budget violated: delta invariants do not sum to binom(d-1,2)",
        ));
    }
    Ok(CurveReport {
        d: g.d,
        base_point_free: true,
        birational: true,
        r,
        e,
        balanced,
        phi,
        conductor: cond,
        points,
        jacobian_gcd: jac,
        multc,
        quartic,
        genus_check: genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6_quartic() -> ParamTriple {
        ParamTriple::from_int_coeffs(
            4,
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 0],
            &[1, 0, 0, 0, 0],
        )
    }

    #[test]
    fn jacobian_of_monomial_quartic() {
        let g = e6_quartic();
        let j = jacobian_gcd(&g);
        assert_eq!(j.deg(), 2);
        // gcd = x^2
        let x2 = BinForm::from_int_coeffs(FieldNode::Base, 2, &[0, 0, 1]);
        assert!(j.proportional(&x2));
    }

    #[test]
    fn monomial_quartic_report() {
        let g = e6_quartic();
        let rep = analyze(&g).unwrap();
        assert!(rep.birational && rep.base_point_free);
        assert_eq!((rep.r, rep.e), (1, 4));
        assert!(!rep.balanced);
        assert_eq!(rep.points.len(), 1);
        let p = &rep.points[0];
        assert_eq!((p.m, p.s), (3, 1));
        assert_eq!(p.branch_multiplicities, vec![3]);
        assert_eq!(p.delta, 3);
        assert_eq!(p.conjugacy, 1);
        // point [0:0:1]
        assert!(p.point[0].is_zero() && p.point[1].is_zero() && p.point[2].is_one());
        let q = rep.quartic.as_ref().unwrap();
        assert_eq!(q.configuration, "(3:1)");
        assert_eq!(q.per_point[0].name, "E6");
        assert_eq!(p.multiplicity_sequence().as_deref(), Some("3:1"));
        assert!(rep.genus_check);
    }

    #[test]
    fn smooth_parameter_has_reduced_fiber() {
        let g = e6_quartic();
        let phi = hb_kernel(&g).unwrap();
        // q = [1:1] is a smooth parameter: the gcd of the row at its image
        // has degree 1
        let p = g.eval(&FElem::one(), &FElem::one());
        let row = phi.row_combine(&p);
        let d = bf_gcd(&row[0], &row[1]).unwrap();
        assert_eq!(d.deg(), 1);
    }

    #[test]
    fn oscnode_fixture_report() {
        // canonical c:c:c instance with Q3 = xy: oscnode (2:2:2:1,1)
        let q1 = BinForm::from_int_coeffs(FieldNode::Base, 2, &[1, 0, 1]);
        let q2 = BinForm::from_int_coeffs(FieldNode::Base, 2, &[0, 0, 1]);
        let q3 = BinForm::from_int_coeffs(FieldNode::Base, 2, &[0, 1, 0]);
        let z = BinForm::zero(FieldNode::Base, 2);
        let phi = HBMatrix::new(
            [
                [q1.clone(), q2.clone()],
                [q3.clone(), q1.clone()],
                [z, q3.clone()],
            ],
            (2, 2),
        );
        let m = phi.signed_minors();
        let g = ParamTriple::new(m[0].clone(), m[1].clone(), m[2].clone()).unwrap();
        let rep = analyze(&g).unwrap();
        assert_eq!(rep.points.len(), 1);
        let p = &rep.points[0];
        assert_eq!((p.m, p.s, p.delta), (2, 2, 3));
        assert_eq!(rep.quartic.as_ref().unwrap().configuration, "(2:2:2:1,1)");
        assert_eq!(p.multiplicity_sequence().as_deref(), Some("2:2:2:1,1"));
        // conductor shape l1^3 l2^3
        let mut shape: Vec<usize> = Vec::new();
        for (f, e) in &rep.conductor.factors {
            for _ in 0..f.deg() {
                shape.push(*e);
            }
        }
        shape.sort_unstable();
        assert_eq!(shape, vec![3, 3]);
    }

    #[test]
    fn genus_budget_of_random_quartics() {
        for g in crate::syzygy::sample_true_triples(4, 5, 31) {
            let rep = analyze(&g).unwrap();
            assert!(rep.genus_check);
            let total: i64 = rep.points.iter().map(|p| p.conjugacy as i64 * p.delta).sum();
            assert_eq!(total, 3);
        }
    }
}
