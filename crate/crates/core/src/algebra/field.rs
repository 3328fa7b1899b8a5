//! Coefficient field nodes and their elements.
//!
//! A `FieldNode` is either the rationals or a quotient ring
//! `parent[t]/(m(t))` with `m` monic and squarefree over the parent.  The
//! modulus is not required to be irreducible: arithmetic proceeds as if the
//! node were a field, and when an inversion meets a zero divisor the
//! offending computation aborts with a [`SplitEvent`] carrying a proper
//! factorization of the modulus.  The caller reruns the computation in each
//! descendant node (see [`with_splitting`]).

use crate::algebra::rat::Rat;
use crate::algebra::upoly::UniPoly;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// One level of an extension tower.
#[derive(Debug)]
pub struct ExtDesc {
    pub parent: FieldNode,
    /// Monic and squarefree over `parent`, degree >= 1.
    pub modulus: UniPoly,
    pub name: String,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub enum FieldNode {
    Base,
    Ext(Arc<ExtDesc>),
}

/// Raised when an inversion meets a zero divisor of a reducible modulus.
/// `factors` multiply to the modulus of `at` (all monic); the computation
/// must be rerun over each descendant node.
#[derive(Debug, Clone)]
pub struct SplitEvent {
    pub at: Arc<ExtDesc>,
    pub factors: Vec<UniPoly>,
}

impl fmt::Display for SplitEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "modulus of {} splits into {} factors",
            self.at.name,
            self.factors.len()
        )
    }
}

/// An element of some field node.  The node is recoverable from the element:
/// `Rat` values live in the base field (and embed in every node), and an
/// `Ext` value carries the descriptor of its level.
#[derive(Clone, Debug)]
pub enum FElem {
    Rat(Rat),
    /// Coefficient vector over the parent node, degree < deg(modulus),
    /// trailing zeros trimmed.
    Ext(Arc<ExtDesc>, Vec<FElem>),
}

impl FieldNode {
    pub fn base() -> FieldNode {
        FieldNode::Base
    }

    pub fn depth(&self) -> usize {
        match self {
            FieldNode::Base => 0,
            FieldNode::Ext(d) => d.depth,
        }
    }

    pub fn parent(&self) -> Option<&FieldNode> {
        match self {
            FieldNode::Base => None,
            FieldNode::Ext(d) => Some(&d.parent),
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, FieldNode::Base)
    }

    /// The ancestor of `self` at the given tower depth.
    pub fn ancestor(&self, depth: usize) -> &FieldNode {
        let mut cur = self;
        while cur.depth() > depth {
            cur = cur.parent().expect("depth exhausted");
        }
        assert_eq!(cur.depth(), depth, "requested depth not in tower");
        cur
    }

    /// Extend this node by a root of `modulus`.  The modulus is made monic
    /// and checked squarefree; both steps can raise a split in `self`.
    pub fn extend(&self, modulus: &UniPoly, name: &str) -> Result<FieldNode, SplitEvent> {
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must be non-constant");
        let m = modulus.monic()?;
        let d = m.derivative();
        let g = m.gcd(&d)?;
        assert!(
            g.degree() == Some(0),
            "modulus {} is not squarefree over its parent",
            m
        );
        Ok(FieldNode::Ext(Arc::new(ExtDesc {
            parent: self.clone(),
            modulus: m,
            name: name.to_string(),
            depth: self.depth() + 1,
        })))
    }

    /// Rebuild the tower with the modulus at `ev.at` replaced by `factor`.
    /// Moduli of higher levels are transported (their coefficients reduced
    /// into the refined tower).
    pub fn refine(&self, at: &Arc<ExtDesc>, factor: &UniPoly) -> FieldNode {
        // collect the chain from base to self
        let mut chain: Vec<&FieldNode> = Vec::new();
        let mut cur = self;
        loop {
            chain.push(cur);
            match cur.parent() {
                Some(p) => cur = p,
                None => break,
            }
        }
        chain.reverse();
        let split_depth = at.depth;
        assert!(
            split_depth <= self.depth(),
            "split level not in this tower"
        );
        match &chain[split_depth] {
            FieldNode::Ext(d) => assert!(
                Arc::ptr_eq(d, at) || node_desc_eq(d, at),
                "split level does not match tower"
            ),
            FieldNode::Base => panic!("split at base"),
        }
        // levels below the split are shared
        let mut node = chain[split_depth - 1].clone();
        node = FieldNode::Ext(Arc::new(ExtDesc {
            parent: node.clone(),
            modulus: factor.retag(&node),
            name: at.name.clone(),
            depth: split_depth,
        }));
        for lvl in chain.iter().skip(split_depth + 1) {
            let FieldNode::Ext(d) = lvl else { unreachable!() };
            let m = d.modulus.transport(&node);
            node = FieldNode::Ext(Arc::new(ExtDesc {
                parent: node.clone(),
                modulus: m,
                name: d.name.clone(),
                depth: d.depth,
            }));
        }
        node
    }

    /// The generator of the top extension as an element.
    pub fn generator(&self) -> FElem {
        match self {
            FieldNode::Base => panic!("base field has no generator"),
            FieldNode::Ext(d) => {
                if d.modulus.degree() == Some(1) {
                    // t = -c0 in parent
                    d.modulus.coeff(0).neg()
                } else {
                    FElem::Ext(d.clone(), vec![FElem::zero(), FElem::one()])
                }
            }
        }
    }

    /// Product of the degrees of the tower moduli.
    pub fn total_degree(&self) -> usize {
        match self {
            FieldNode::Base => 1,
            FieldNode::Ext(d) => d.modulus.degree().unwrap() * d.parent.total_degree(),
        }
    }
}

fn node_desc_eq(a: &Arc<ExtDesc>, b: &Arc<ExtDesc>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    a.depth == b.depth && node_eq(&a.parent, &b.parent) && a.modulus.eq_poly(&b.modulus)
}

pub fn node_eq(a: &FieldNode, b: &FieldNode) -> bool {
    match (a, b) {
        (FieldNode::Base, FieldNode::Base) => true,
        (FieldNode::Ext(x), FieldNode::Ext(y)) => node_desc_eq(x, y),
        _ => false,
    }
}

impl FElem {
    pub fn zero() -> FElem {
        FElem::Rat(Rat::zero())
    }

    pub fn one() -> FElem {
        FElem::Rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> FElem {
        FElem::Rat(r)
    }

    pub fn from_int(n: i64) -> FElem {
        FElem::Rat(crate::algebra::rat::rat_i(n))
    }

    pub fn depth(&self) -> usize {
        match self {
            FElem::Rat(_) => 0,
            FElem::Ext(d, _) => d.depth,
        }
    }

    /// The node this element naturally lives in.
    pub fn node(&self) -> FieldNode {
        match self {
            FElem::Rat(_) => FieldNode::Base,
            FElem::Ext(d, _) => FieldNode::Ext(d.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FElem::Rat(r) => r.is_zero(),
            FElem::Ext(_, c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        self.eq_elem(&FElem::one())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            FElem::Rat(r) => Some(r),
            FElem::Ext(_, _) => None,
        }
    }

    /// Reduce to a rational if the representation is constant at every level.
    pub fn try_rat(&self) -> Option<Rat> {
        match self {
            FElem::Rat(r) => Some(r.clone()),
            FElem::Ext(_, c) => {
                if c.len() > 1 && c[1..].iter().any(|x| !x.is_zero()) {
                    None
                } else if c.is_empty() {
                    Some(Rat::zero())
                } else {
                    c[0].try_rat()
                }
            }
        }
    }

    fn lift_to(&self, desc: &Arc<ExtDesc>) -> Vec<FElem> {
        debug_assert!(self.depth() < desc.depth);
        if self.is_zero() {
            vec![]
        } else {
            vec![self.clone()]
        }
    }

    fn unify<'a>(a: &'a FElem, b: &'a FElem) -> (Arc<ExtDesc>, Vec<FElem>, Vec<FElem>) {
        // caller guarantees at least one side is Ext
        match (a, b) {
            (FElem::Ext(da, ca), FElem::Ext(db, cb)) => {
                if da.depth == db.depth {
                    debug_assert!(node_desc_eq(da, db), "elements from unrelated towers");
                    (da.clone(), ca.clone(), cb.clone())
                } else if da.depth > db.depth {
                    (da.clone(), ca.clone(), b.lift_to(da))
                } else {
                    (db.clone(), a.lift_to(db), cb.clone())
                }
            }
            (FElem::Ext(da, ca), _) => (da.clone(), ca.clone(), b.lift_to(da)),
            (_, FElem::Ext(db, cb)) => (db.clone(), a.lift_to(db), cb.clone()),
            _ => unreachable!(),
        }
    }

    pub fn add(&self, other: &FElem) -> FElem {
        match (self, other) {
            (FElem::Rat(x), FElem::Rat(y)) => FElem::Rat(x + y),
            _ => {
                let (d, ca, cb) = FElem::unify(self, other);
                let n = ca.len().max(cb.len());
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let x = ca.get(i).cloned().unwrap_or_else(FElem::zero);
                    let y = cb.get(i).cloned().unwrap_or_else(FElem::zero);
                    out.push(x.add(&y));
                }
                trim(&mut out);
                FElem::Ext(d, out)
            }
        }
    }

    pub fn sub(&self, other: &FElem) -> FElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FElem {
        match self {
            FElem::Rat(r) => FElem::Rat(-r),
            FElem::Ext(d, c) => FElem::Ext(d.clone(), c.iter().map(|x| x.neg()).collect()),
        }
    }

    pub fn mul(&self, other: &FElem) -> FElem {
        match (self, other) {
            (FElem::Rat(x), FElem::Rat(y)) => FElem::Rat(x * y),
            _ => {
                if self.is_zero() || other.is_zero() {
                    return FElem::zero();
                }
                let (d, ca, cb) = FElem::unify(self, other);
                let mut prod = vec![FElem::zero(); ca.len() + cb.len()];
                for (i, x) in ca.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in cb.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] = prod[i + j].add(&x.mul(y));
                    }
                }
                let red = rem_by_modulus(prod, &d);
                FElem::Ext(d, red)
            }
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> FElem {
        self.mul(&FElem::Rat(r.clone()))
    }

    /// Multiplicative inverse.  Panics on zero; raises a split when the
    /// representation is a zero divisor of a reducible modulus.
    pub fn inv(&self) -> Result<FElem, SplitEvent> {
        match self {
            FElem::Rat(r) => {
                assert!(!r.is_zero(), "division by the zero residue");
                Ok(FElem::Rat(r.recip()))
            }
            FElem::Ext(d, c) => {
                assert!(!self.is_zero(), "division by the zero residue");
                // level-one inversions dominate the fiber analysis; modular
                // images with rational reconstruction avoid the coefficient
                // blowup of the exact algorithm
                if d.parent.is_base() && d.modulus.degree().unwrap_or(0) >= 4 {
                    let rep: Vec<Rat> = c
                        .iter()
                        .map(|x| x.as_rat().expect("base coefficients").clone())
                        .collect();
                    let md: Vec<Rat> = d
                        .modulus
                        .coeffs()
                        .iter()
                        .map(|x| x.as_rat().expect("base coefficients").clone())
                        .collect();
                    if let Some(inv) = crate::algebra::modinv::try_invert_mod(&rep, &md) {
                        return Ok(FElem::Ext(
                            d.clone(),
                            inv.into_iter().map(FElem::Rat).collect(),
                        ));
                    }
                }
                let a = UniPoly::from_coeffs(d.parent.clone(), c.clone());
                let (g, s, _t) = a.extended_gcd(&d.modulus)?;
                // g = s*a + t*m, g monic
                match g.degree() {
                    Some(0) => {
                        // g is a unit constant (monic => 1)
                        let red = rem_by_modulus(s.coeffs().to_vec(), d);
                        Ok(FElem::Ext(d.clone(), red))
                    }
                    Some(k) if k < d.modulus.degree().unwrap() => {
                        let co = d.modulus.div_exact_monic(&g);
                        Err(SplitEvent {
                            at: d.clone(),
                            factors: vec![g, co],
                        })
                    }
                    _ => unreachable!("gcd cannot reach the modulus degree for a reduced nonzero element"),
                }
            }
        }
    }

    pub fn div(&self, other: &FElem) -> Result<FElem, SplitEvent> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn eq_elem(&self, other: &FElem) -> bool {
        self.sub(other).is_zero()
    }

    /// Rewrite this element's representation in a refinement of its tower.
    pub fn transport(&self, into: &FieldNode) -> FElem {
        match self {
            FElem::Rat(_) => self.clone(),
            FElem::Ext(d, c) => {
                let tgt = into.ancestor(d.depth);
                let FieldNode::Ext(td) = tgt else { panic!("transport target too shallow") };
                let parent = &td.parent;
                let moved: Vec<FElem> = c.iter().map(|x| x.transport(parent)).collect();
                let red = rem_by_modulus(moved, td);
                FElem::Ext(td.clone(), red)
            }
        }
    }

    /// Representation as a polynomial over the parent node (degree <
    /// modulus degree); constants come back as a constant polynomial.
    pub fn rep_poly(&self, parent: &FieldNode) -> UniPoly {
        match self {
            FElem::Rat(_) => UniPoly::from_coeffs(parent.clone(), vec![self.clone()]),
            FElem::Ext(d, c) => UniPoly::from_coeffs(d.parent.clone(), c.clone()),
        }
    }
}

fn trim(v: &mut Vec<FElem>) {
    while v.last().map(|x| x.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Remainder of a coefficient vector modulo the (monic) modulus of `d`.
/// Never splits: the divisor is monic.
fn rem_by_modulus(mut v: Vec<FElem>, d: &Arc<ExtDesc>) -> Vec<FElem> {
    let m = &d.modulus;
    let md = m.degree().expect("modulus nonzero");
    trim(&mut v);
    while v.len() > md {
        let lead = v.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = v.len() - md;
        for i in 0..md {
            let delta = lead.mul(&m.coeff(i));
            v[shift + i] = v[shift + i].sub(&delta);
        }
        trim(&mut v);
    }
    v
}

/// Run `f` over `node`; on a split, rerun it over every descendant.  Returns
/// one result per leaf branch, paired with the leaf node.  `f` receives the
/// node to compute in and must transport any captured inputs into it.
pub fn with_splitting<T>(
    node: &FieldNode,
    f: &mut dyn FnMut(&FieldNode) -> Result<T, SplitEvent>,
) -> Vec<(FieldNode, T)> {
    match f(node) {
        Ok(t) => vec![(node.clone(), t)],
        Err(ev) => {
            let mut out = Vec::new();
            for fac in &ev.factors {
                let refined = node.refine(&ev.at, fac);
                out.extend(with_splitting(&refined, f));
            }
            out
        }
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FElem::Rat(r) => write!(f, "{}", r),
            FElem::Ext(d, c) => {
                let p = UniPoly::from_coeffs(d.parent.clone(), c.clone());
                write!(f, "{}", p.display_with_var(&d.name))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rat_i};

    fn upoly_q(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(FieldNode::Base, coeffs)
    }

    #[test]
    fn gaussian_inverse() {
        // in Q[t]/(t^2+1): inverse(1+t) = (1-t)/2
        let node = FieldNode::Base.extend(&upoly_q(&[1, 0, 1]), "t").unwrap();
        let t = node.generator();
        let e = FElem::one().add(&t);
        let inv = e.inv().unwrap();
        let expected = FElem::one().sub(&t).mul_rat(&rat(1, 2));
        assert!(inv.eq_elem(&expected));
        assert!(e.mul(&inv).is_one());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let node = FieldNode::Base.extend(&upoly_q(&[-2, 0, 1]), "t").unwrap();
        let t = node.generator();
        assert!(t.mul(&t).eq_elem(&FElem::from_int(2)));
    }

    #[test]
    fn tower_depth_two_reduction() {
        // Q[t]/(t^3-2), then s^2 - t over it: s^4 = t^2
        let k1 = FieldNode::Base.extend(&upoly_q(&[-2, 0, 0, 1]), "t").unwrap();
        let t = k1.generator();
        let min_s = UniPoly::from_coeffs(k1.clone(), vec![t.neg(), FElem::zero(), FElem::one()]);
        let k2 = k1.extend(&min_s, "s").unwrap();
        let s = k2.generator();
        let s4 = s.mul(&s).mul(&s).mul(&s);
        assert!(s4.eq_elem(&t.mul(&t)));
    }

    #[test]
    fn zero_divisor_splits() {
        // in Q[t]/(t^2-1): inverting (t-1) splits into (t-1), (t+1)
        let node = FieldNode::Base.extend(&upoly_q(&[-1, 0, 1]), "t").unwrap();
        let t = node.generator();
        let e = t.sub(&FElem::one());
        let err = e.inv().unwrap_err();
        let mut degs: Vec<usize> = err.factors.iter().map(|f| f.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1]);
        let prod = err.factors[0].mul(&err.factors[1]);
        assert!(prod.eq_poly(&UniPoly::from_int_coeffs(FieldNode::Base, &[-1, 0, 1])));
        // the two descendants: t = 1 and t = -1
        let mut roots = Vec::new();
        for fac in &err.factors {
            let refined = node.refine(&err.at, fac);
            let g = refined.generator();
            roots.push(g.try_rat().unwrap());
        }
        roots.sort();
        assert_eq!(roots, vec![rat_i(-1), rat_i(1)]);
    }

    #[test]
    fn with_splitting_collects_branches() {
        let node = FieldNode::Base.extend(&upoly_q(&[-1, 0, 1]), "t").unwrap();
        let results = with_splitting(&node, &mut |n| {
            let t = n.generator();
            let e = t.sub(&FElem::one());
            if e.is_zero() {
                return Ok(Rat::zero());
            }
            let i = e.inv()?;
            Ok(i.try_rat().unwrap())
        });
        // branch t=1: e = 0; branch t=-1: e = -2, inverse -1/2
        let mut vals: Vec<Rat> = results.into_iter().map(|(_, v)| v).collect();
        vals.sort();
        assert_eq!(vals, vec![rat(-1, 2), rat_i(0)]);
    }
}
