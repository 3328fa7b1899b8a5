//! Dense univariate polynomials over a coefficient field node.

use crate::algebra::field::{FElem, FieldNode, SplitEvent};
use crate::algebra::rat::Rat;
use std::fmt;

/// Polynomial in one variable; `coeffs[i]` is the coefficient of the i-th
/// power, trailing zeros trimmed.  The zero polynomial has an empty vector.
#[derive(Clone, Debug)]
pub struct UniPoly {
    node: FieldNode,
    coeffs: Vec<FElem>,
}

impl UniPoly {
    pub fn from_coeffs(node: FieldNode, mut coeffs: Vec<FElem>) -> UniPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { node, coeffs }
    }

    pub fn from_int_coeffs(node: FieldNode, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(node, coeffs.iter().map(|&c| FElem::from_int(c)).collect())
    }

    pub fn from_rat_coeffs(node: FieldNode, coeffs: &[Rat]) -> UniPoly {
        UniPoly::from_coeffs(node, coeffs.iter().map(|c| FElem::Rat(c.clone())).collect())
    }

    pub fn zero(node: FieldNode) -> UniPoly {
        UniPoly { node, coeffs: vec![] }
    }

    pub fn one(node: FieldNode) -> UniPoly {
        UniPoly::constant(node, FElem::one())
    }

    pub fn constant(node: FieldNode, c: FElem) -> UniPoly {
        UniPoly::from_coeffs(node, vec![c])
    }

    /// The variable itself.
    pub fn var(node: FieldNode) -> UniPoly {
        UniPoly::from_coeffs(node, vec![FElem::zero(), FElem::one()])
    }

    pub fn node(&self) -> &FieldNode {
        &self.node
    }

    pub fn coeffs(&self) -> &[FElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FElem {
        self.coeffs.get(i).cloned().unwrap_or_else(FElem::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FElem {
        self.coeffs.last().cloned().unwrap_or_else(FElem::zero)
    }

    /// Same coefficients, relabeled node (used when a structurally equal
    /// node object replaces the original).
    pub fn retag(&self, node: &FieldNode) -> UniPoly {
        UniPoly { node: node.clone(), coeffs: self.coeffs.clone() }
    }

    /// Transport all coefficients into a refinement of the tower and
    /// re-trim (coefficients may collapse to zero in a branch).
    pub fn transport(&self, into: &FieldNode) -> UniPoly {
        UniPoly::from_coeffs(
            into.clone(),
            self.coeffs.iter().map(|c| c.transport(into)).collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        UniPoly::from_coeffs(self.node.clone(), out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            node: self.node.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.node.clone());
        }
        let mut out = vec![FElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(self.node.clone(), out)
    }

    pub fn mul_elem(&self, c: &FElem) -> UniPoly {
        UniPoly::from_coeffs(
            self.node.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![FElem::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly { node: self.node.clone(), coeffs: out }
    }

    /// Quotient and remainder; inverts the leading coefficient of the
    /// divisor, which may split over an extension node.
    pub fn divrem(&self, div: &UniPoly) -> Result<(UniPoly, UniPoly), SplitEvent> {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().map(|d| d < dd).unwrap_or(true) {
            return Ok((UniPoly::zero(self.node.clone()), self.clone()));
        }
        let lc_inv = div.leading().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FElem::zero(); rem.len() - dd];
        while rem.len() > dd {
            let lead = rem.last().unwrap().clone();
            let k = rem.len() - 1 - dd;
            if !lead.is_zero() {
                let q = lead.mul(&lc_inv);
                for i in 0..dd {
                    let delta = q.mul(&div.coeffs[i]);
                    rem[k + i] = rem[k + i].sub(&delta);
                }
                quo[k] = q;
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Ok((
            UniPoly::from_coeffs(self.node.clone(), quo),
            UniPoly::from_coeffs(self.node.clone(), rem),
        ))
    }

    /// Exact division by a monic polynomial; panics if the remainder is
    /// nonzero.  Never splits.
    pub fn div_exact_monic(&self, div: &UniPoly) -> UniPoly {
        assert!(div.leading().is_one(), "divisor must be monic");
        let (q, r) = self.divrem(div).expect("monic division cannot split");
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn monic(&self) -> Result<UniPoly, SplitEvent> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.leading().inv()?;
        Ok(self.mul_elem(&inv))
    }

    /// Monic greatest common divisor.  Over the base field the primitive
    /// pseudo-remainder sequence over the integers avoids the coefficient
    /// blowup of rational elimination; over extensions the Euclidean
    /// algorithm runs directly (and may split).
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly, SplitEvent> {
        if self.node.is_base() {
            return Ok(gcd_base(self, other));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns monic `g` and `(s, t)` with `g = s*a + t*b`.
    pub fn extended_gcd(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly), SplitEvent> {
        let node = self.node.clone();
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one(node.clone());
        let mut s1 = UniPoly::zero(node.clone());
        let mut t0 = UniPoly::zero(node.clone());
        let mut t1 = UniPoly::one(node.clone());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let lc_inv = r0.leading().inv()?;
        Ok((
            r0.mul_elem(&lc_inv),
            s0.mul_elem(&lc_inv),
            t0.mul_elem(&lc_inv),
        ))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.node.clone());
        }
        let out: Vec<FElem> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&FElem::from_int(i as i64)))
            .collect();
        UniPoly::from_coeffs(self.node.clone(), out)
    }

    pub fn eval(&self, x: &FElem) -> FElem {
        let mut acc = FElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(self.node.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UniPoly::constant(self.node.clone(), c.clone()));
        }
        acc
    }

    pub fn eq_poly(&self, other: &UniPoly) -> bool {
        self.sub(other).is_zero()
    }

    /// Yun's squarefree decomposition (characteristic zero): returns pairs
    /// `(g_j, j)` with `self = lc * prod g_j^j`, each `g_j` monic squarefree,
    /// pairwise coprime, and the multiplicities strictly increasing.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>, SplitEvent> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        if self.degree() == Some(0) {
            return Ok(vec![]);
        }
        let f = self.monic()?;
        let df = f.derivative();
        let u = f.gcd(&df)?;
        let mut v = f.div_exact_monic(&u);
        let (mut w, r) = df.divrem(&u)?;
        assert!(r.is_zero());
        let mut out = Vec::new();
        let mut i = 1usize;
        while v.degree() != Some(0) {
            let z = w.sub(&v.derivative());
            let h = v.gcd(&z)?;
            if h.degree() != Some(0) {
                out.push((h.clone(), i));
            }
            v = v.div_exact_monic(&h);
            w = z.div_exact_monic(&h);
            i += 1;
        }
        Ok(out)
    }

    pub fn display_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff_str = match c.as_rat() {
                Some(r) => {
                    if i > 0 && r.to_string() == "1" {
                        String::new()
                    } else if i > 0 && r.to_string() == "-1" {
                        "-".to_string()
                    } else {
                        r.to_string()
                    }
                }
                None => format!("({})", c),
            };
            let var_str = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let term = match (coeff_str.as_str(), var_str.as_str()) {
                ("", v) => v.to_string(),
                ("-", v) => format!("-{}", v),
                (cs, "") => cs.to_string(),
                (cs, v) => format!("{}*{}", cs, v),
            };
            parts.push(term);
        }
        let mut s = String::new();
        for (k, t) in parts.iter().enumerate() {
            if k == 0 {
                s.push_str(t);
            } else if let Some(stripped) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with_var("t"))
    }
}

/// The monic gcd of two polynomials over the same node.
pub fn upoly_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, SplitEvent> {
    a.gcd(b)
}

/// Primitive pseudo-remainder gcd over the integers, returned monic.
fn gcd_base(a: &UniPoly, b: &UniPoly) -> UniPoly {
    use num_bigint::BigInt;
    let to_int = |p: &UniPoly| -> Vec<BigInt> {
        let rats: Vec<Rat> = p
            .coeffs()
            .iter()
            .map(|c| c.as_rat().expect("base coefficients").clone())
            .collect();
        let l = crate::algebra::rat::denom_lcm(&rats);
        rats.iter().map(|r| r.numer() * (&l / r.denom())).collect()
    };
    let strip = |v: &mut Vec<BigInt>| {
        while v.last().map(|c| c == &BigInt::from(0)).unwrap_or(false) {
            v.pop();
        }
        let g = crate::algebra::rat::numer_gcd(v);
        if g > BigInt::from(1) {
            for c in v.iter_mut() {
                *c = &*c / &g;
            }
        }
    };
    if a.is_zero() {
        return b.monic().expect("base field");
    }
    if b.is_zero() {
        return a.monic().expect("base field");
    }
    let mut x = to_int(a);
    let mut y = to_int(b);
    strip(&mut x);
    strip(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        // pseudo-remainder: a power of lc(y) times x, reduced by y
        let dy = y.len() - 1;
        let lc = y.last().unwrap().clone();
        let mut rem = x.clone();
        while rem.len() > dy {
            let lead = rem.pop().unwrap();
            let k = rem.len() - dy;
            if lead.is_abs_nonzero() {
                // rem := lc * rem - lead * x^k * y (top position cancels)
                for c in rem.iter_mut() {
                    *c = &*c * &lc;
                }
                for i in 0..dy {
                    rem[k + i] = &rem[k + i] - &lead * &y[i];
                }
            }
            while rem.last().map(|c| c == &BigInt::from(0)).unwrap_or(false) {
                rem.pop();
            }
        }
        strip(&mut rem);
        x = y;
        y = rem;
    }
    let coeffs: Vec<FElem> = x
        .iter()
        .map(|c| FElem::Rat(Rat::from_integer(c.clone())))
        .collect();
    UniPoly::from_coeffs(FieldNode::Base, coeffs)
        .monic()
        .expect("base field")
}

trait AbsNonzero {
    fn is_abs_nonzero(&self) -> bool;
}

impl AbsNonzero for num_bigint::BigInt {
    fn is_abs_nonzero(&self) -> bool {
        use num_traits::Zero as _;
        !self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> UniPoly {
        UniPoly::from_int_coeffs(FieldNode::Base, c)
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2-1, x^3-1) = x-1
        let g = upoly_gcd(&qp(&[-1, 0, 1]), &qp(&[-1, 0, 0, 1])).unwrap();
        assert!(g.eq_poly(&qp(&[-1, 1])));
        // gcd(f, 0) = monic(f)
        let f = qp(&[2, 4]);
        let g = upoly_gcd(&f, &UniPoly::zero(FieldNode::Base)).unwrap();
        assert!(g.eq_poly(&qp(&[1, 2]).monic().unwrap()));
        assert!(g.leading().is_one());
    }

    #[test]
    fn squarefree_x3_plus_x2() {
        // x^3 + x^2 = x^2 (x+1) -> [(x+1, 1), (x, 2)]
        let f = qp(&[0, 0, 1, 1]);
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec[0].0.eq_poly(&qp(&[1, 1])));
        assert_eq!(dec[0].1, 1);
        assert!(dec[1].0.eq_poly(&qp(&[0, 1])));
        assert_eq!(dec[1].1, 2);
    }

    #[test]
    fn squarefree_pure_power() {
        // x^6 -> [(x, 6)]
        let mut c = vec![0i64; 7];
        c[6] = 1;
        let dec = qp(&c).squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 1);
        assert!(dec[0].0.eq_poly(&qp(&[0, 1])));
        assert_eq!(dec[0].1, 6);
    }

    #[test]
    fn squarefree_derived_example() {
        // (x^2-2)^2 (x-1) -> [(x-1, 1), (x^2-2, 2)]
        let f = qp(&[-2, 0, 1]).mul(&qp(&[-2, 0, 1])).mul(&qp(&[-1, 1]));
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert!(dec[0].0.eq_poly(&qp(&[-1, 1])));
        assert_eq!(dec[0].1, 1);
        assert!(dec[1].0.eq_poly(&qp(&[-2, 0, 1])));
        assert_eq!(dec[1].1, 2);
    }

    #[test]
    fn extended_gcd_identity() {
        let a = qp(&[1, 3, 3, 1]);
        let b = qp(&[-1, 0, 1]);
        let (g, s, t) = a.extended_gcd(&b).unwrap();
        assert!(s.mul(&a).add(&t.mul(&b)).eq_poly(&g));
        assert!(g.eq_poly(&qp(&[1, 1])));
    }
}
