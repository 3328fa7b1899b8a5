//! Dense-enough trivariate polynomials over the rationals, used for
//! implicit equations in T1, T2, T3 and for the conductor's linear-form
//! matrices.

use crate::algebra::field::FElem;
use crate::algebra::rat::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in T1, T2, T3 keyed by exponent triples.
#[derive(Clone, Debug, Default)]
pub struct TriPoly {
    pub terms: BTreeMap<[u16; 3], Rat>,
}

impl TriPoly {
    pub fn zero() -> TriPoly {
        TriPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> TriPoly {
        let mut p = TriPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0, 0, 0], c);
        }
        p
    }

    pub fn var(i: usize) -> TriPoly {
        let mut e = [0u16; 3];
        e[i] = 1;
        let mut p = TriPoly::zero();
        p.terms.insert(e, Rat::one());
        p
    }

    /// Linear form from coefficients of (T1, T2, T3).
    pub fn linear(c: &[Rat; 3]) -> TriPoly {
        let mut p = TriPoly::zero();
        for i in 0..3 {
            if !c[i].is_zero() {
                let mut e = [0u16; 3];
                e[i] = 1;
                p.terms.insert(e, c[i].clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, e: [u16; 3], c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.insert(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> TriPoly {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> Option<u16> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e[0] + e[1] + e[2]);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Leading term under lexicographic order on exponent triples.
    fn lead(&self) -> Option<(&[u16; 3], &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; panics when the division leaves a remainder (the
    /// Bareiss eliminations that call this are exact by construction).
    pub fn div_exact(&self, div: &TriPoly) -> TriPoly {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = TriPoly::zero();
        let (dl, dc) = {
            let (e, c) = div.lead().unwrap();
            (*e, c.clone())
        };
        while let Some((rl, rc)) = rem.lead().map(|(e, c)| (*e, c.clone())) {
            assert!(
                rl[0] >= dl[0] && rl[1] >= dl[1] && rl[2] >= dl[2],
                "division not exact (leading monomial not divisible)"
            );
            let e = [rl[0] - dl[0], rl[1] - dl[1], rl[2] - dl[2]];
            let c = rc / dc.clone();
            let mut mono = TriPoly::zero();
            mono.insert(e, c);
            quo = quo.add(&mono);
            rem = rem.sub(&mono.mul(div));
        }
        quo
    }

    pub fn derivative(&self, var: usize) -> TriPoly {
        let mut out = TriPoly::zero();
        for (e, c) in self.terms.iter() {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.insert(e2, c * Rat::from_integer(e[var].into()));
        }
        out
    }

    /// Evaluate at field elements.
    pub fn eval_felem(&self, p: &[FElem; 3]) -> FElem {
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let mut pows: Vec<Vec<FElem>> = Vec::with_capacity(3);
        for x in p.iter() {
            let mut v = vec![FElem::one()];
            for k in 1..=maxdeg {
                let last = v[k - 1].mul(x);
                v.push(last);
            }
            pows.push(v);
        }
        let mut acc = FElem::zero();
        for (e, c) in self.terms.iter() {
            let t = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize])
                .mul_rat(c);
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute binary forms for the variables (all three of the same
    /// degree), producing a binary form.
    pub fn eval_binforms(&self, g: &[crate::binforms::BinForm; 3]) -> crate::binforms::BinForm {
        use crate::binforms::BinForm;
        let node = g[0].node().clone();
        let d = g[0].deg();
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        assert!(self.is_homogeneous(), "substitution needs a homogeneous polynomial");
        let target = d * maxdeg;
        let mut pows: Vec<Vec<BinForm>> = Vec::with_capacity(3);
        for gi in g.iter() {
            let mut v = vec![BinForm::constant(node.clone(), FElem::one())];
            for k in 1..=maxdeg {
                let nxt = v[k - 1].mul(gi);
                v.push(nxt);
            }
            pows.push(v);
        }
        let mut acc = BinForm::zero(node.clone(), target);
        for (e, c) in self.terms.iter() {
            let t = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize]);
            acc = acc.add(&t.scale(&FElem::Rat(c.clone())));
        }
        acc
    }

    /// Apply the linear substitution T_i -> sum_j m[j][i] T_j (the change of
    /// coordinates sending points p to p * m^{-1}; forms transform
    /// contravariantly).
    pub fn linear_change(&self, m: &[[Rat; 3]; 3]) -> TriPoly {
        let imgs: Vec<TriPoly> = (0..3)
            .map(|i| {
                let mut p = TriPoly::zero();
                for (j, row) in m.iter().enumerate() {
                    let mut e = [0u16; 3];
                    e[j] = 1;
                    p.insert(e, row[i].clone());
                }
                p
            })
            .collect();
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let mut pows: Vec<Vec<TriPoly>> = Vec::with_capacity(3);
        for img in imgs.iter() {
            let mut v = vec![TriPoly::constant(Rat::one())];
            for k in 1..=maxdeg {
                let nxt = v[k - 1].mul(img);
                v.push(nxt);
            }
            pows.push(v);
        }
        let mut acc = TriPoly::zero();
        for (e, c) in self.terms.iter() {
            let t = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize])
                .scale(c);
            acc = acc.add(&t);
        }
        acc
    }

    /// Normalize so that the lexicographically largest monomial has
    /// coefficient 1.
    pub fn normalized(&self) -> TriPoly {
        match self.lead() {
            None => TriPoly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eq_poly(&self, other: &TriPoly) -> bool {
        self.sub(other).is_zero()
    }
}

/// Determinant of a square matrix of trivariate polynomials by fraction-free
/// Gaussian elimination (Bareiss).
pub fn tripoly_det_bareiss(m: &[Vec<TriPoly>]) -> TriPoly {
    let n = m.len();
    if n == 0 {
        return TriPoly::constant(Rat::one());
    }
    let mut a: Vec<Vec<TriPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = TriPoly::constant(Rat::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return TriPoly::zero();
            };
            a.swap(k, sw);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev);
            }
            a[i][k] = TriPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Resultant of two polynomials with respect to T3: the Sylvester
/// determinant over Q[T1, T2], returned as a binary form in (T1, T2).
pub fn resultant_t3(f: &TriPoly, g: &TriPoly) -> crate::binforms::BinForm {
    use crate::algebra::field::FieldNode;
    use crate::binforms::BinForm;
    let node = FieldNode::Base;
    let deg3 = |p: &TriPoly| p.terms.keys().map(|e| e[2]).max().unwrap_or(0) as usize;
    let coeff3 = |p: &TriPoly, k: usize, total: usize| -> BinForm {
        // coefficient of T3^k is a binary form in (T1, T2) of degree total - k
        let mut bf = BinForm::zero(node.clone(), total - k);
        for (e, c) in p.terms.iter() {
            if e[2] as usize == k {
                bf.add_term(e[0] as usize, FElem::Rat(c.clone()));
            }
        }
        bf
    };
    assert!(f.is_homogeneous() && g.is_homogeneous());
    let df = f.total_degree().unwrap() as usize;
    let dg = g.total_degree().unwrap() as usize;
    let m = deg3(f);
    let n = deg3(g);
    assert!(m > 0 && n > 0, "resultant needs both degrees positive in T3");
    let size = m + n;
    let zero = BinForm::zero(node.clone(), 0);
    let mut mat: Vec<Vec<BinForm>> = vec![vec![zero; size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + m - k] = coeff3(f, k, df);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + n - k] = coeff3(g, k, dg);
        }
    }
    crate::algebra::ring::det_subsets(&mat)
}

impl crate::algebra::ring::CRing for TriPoly {
    fn zero() -> Self {
        TriPoly::zero()
    }
    fn one() -> Self {
        TriPoly::constant(<Rat as num_traits::One>::one())
    }
    fn add(&self, other: &Self) -> Self {
        TriPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TriPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        TriPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        TriPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        TriPoly::is_zero(self)
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["T1", "T2", "T3"];
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, name) in names.iter().enumerate() {
                match e[i] {
                    0 => {}
                    1 => {
                        if !mono.is_empty() {
                            mono.push('*');
                        }
                        mono.push_str(name);
                    }
                    k => {
                        if !mono.is_empty() {
                            mono.push('*');
                        }
                        mono.push_str(&format!("{}^{}", name, k));
                    }
                }
            }
            let cs = c.to_string();
            let (sign, mag) = if let Some(s) = cs.strip_prefix('-') {
                ("-", s.to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}
