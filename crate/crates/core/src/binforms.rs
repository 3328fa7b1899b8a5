//! Homogeneous binary forms in x, y over a coefficient field node.
//!
//! Coefficient index i holds the coefficient of x^i y^(deg-i).  The form
//! divisible by y loses degree under dehomogenization at y = 1; every gcd
//! and squarefree routine tracks that power of y explicitly so that the
//! multiplicity of the root [1:0] is preserved.

use crate::algebra::field::{FElem, FieldNode, SplitEvent};
use crate::algebra::linalg;
use crate::algebra::rat::Rat;
use crate::algebra::ring::CRing;
use crate::algebra::upoly::UniPoly;
use std::fmt;

#[derive(Clone, Debug)]
pub struct BinForm {
    node: FieldNode,
    deg: usize,
    coeffs: Vec<FElem>, // len == deg + 1
}

impl BinForm {
    pub fn new(node: FieldNode, deg: usize, mut coeffs: Vec<FElem>) -> BinForm {
        assert!(coeffs.len() <= deg + 1, "too many coefficients for the degree");
        coeffs.resize(deg + 1, FElem::zero());
        BinForm { node, deg, coeffs }
    }

    pub fn zero(node: FieldNode, deg: usize) -> BinForm {
        BinForm { node, deg, coeffs: vec![FElem::zero(); deg + 1] }
    }

    pub fn constant(node: FieldNode, c: FElem) -> BinForm {
        BinForm { node, deg: 0, coeffs: vec![c] }
    }

    pub fn from_int_coeffs(node: FieldNode, deg: usize, coeffs: &[i64]) -> BinForm {
        BinForm::new(node, deg, coeffs.iter().map(|&c| FElem::from_int(c)).collect())
    }

    /// The monomial coeff * x^i * y^(deg - i).
    pub fn monomial(node: FieldNode, deg: usize, i: usize, c: FElem) -> BinForm {
        let mut f = BinForm::zero(node, deg);
        f.coeffs[i] = c;
        f
    }

    pub fn node(&self) -> &FieldNode {
        &self.node
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn coeffs(&self) -> &[FElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FElem {
        self.coeffs.get(i).cloned().unwrap_or_else(FElem::zero)
    }

    pub fn add_term(&mut self, i: usize, c: FElem) {
        assert!(i <= self.deg);
        self.coeffs[i] = self.coeffs[i].add(&c);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eq_form(&self, other: &BinForm) -> bool {
        self.sub(other).is_zero()
    }

    /// Equality up to a nonzero scalar of the node (projective equality of
    /// the coefficient vectors); both forms assumed over comparable nodes.
    pub fn proportional(&self, other: &BinForm) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        if self.deg != other.deg {
            return false;
        }
        let i = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if other.coeffs[i].is_zero() {
            return false;
        }
        // cross-multiply to avoid inversions
        for j in 0..=self.deg {
            let lhs = self.coeffs[j].mul(&other.coeffs[i]);
            let rhs = other.coeffs[j].mul(&self.coeffs[i]);
            if !lhs.eq_elem(&rhs) {
                return false;
            }
        }
        true
    }

    pub fn add(&self, other: &BinForm) -> BinForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.deg, other.deg, "adding forms of different degrees");
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        BinForm { node: self.node.clone(), deg: self.deg, coeffs }
    }

    pub fn sub(&self, other: &BinForm) -> BinForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BinForm {
        BinForm {
            node: self.node.clone(),
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &BinForm) -> BinForm {
        let deg = self.deg + other.deg;
        let mut coeffs = vec![FElem::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        BinForm { node: self.node.clone(), deg, coeffs }
    }

    pub fn scale(&self, c: &FElem) -> BinForm {
        BinForm {
            node: self.node.clone(),
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> BinForm {
        let mut acc = BinForm::constant(self.node.clone(), FElem::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, a: &FElem, b: &FElem) -> FElem {
        // sum c_i a^i b^(deg-i)
        let mut acc = FElem::zero();
        let mut ai = FElem::one();
        let mut bpow = vec![FElem::one()];
        for k in 1..=self.deg {
            let nxt = bpow[k - 1].mul(b);
            bpow.push(nxt);
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&ai).mul(&bpow[self.deg - i]));
            }
            if i < self.deg {
                ai = ai.mul(a);
            }
        }
        acc
    }

    pub fn derivative_x(&self) -> BinForm {
        if self.deg == 0 {
            return BinForm::zero(self.node.clone(), 0);
        }
        let mut coeffs = vec![FElem::zero(); self.deg];
        for i in 1..=self.deg {
            coeffs[i - 1] = self.coeffs[i].mul(&FElem::from_int(i as i64));
        }
        BinForm { node: self.node.clone(), deg: self.deg - 1, coeffs }
    }

    pub fn derivative_y(&self) -> BinForm {
        if self.deg == 0 {
            return BinForm::zero(self.node.clone(), 0);
        }
        let mut coeffs = vec![FElem::zero(); self.deg];
        for i in 0..self.deg {
            coeffs[i] = self.coeffs[i].mul(&FElem::from_int((self.deg - i) as i64));
        }
        BinForm { node: self.node.clone(), deg: self.deg - 1, coeffs }
    }

    /// Power of y dividing the form (the multiplicity of the root [1:0]).
    pub fn y_valuation(&self) -> usize {
        assert!(!self.is_zero());
        let top = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.deg - top
    }

    /// Power of x dividing the form (the multiplicity of the root [0:1]).
    pub fn x_valuation(&self) -> usize {
        assert!(!self.is_zero());
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap()
    }

    /// Dehomogenize at y = 1.  The degree drops by `y_valuation`.
    pub fn dehom(&self) -> UniPoly {
        UniPoly::from_coeffs(self.node.clone(), self.coeffs.clone())
    }

    /// Homogenize a univariate polynomial to the given degree.
    pub fn homogenize(p: &UniPoly, deg: usize) -> BinForm {
        let d = p.degree().map(|d| d as i64).unwrap_or(-1);
        assert!(d <= deg as i64, "polynomial degree exceeds target");
        BinForm::new(p.node().clone(), deg, p.coeffs().to_vec())
    }

    /// Transport coefficients into a refined tower.
    pub fn transport(&self, into: &FieldNode) -> BinForm {
        BinForm {
            node: into.clone(),
            deg: self.deg,
            coeffs: self.coeffs.iter().map(|c| c.transport(into)).collect(),
        }
    }

    /// Normalize so the first nonzero coefficient in increasing x-power
    /// order is 1 ("up to unit" convention).
    pub fn normalized(&self) -> Result<BinForm, SplitEvent> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let i = self.x_valuation();
        let inv = self.coeffs[i].inv()?;
        Ok(self.scale(&inv))
    }

    /// Substitute x -> x + t*y (unipotent change of coordinates).
    pub fn shear_x(&self, t: i64) -> BinForm {
        // sum_i c_i (x + t y)^i y^(d-i)
        let node = self.node.clone();
        let lin = BinForm::new(node.clone(), 1, vec![FElem::from_int(t), FElem::one()]);
        let mut acc = BinForm::zero(node, self.deg);
        for i in 0..=self.deg {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let term = lin.pow(i).mul_y_power(self.deg - i).scale(&self.coeffs[i]);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn mul_y_power(&self, k: usize) -> BinForm {
        BinForm {
            node: self.node.clone(),
            deg: self.deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul_x_power(&self, k: usize) -> BinForm {
        let mut coeffs = vec![FElem::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BinForm { node: self.node.clone(), deg: self.deg + k, coeffs }
    }

    /// Exact division; panics when not divisible.
    pub fn div_exact(&self, div: &BinForm) -> BinForm {
        assert!(!div.is_zero(), "division by the zero form");
        if self.is_zero() {
            assert!(self.deg >= div.deg);
            return BinForm::zero(self.node.clone(), self.deg - div.deg);
        }
        let yv = div.y_valuation();
        let ys = self.y_valuation();
        assert!(ys >= yv, "division not exact (y-part)");
        let pn = self.dehom();
        let pd = div.dehom();
        let (q, r) = pn.divrem(&pd).expect("division over the given node split");
        assert!(r.is_zero(), "division not exact");
        BinForm::homogenize(&q, self.deg - div.deg)
    }

    /// Random form with small integer coefficients.
    pub fn random(node: FieldNode, deg: usize, rng: &mut impl rand::Rng) -> BinForm {
        loop {
            let coeffs: Vec<FElem> = (0..=deg)
                .map(|_| FElem::from_int(rng.gen_range(-9..=9)))
                .collect();
            let f = BinForm::new(node.clone(), deg, coeffs);
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn to_text(&self) -> String {
        self.to_text_named("x", "y")
    }

    /// Canonical serialization: terms in decreasing x-exponent,
    /// `c*x^a*y^b`, coefficient 1 omitted except for constants.
    pub fn to_text_named(&self, xn: &str, yn: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(bool, String)> = Vec::new(); // (negative, magnitude)
        for i in (0..=self.deg).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            let xp = i;
            let yp = self.deg - i;
            if xp > 0 {
                mono.push_str(xn);
                if xp > 1 {
                    mono.push_str(&format!("^{}", xp));
                }
            }
            if yp > 0 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(yn);
                if yp > 1 {
                    mono.push_str(&format!("^{}", yp));
                }
            }
            let (neg, coeff_mag) = match c.as_rat() {
                Some(r) => {
                    let neg = r < &Rat::from_integer(0.into());
                    let mag = if neg { (-r).to_string() } else { r.to_string() };
                    (neg, mag)
                }
                None => (false, format!("({})", c)),
            };
            let term = if mono.is_empty() {
                coeff_mag
            } else if coeff_mag == "1" {
                mono
            } else {
                format!("{}*{}", coeff_mag, mono)
            };
            parts.push((neg, term));
        }
        let mut s = String::new();
        for (k, (neg, term)) in parts.iter().enumerate() {
            if k == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(term);
        }
        s
    }
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// Zero-tolerant ring structure for determinant code over homogeneous
// matrices: the zero form acts as a degree-agnostic zero.
impl CRing for BinForm {
    fn zero() -> Self {
        BinForm::zero(FieldNode::Base, 0)
    }
    fn one() -> Self {
        BinForm::constant(FieldNode::Base, FElem::one())
    }
    fn add(&self, other: &Self) -> Self {
        BinForm::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        BinForm::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BinForm::zero(self.node.clone(), self.deg + other.deg);
        }
        BinForm::mul(self, other)
    }
    fn neg(&self) -> Self {
        BinForm::neg(self)
    }
    fn is_zero(&self) -> bool {
        BinForm::is_zero(self)
    }
}

/// Homogeneous gcd, normalized so the first nonzero coefficient in
/// increasing x-power order is 1.  The multiplicity of the root [1:0] is
/// preserved through the y-power bookkeeping.
pub fn bf_gcd(f: &BinForm, g: &BinForm) -> Result<BinForm, SplitEvent> {
    if f.is_zero() && g.is_zero() {
        panic!("gcd of two zero forms");
    }
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let yk = f.y_valuation().min(g.y_valuation());
    let pf = f.dehom();
    let pg = g.dehom();
    let core = pf.gcd(&pg)?;
    let deg = core.degree().unwrap_or(0) + yk;
    let hom = BinForm::homogenize(&core, deg);
    hom.normalized()
}

/// Squarefree decomposition of a binary form: pairs `(g_j, j)` with the
/// `g_j` squarefree, pairwise coprime, multiplicities strictly increasing,
/// and `f = unit * prod g_j^j`.  The y-power merges into its multiplicity
/// class.
pub fn bf_squarefree(f: &BinForm) -> Result<Vec<(BinForm, usize)>, SplitEvent> {
    assert!(!f.is_zero(), "squarefree decomposition of the zero form");
    let yk = f.y_valuation();
    let p = f.dehom();
    let mut classes: Vec<(BinForm, usize)> = Vec::new();
    if p.degree().unwrap_or(0) >= 1 {
        for (g, m) in p.squarefree_decomposition()? {
            let d = g.degree().unwrap();
            classes.push((BinForm::homogenize(&g, d), m));
        }
    }
    if yk > 0 {
        let y = BinForm::new(f.node().clone(), 1, vec![FElem::one(), FElem::zero()]);
        match classes.iter_mut().find(|(_, m)| *m == yk) {
            Some((g, _)) => {
                *g = g.mul(&y);
            }
            None => classes.push((y, yk)),
        }
        classes.sort_by_key(|(_, m)| *m);
    }
    Ok(classes)
}

/// Resultant of two binary forms via the full homogeneous Sylvester matrix.
/// Zero iff the forms share a root in the projective line over the closure.
pub fn bf_resultant(f: &BinForm, g: &BinForm) -> Result<FElem, SplitEvent> {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of a zero form");
    let m = f.deg;
    let n = g.deg;
    if m == 0 {
        return Ok(pow_elem(&f.coeffs[0], n));
    }
    if n == 0 {
        return Ok(pow_elem(&g.coeffs[0], m));
    }
    let size = m + n;
    // rows: y-shifts of f (n rows) then of g (m rows); columns indexed by
    // x-exponent in degree m+n-1... use the standard univariate layout on
    // the coefficient sequences (index = x-exponent)
    let mut mat: Vec<Vec<FElem>> = vec![vec![FElem::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = f.coeffs[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = g.coeffs[n - k].clone();
        }
    }
    if f.node.is_base() && g.node.is_base() {
        let q: linalg::QMat = mat
            .iter()
            .map(|row| row.iter().map(|e| e.as_rat().unwrap().clone()).collect())
            .collect();
        Ok(FElem::Rat(linalg::det_rational(&q)))
    } else {
        linalg::fe_det(&mat)
    }
}

fn pow_elem(c: &FElem, e: usize) -> FElem {
    let mut acc = FElem::one();
    for _ in 0..e {
        acc = acc.mul(c);
    }
    acc
}

/// Complete factorization of a rational binary form into irreducible forms
/// (the power of y handled explicitly); factors are normalized and sorted.
pub fn bf_factor_q(f: &BinForm) -> Vec<(BinForm, usize)> {
    assert!(f.node().is_base(), "rational factorization needs the base node");
    assert!(!f.is_zero());
    let yk = f.y_valuation();
    let p = f.dehom();
    let mut out: Vec<(BinForm, usize)> = Vec::new();
    if yk > 0 {
        let y = BinForm::new(f.node().clone(), 1, vec![FElem::one(), FElem::zero()]);
        out.push((y, yk));
    }
    if p.degree().unwrap_or(0) >= 1 {
        for (g, m) in crate::algebra::factorq::factor_over_q(&p) {
            let d = g.degree().unwrap();
            out.push((BinForm::homogenize(&g, d), m));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| cmp_coeffs(&a.0, &b.0))
            .then(a.1.cmp(&b.1))
    });
    out
}

fn cmp_coeffs(a: &BinForm, b: &BinForm) -> std::cmp::Ordering {
    for i in (0..=a.deg().min(b.deg())).rev() {
        let (ca, cb) = (a.coeff(i), b.coeff(i));
        match (ca.as_rat(), cb.as_rat()) {
            (Some(x), Some(y)) => match x.cmp(y) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            },
            _ => continue,
        }
    }
    std::cmp::Ordering::Equal
}
