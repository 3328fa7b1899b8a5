//! Sparse multivariate polynomials with integer coefficients and packed
//! exponent keys.
//!
//! Built for the symbolic check of the generic Hilbert-Burch determinant
//! identity: up to 18 variables, 7 bits of exponent each, packed into a
//! `u128` so that monomial multiplication is a single addition.

use crate::algebra::ring::CRing;
use std::collections::HashMap;

const BITS: u32 = 7;
const MASK: u128 = (1 << BITS) - 1;

#[derive(Clone, Debug)]
pub struct ZMPoly {
    pub nv: usize,
    pub terms: HashMap<u128, i128>,
}

impl ZMPoly {
    pub fn zero_nv(nv: usize) -> ZMPoly {
        assert!(nv as u32 * BITS <= 128, "too many variables to pack");
        ZMPoly { nv, terms: HashMap::new() }
    }

    pub fn constant(nv: usize, c: i128) -> ZMPoly {
        let mut p = ZMPoly::zero_nv(nv);
        if c != 0 {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn var(nv: usize, i: usize) -> ZMPoly {
        assert!(i < nv);
        let mut p = ZMPoly::zero_nv(nv);
        p.terms.insert(1u128 << (BITS * i as u32), 1);
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: u128, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(key).or_insert(0);
        *e = e.checked_add(c).expect("coefficient overflow");
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn exponent(key: u128, i: usize) -> u32 {
        ((key >> (BITS * i as u32)) & MASK) as u32
    }

    /// Evaluate at integer points (used to spot-check the symbolic result).
    pub fn eval_i128(&self, xs: &[i128]) -> i128 {
        let mut acc: i128 = 0;
        for (&k, &c) in self.terms.iter() {
            let mut t = c;
            for (i, &x) in xs.iter().enumerate() {
                for _ in 0..Self::exponent(k, i) {
                    t = t.checked_mul(x).expect("evaluation overflow");
                }
            }
            acc = acc.checked_add(t).expect("evaluation overflow");
        }
        acc
    }
}

impl CRing for ZMPoly {
    fn zero() -> Self {
        ZMPoly::zero_nv(0)
    }

    fn one() -> Self {
        ZMPoly::constant(0, 1)
    }

    fn add(&self, other: &Self) -> Self {
        let nv = self.nv.max(other.nv);
        let mut out = ZMPoly { nv, terms: self.terms.clone() };
        for (&k, &c) in other.terms.iter() {
            out.insert(k, c);
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let nv = self.nv.max(other.nv);
        let mut out = ZMPoly { nv, terms: self.terms.clone() };
        for (&k, &c) in other.terms.iter() {
            out.insert(k, -c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let nv = self.nv.max(other.nv);
        let mut out = ZMPoly::zero_nv(nv);
        if self.terms.is_empty() || other.terms.is_empty() {
            return out;
        }
        out.terms.reserve(self.terms.len().max(other.terms.len()));
        for (&ka, &ca) in self.terms.iter() {
            for (&kb, &cb) in other.terms.iter() {
                // packed exponent addition; fields never overflow at the
                // degrees this crate produces (checked in debug builds)
                let k = ka + kb;
                debug_assert!((0..nv).all(|i| {
                    ZMPoly::exponent(k, i)
                        == ZMPoly::exponent(ka, i) + ZMPoly::exponent(kb, i)
                }));
                out.insert(k, ca.checked_mul(cb).expect("coefficient overflow"));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        ZMPoly {
            nv: self.nv,
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
