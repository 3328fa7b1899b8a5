//! Complete factorization of univariate polynomials over the rationals.
//!
//! The pipeline is the classical one: squarefree decomposition, reduction to
//! a primitive integer polynomial, factorization modulo a good machine
//! prime, Hensel lifting to a power of the prime past the Mignotte bound,
//! and subset recombination of the lifted factors.

use crate::algebra::field::{FElem, FieldNode};
use crate::algebra::rat::{denom_lcm, Rat};
use crate::algebra::upoly::UniPoly;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Complete factorization into monic irreducible rational polynomials with
/// multiplicities, sorted by (degree, coefficients).  The product of the
/// factors with multiplicity reconstructs the input up to its leading
/// coefficient.
pub fn factor_over_q(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    assert!(f.node().is_base(), "factor_over_q needs rational coefficients");
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    let squarefree = f.squarefree_decomposition().expect("no splits over the base field");
    for (part, mult) in squarefree {
        for irr in factor_squarefree(&part) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|a, b| cmp_factor(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

fn cmp_factor(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for i in (0..=da).rev() {
            let ca = a.coeff(i);
            let cb = b.coeff(i);
            let (ra, rb) = (ca.as_rat().unwrap(), cb.as_rat().unwrap());
            match ra.cmp(rb) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Factor a squarefree rational polynomial into monic irreducibles.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let n = f.degree().expect("nonzero");
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![f.monic().unwrap()];
    }
    // primitive integer model; pull out a power of x first
    let mut z = to_int_poly(f);
    let mut out = Vec::new();
    let val = z.iter().take_while(|c| c.is_zero()).count();
    if val > 0 {
        out.push(UniPoly::from_int_coeffs(FieldNode::Base, &[0, 1]));
        z.drain(0..val);
    }
    if z.len() >= 2 {
        for fac in factor_primitive_squarefree(&z) {
            out.push(monic_from_int(&fac));
        }
    }
    out
}

fn to_int_poly(f: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<Rat> = f.coeffs().iter().map(|c| c.as_rat().unwrap().clone()).collect();
    let l = denom_lcm(&rats);
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&l / r.denom()))
        .collect();
    let g = crate::algebra::rat::numer_gcd(&ints);
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    ints
}

fn monic_from_int(z: &[BigInt]) -> UniPoly {
    let lc = Rat::from_integer(z.last().unwrap().clone());
    let coeffs: Vec<FElem> = z
        .iter()
        .map(|c| FElem::Rat(Rat::from_integer(c.clone()) / lc.clone()))
        .collect();
    UniPoly::from_coeffs(FieldNode::Base, coeffs)
}

const PRIMES: [u64; 12] = [
    1000003, 1000033, 1000037, 1000039, 1000081, 1000099, 1000117, 1000121, 1000133, 1000151,
    1000159, 1000171,
];

/// Zassenhaus on a primitive squarefree integer polynomial of degree >= 1
/// with nonzero constant term.  Returns primitive integer factors.
fn factor_primitive_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    // choose the admissible prime with the fewest modular factors
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    for &p in PRIMES.iter() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod(f, p);
        let dfp = Modp::new(p).deriv(&fp);
        if Modp::new(p).gcd(&fp, &dfp).len() != 1 {
            continue;
        }
        let facs = Modp::new(p).factor_monic(&Modp::new(p).make_monic(&fp));
        let better = match &best {
            None => true,
            Some((_, b)) => facs.len() < b.len(),
        };
        if better {
            best = Some((p, facs));
        }
        if best.as_ref().map(|(_, b)| b.len()).unwrap_or(usize::MAX) <= 2 {
            break;
        }
    }
    let (p, mod_factors) = best.expect("no admissible prime found");
    if mod_factors.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte-style bound on the coefficients of lc * (any factor)
    let norm2: BigInt = {
        let s: BigInt = f.iter().map(|c| c * c).sum();
        sqrt_ceil(&s) + 1
    };
    let bound = (BigInt::one() << (n + 1)) * norm2 * lc.abs();
    let mut modulus = BigInt::from(p);
    let mut k = 1usize;
    while modulus < BigInt::from(2) * &bound + 1 {
        modulus = &modulus * &modulus;
        k *= 2;
    }
    let lifted = hensel_lift_tree(f, &mod_factors, p, k, &modulus);
    recombine(f.to_vec(), lifted, &modulus)
}

fn sqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) < n {
        r + 1
    } else {
        r
    }
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| {
            let m = c.mod_floor(&bp);
            m.to_u64().unwrap()
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

// ---------------------------------------------------------------------------
// arithmetic in F_p[x] with machine-word primes
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Modp {
    p: u64,
}

impl Modp {
    fn new(p: u64) -> Modp {
        Modp { p }
    }

    fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn invm(&self, a: u64) -> u64 {
        // extended euclid on machine words
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            t -= q * new_t;
            std::mem::swap(&mut t, &mut new_t);
            r -= q * new_r;
            std::mem::swap(&mut r, &mut new_r);
        }
        assert_eq!(r, 1, "not invertible mod p");
        (t.rem_euclid(self.p as i128)) as u64
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    #[allow(dead_code)]
    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0; n];
        for i in 0..n {
            out[i] = self.addm(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            );
        }
        Self::trim(&mut out);
        out
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0; n];
        for i in 0..n {
            out[i] = self.subm(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            );
        }
        Self::trim(&mut out);
        out
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.addm(out[i + j], self.mulm(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    fn deriv(&self, a: &[u64]) -> Vec<u64> {
        if a.len() <= 1 {
            return vec![];
        }
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, (i as u64) % self.p))
            .collect();
        Self::trim(&mut out);
        out
    }

    fn make_monic(&self, a: &[u64]) -> Vec<u64> {
        if a.is_empty() {
            return vec![];
        }
        let inv = self.invm(*a.last().unwrap());
        a.iter().map(|&c| self.mulm(c, inv)).collect()
    }

    fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty());
        let db = b.len() - 1;
        if a.len() <= db {
            return (vec![], a.to_vec());
        }
        let lc_inv = self.invm(*b.last().unwrap());
        let mut rem = a.to_vec();
        let mut quo = vec![0u64; rem.len() - db];
        while rem.len() > db {
            let lead = *rem.last().unwrap();
            let k = rem.len() - 1 - db;
            if lead != 0 {
                let q = self.mulm(lead, lc_inv);
                quo[k] = q;
                for i in 0..db {
                    rem[k + i] = self.subm(rem[k + i], self.mulm(q, b[i]));
                }
            }
            rem.pop();
            Self::trim(&mut rem);
            if rem.len() <= db {
                break;
            }
        }
        Self::trim(&mut quo);
        (quo, rem)
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let (_, r) = self.divrem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            x
        } else {
            self.make_monic(&x)
        }
    }

    fn powmod_bits(&self, base: &[u64], bits: &[bool], modulus: &[u64]) -> Vec<u64> {
        // bits most-significant first
        let mut acc = vec![1u64];
        for &b in bits {
            acc = self.divrem(&self.mul(&acc, &acc), modulus).1;
            if b {
                acc = self.divrem(&self.mul(&acc, base), modulus).1;
            }
        }
        acc
    }

    fn powmod_u64(&self, base: &[u64], e: u64, modulus: &[u64]) -> Vec<u64> {
        let bits: Vec<bool> = (0..64).rev().map(|i| (e >> i) & 1 == 1).skip_while(|&b| !b).collect();
        if bits.is_empty() {
            return vec![1];
        }
        self.powmod_bits(base, &bits, modulus)
    }

    fn powmod_big(&self, base: &[u64], e: &BigInt, modulus: &[u64]) -> Vec<u64> {
        let (_, bytes) = e.to_bytes_be();
        let mut bits: Vec<bool> = Vec::new();
        for byte in bytes {
            for i in (0..8).rev() {
                bits.push((byte >> i) & 1 == 1);
            }
        }
        let bits: Vec<bool> = bits.into_iter().skip_while(|&b| !b).collect();
        if bits.is_empty() {
            return vec![1];
        }
        self.powmod_bits(base, &bits, modulus)
    }

    /// Factor a monic squarefree polynomial over F_p into monic irreducibles
    /// (distinct-degree splitting followed by Cantor-Zassenhaus).
    fn factor_monic(&self, f: &[u64]) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0usize;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push(self.make_monic(&rest));
                break;
            }
            h = self.powmod_u64(&h, self.p, &rest);
            // gcd(rest, h - x) collects all irreducible factors of degree d
            let diff = self.sub(&h, &x);
            let g = self.gcd(&rest, &diff);
            if g.len() > 1 {
                self.equal_degree_split(&g, d, &mut out);
                rest = self.divrem(&rest, &g).0;
                h = self.divrem(&h, &rest).1;
            }
        }
        out
    }

    fn equal_degree_split(&self, f: &[u64], d: usize, out: &mut Vec<Vec<u64>>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        // random splitting polynomial; deterministic sequence keeps runs
        // reproducible
        let mut seed = 0x9e3779b97f4a7c15u64 ^ (n as u64) << 32 ^ d as u64;
        loop {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut r = Vec::with_capacity(2 * d);
            let mut s = seed;
            for _ in 0..2 * d {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                r.push((s >> 11) % self.p);
            }
            r.push(1);
            // e = (p^d - 1) / 2
            let e = (BigInt::from(self.p).pow(d as u32) - 1) / 2;
            let t = self.powmod_big(&r, &e, f);
            let tm1 = self.sub(&t, &[1]);
            let g = self.gcd(f, &tm1);
            if g.len() > 1 && g.len() < f.len() {
                self.equal_degree_split(&g, d, out);
                let q = self.divrem(f, &g).0;
                self.equal_degree_split(&self.make_monic(&q), d, out);
                return;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting (big-integer moduli)
// ---------------------------------------------------------------------------

fn bmod(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn bmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    bmod(&out, m)
}

fn badd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        out[i] = a.get(i).cloned().unwrap_or_else(BigInt::zero)
            + b.get(i).cloned().unwrap_or_else(BigInt::zero);
    }
    bmod(&out, m)
}

fn bsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        out[i] = a.get(i).cloned().unwrap_or_else(BigInt::zero)
            - b.get(i).cloned().unwrap_or_else(BigInt::zero);
    }
    bmod(&out, m)
}

/// Division with remainder by a polynomial whose leading coefficient is a
/// unit mod `m`.
fn bdivrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (vec![], a.to_vec());
    }
    let lc_inv = mod_inverse(b.last().unwrap(), m);
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let lead = rem.last().unwrap().clone();
        let k = rem.len() - 1 - db;
        if !lead.is_zero() {
            let q = (&lead * &lc_inv).mod_floor(m);
            for i in 0..db {
                rem[k + i] = (&rem[k + i] - &q * &b[i]).mod_floor(m);
            }
            quo[k] = q;
        }
        rem.pop();
        while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    while quo.last().map(|c| c.is_zero()).unwrap_or(false) {
        quo.pop();
    }
    (quo, rem)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "element not invertible in lifting");
    e.x.mod_floor(m)
}

/// One quadratic Hensel step (von zur Gathen-Gerhard 15.10): from
/// `f = g*h (mod m)`, `s*g + t*h = 1 (mod m)` with `h` monic,
/// `deg s < deg h`, `deg t < deg g`, to the same identities mod m^2.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = bsub(f, &bmul(g, h, m2), m2);
    let (q, r) = bdivrem(&bmul(s, &e, m2), h, m2);
    let g1 = badd(g, &badd(&bmul(t, &e, m2), &bmul(&q, g, m2), m2), m2);
    let h1 = badd(h, &r, m2);
    // lift the Bezout pair
    let b = bsub(
        &badd(&bmul(s, &g1, m2), &bmul(t, &h1, m2), m2),
        &[BigInt::one()],
        m2,
    );
    let (c, d) = bdivrem(&bmul(s, &b, m2), &h1, m2);
    let s1 = bsub(s, &d, m2);
    let t1 = bsub(&bsub(t, &bmul(t, &b, m2), m2), &bmul(&c, &g1, m2), m2);
    (g1, h1, s1, t1)
}

/// Lift a mod-p factorization `f = lc(f) * prod(monic factors) (mod p)` to
/// mod p^k (k a power of two reached by squaring); returns the monic lifted
/// factors mod `target` = p^k.
fn hensel_lift_tree(
    f: &[BigInt],
    factors: &[Vec<u64>],
    p: u64,
    k: usize,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        // monic image of f itself mod p^k
        let lcinv = mod_inverse(f.last().unwrap(), target);
        let out: Vec<BigInt> = f.iter().map(|c| (c * &lcinv).mod_floor(target)).collect();
        return vec![out];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let mp = Modp::new(p);
    // h = prod(left) stays monic, g = lc(f) * prod(right)
    let mut h0: Vec<u64> = vec![1];
    for fac in left {
        h0 = mp.mul(&h0, fac);
    }
    let mut g0: Vec<u64> = vec![1];
    for fac in right {
        g0 = mp.mul(&g0, fac);
    }
    let lc_mod = {
        let r = reduce_mod(&[f.last().unwrap().clone()], p);
        if r.is_empty() {
            0
        } else {
            r[0]
        }
    };
    g0 = g0.iter().map(|&c| mp.mulm(c, lc_mod)).collect();
    // Bezout pair mod p: s*g + t*h = 1
    let (s0, t0) = {
        let (gc, s, t) = ext_gcd_modp(mp, &g0, &h0);
        assert_eq!(gc.len(), 1, "lift halves not coprime mod p");
        let inv = mp.invm(gc[0]);
        (
            s.iter().map(|&c| mp.mulm(c, inv)).collect::<Vec<u64>>(),
            t.iter().map(|&c| mp.mulm(c, inv)).collect::<Vec<u64>>(),
        )
    };
    let to_big = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut g = to_big(&g0);
    let mut h = to_big(&h0);
    let mut s = to_big(&s0);
    let mut t = to_big(&t0);
    let mut mcur = BigInt::from(p);
    let mut kcur = 1usize;
    while kcur < k {
        let m2 = &mcur * &mcur;
        let fm = bmod(f, &m2);
        let (g1, h1, s1, t1) = hensel_step(&fm, &g, &h, &s, &t, &m2);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        mcur = m2;
        kcur *= 2;
    }
    debug_assert_eq!(&mcur, target);
    debug_assert!(h.last().map(|c| c.is_one()).unwrap_or(false), "lift lost monicity");
    let mut out = hensel_lift_tree(&h, left, p, k, target);
    out.extend(hensel_lift_tree(&g, right, p, k, target));
    out
}

fn ext_gcd_modp(mp: Modp, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![1], vec![]);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = mp.divrem(&r0, &r1);
        let s = mp.sub(&s0, &mp.mul(&q, &s1));
        let t = mp.sub(&t0, &mp.mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

// ---------------------------------------------------------------------------
// recombination
// ---------------------------------------------------------------------------

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = crate::algebra::rat::numer_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
    if out.last().map(|c| c.sign() == Sign::Minus).unwrap_or(false) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

fn z_divides(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    // exact division of integer polynomials, None when not exact
    let mut rem: Vec<Rat> = num.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let dd = den.len() - 1;
    let lc = Rat::from_integer(den.last().unwrap().clone());
    let mut quo = vec![Rat::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let lead = rem.last().unwrap().clone();
        let k = rem.len() - 1 - dd;
        if !lead.is_zero() {
            let q = lead / lc.clone();
            for i in 0..dd {
                let d = &q * Rat::from_integer(den[i].clone());
                rem[k + i] -= d;
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
    if !rem.is_empty() {
        return None;
    }
    let mut out = Vec::with_capacity(quo.len());
    for q in quo {
        if !q.denom().is_one() {
            return None;
        }
        out.push(q.numer().clone());
    }
    Some(out)
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(f: Vec<BigInt>, lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut rest = f;
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut out = Vec::new();
    let mut size = 1usize;
    'sizes: while 2 * size <= pool.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            // candidate: lc(rest) * product of chosen lifted factors
            let mut cand: Vec<BigInt> = vec![rest.last().unwrap().clone()];
            for &i in combo.iter() {
                cand = bmul(&cand, &pool[i], modulus);
            }
            let cand = primitive_part(&symmetric(&cand, modulus));
            if cand.len() > 1 {
                if let Some(q) = z_divides(&rest, &cand) {
                    out.push(cand);
                    rest = q;
                    for &i in combo.iter().rev() {
                        pool.remove(i);
                    }
                    continue 'sizes;
                }
            }
            if !next_combination(&mut combo, pool.len()) {
                size += 1;
                continue 'sizes;
            }
        }
    }
    if rest.len() > 1 {
        out.push(primitive_part(&rest));
    }
    out
}
