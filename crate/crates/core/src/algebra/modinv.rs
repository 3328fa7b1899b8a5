//! Fast inversion modulo a rational polynomial through machine-prime
//! images, Chinese remaindering, and rational reconstruction.
//!
//! The naive extended Euclidean algorithm over the rationals suffers severe
//! coefficient growth at the tower level right above the base field (where
//! minimal polynomials of conductor roots reach degree twenty).  Inverses
//! are instead computed modulo a growing set of machine primes and lifted;
//! every candidate is verified exactly, and the method falls back to the
//! exact algorithm when the input is not invertible (the exact run then
//! produces the witness factor for dynamic evaluation).

use crate::algebra::rat::{denom_lcm, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

struct PrimeStream {
    next: u64,
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.next += 1;
            if is_prime_u64(self.next) {
                return Some(self.next);
            }
        }
    }
}

struct Modp {
    p: u64,
}

impl Modp {
    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn invm(&self, a: u64) -> u64 {
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            t -= q * new_t;
            std::mem::swap(&mut t, &mut new_t);
            r -= q * new_r;
            std::mem::swap(&mut r, &mut new_r);
        }
        assert_eq!(r, 1);
        t.rem_euclid(self.p as i128) as u64
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
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
                out[i + j] = (out[i + j] + self.mulm(x, y)) % self.p;
            }
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

    /// Extended gcd of polynomials mod p: (g, s) with s*a = g mod m,
    /// g monic.
    fn half_ext_gcd(&self, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), m.to_vec());
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![1], vec![]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.is_empty() {
            return (r0, s0);
        }
        let inv = self.invm(*r0.last().unwrap());
        (
            r0.iter().map(|&c| self.mulm(c, inv)).collect(),
            s0.iter().map(|&c| self.mulm(c, inv)).collect(),
        )
    }
}

/// Scale rational coefficient vectors into integer ones (numerators after
/// clearing the common denominator).
fn clear_denoms(v: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let l = denom_lcm(v);
    (
        v.iter().map(|r| r.numer() * (&l / r.denom())).collect(),
        l,
    )
}

fn reduce_mod(v: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let bp = BigInt::from(p);
    let mut out = Vec::with_capacity(v.len());
    for c in v {
        out.push(c.mod_floor(&bp).to_u64().unwrap());
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

/// Rational reconstruction of `v mod m` with numerator and denominator
/// bounded by sqrt(m/2).
fn rat_reconstruct(v: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = {
        let half: BigInt = m / 2;
        half.sqrt()
    };
    let (mut r0, mut r1) = (m.clone(), v.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 >= bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        let t = &t0 - &q * &t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if num_integer::gcd(r1.clone(), t1.clone()).abs() != BigInt::one() {
        return None;
    }
    if t1.is_negative() {
        return Some(Rat::new(-r1, -t1));
    }
    Some(Rat::new(r1, t1))
}

/// Inverse of `a` modulo the monic squarefree `m`, both with rational
/// coefficients, by modular images.  `None` signals "use the exact path"
/// (either unlucky primes throughout or a genuine zero divisor).
pub fn try_invert_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    assert!(!a.is_empty() && m.len() >= 2);
    let (ai, _) = clear_denoms(a);
    let (mi, _) = clear_denoms(m);
    let deg_m = m.len() - 1;
    let mut crt_mod = BigInt::one();
    let mut crt: Vec<BigInt> = vec![BigInt::zero(); deg_m];
    let mut bad_streak = 0usize;
    let mut used = 0usize;
    let primes = PrimeStream { next: 1_000_000_000 };
    for p in primes.take(600) {
        let mp = Modp { p };
        let ap = reduce_mod(&ai, p)?;
        let mpoly = reduce_mod(&mi, p)?;
        if mpoly.len() != mi.len() || ap.is_empty() {
            continue; // leading coefficient vanished: unlucky prime
        }
        let (g, s) = mp.half_ext_gcd(&ap, &mpoly);
        if g.len() != 1 {
            bad_streak += 1;
            if bad_streak >= 4 {
                return None; // probably a genuine common factor
            }
            continue;
        }
        bad_streak = 0;
        // note: s*a = 1 mod (m, p); fold the cleared denominator of a back
        let denom_a = denom_lcm(a);
        let denom_m = denom_lcm(m); // m was scaled too: its image is a unit multiple
        let _ = denom_m;
        let scale = {
            let d = denom_a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            d
        };
        let s_scaled: Vec<u64> = s.iter().map(|&c| mp.mulm(c, scale)).collect();
        // CRT
        let bp = BigInt::from(p);
        if crt_mod.is_one() {
            for (i, slot) in crt.iter_mut().enumerate() {
                *slot = BigInt::from(s_scaled.get(i).copied().unwrap_or(0));
            }
            crt_mod = bp;
        } else {
            let inv = mod_inverse_int(&crt_mod, &bp)?;
            let new_mod = &crt_mod * &bp;
            for (i, slot) in crt.iter_mut().enumerate() {
                let target = BigInt::from(s_scaled.get(i).copied().unwrap_or(0));
                let diff = (&target - &*slot).mod_floor(&bp);
                let k = (&diff * &inv).mod_floor(&bp);
                *slot = (&*slot + &crt_mod * k).mod_floor(&new_mod);
            }
            crt_mod = new_mod;
        }
        used += 1;
        // reconstruction is costly; retry on a doubling schedule
        if used < 2 || (used > 8 && used % 4 != 0) {
            continue;
        }
        // attempt reconstruction
        let mut cand: Vec<Rat> = Vec::with_capacity(deg_m);
        let mut ok = true;
        for slot in crt.iter() {
            match rat_reconstruct(slot, &crt_mod) {
                Some(r) => cand.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        if verify_inverse(a, &cand, m) {
            while cand.last().map(|c| c.is_zero()).unwrap_or(false) {
                cand.pop();
            }
            return Some(cand);
        }
    }
    None
}

fn mod_inverse_int(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

fn verify_inverse(a: &[Rat], inv: &[Rat], m: &[Rat]) -> bool {
    // (a * inv) mod m == 1 using exact rational arithmetic once
    if a.is_empty() || inv.iter().all(|c| c.is_zero()) {
        return false;
    }
    let mut prod = vec![Rat::zero(); a.len() + inv.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in inv.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let v = &prod[i + j] + x * y;
            prod[i + j] = v;
        }
    }
    // reduce modulo the monic m
    let dm = m.len() - 1;
    let lc = m.last().unwrap().clone();
    while prod.len() > dm {
        let lead = prod.last().unwrap().clone();
        let k = prod.len() - 1 - dm;
        if !lead.is_zero() {
            let q = lead / lc.clone();
            for i in 0..dm {
                let v = &prod[k + i] - &q * &m[i];
                prod[k + i] = v;
            }
        }
        prod.pop();
    }
    while prod.last().map(|c| c.is_zero()).unwrap_or(false) {
        prod.pop();
    }
    prod.len() == 1 && prod[0].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat_i;

    #[test]
    fn inverse_in_a_quadratic_field() {
        // (1 + t)^{-1} mod t^2 + 1 is (1 - t)/2
        let a = vec![rat_i(1), rat_i(1)];
        let m = vec![rat_i(1), rat_i(0), rat_i(1)];
        let inv = try_invert_mod(&a, &m).unwrap();
        assert_eq!(inv[0], crate::algebra::rat::rat(1, 2));
        assert_eq!(inv[1], crate::algebra::rat::rat(-1, 2));
    }

    #[test]
    fn zero_divisor_defers_to_exact_path() {
        // t - 1 is a zero divisor mod t^2 - 1
        let a = vec![rat_i(-1), rat_i(1)];
        let m = vec![rat_i(-1), rat_i(0), rat_i(1)];
        assert!(try_invert_mod(&a, &m).is_none());
    }

    #[test]
    fn big_degree_inverse_verifies() {
        // modulus t^17 - 2, element 3 t^9 - 5 t + 7/2
        let mut m = vec![rat_i(0); 18];
        m[0] = rat_i(-2);
        m[17] = rat_i(1);
        let mut a = vec![rat_i(0); 10];
        a[0] = crate::algebra::rat::rat(7, 2);
        a[1] = rat_i(-5);
        a[9] = rat_i(3);
        let inv = try_invert_mod(&a, &m).unwrap();
        assert!(verify_inverse(&a, &inv, &m));
    }
}
