//! A minimal commutative-ring interface.
//!
//! The generic Hilbert-Burch construction is run twice: once with rational
//! entries (to build a matrix for a concrete triple) and once with sparse
//! integer polynomials in the generic coefficients (to check the determinant
//! identity symbolically).  Both paths share the same code through this
//! trait.

use crate::algebra::rat::Rat;
use num_traits::{One, Zero};

pub trait CRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl CRing for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Determinant by dynamic programming over row subsets (Laplace expansion
/// along columns with memoization).  Exact in any commutative ring; intended
/// for small matrices whose entries are expensive to divide, where
/// fraction-free elimination is not available.
pub fn det_subsets<R: CRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    assert!(m.iter().all(|row| row.len() == n), "determinant of non-square matrix");
    // state: for each subset of rows of size k, the determinant of the
    // submatrix on those rows and the first k columns.
    let mut dp = vec![None::<R>; 1usize << n];
    dp[0] = Some(R::one());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].clone() else { continue };
        if cur.is_zero() && mask != 0 {
            continue;
        }
        let col = (mask as u32).count_ones() as usize;
        if col == n {
            continue;
        }
        let mut parity_flips = 0usize;
        for row in 0..n {
            if mask & (1 << row) != 0 {
                parity_flips += 1;
                continue;
            }
            let entry = &m[row][col];
            if entry.is_zero() {
                continue;
            }
            // rows above `row` already used flip the cofactor sign
            let used_above = parity_flips;
            let term = cur.mul(entry);
            let term = if (row - used_above) % 2 == 1 { term.neg() } else { term };
            let nxt = mask | (1 << row);
            dp[nxt] = Some(match dp[nxt].take() {
                Some(acc) => acc.add(&term),
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].clone().unwrap_or_else(R::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat_i;

    #[test]
    fn det_matches_hand_computation() {
        let m = vec![
            vec![rat_i(1), rat_i(2), rat_i(3)],
            vec![rat_i(4), rat_i(5), rat_i(6)],
            vec![rat_i(7), rat_i(8), rat_i(10)],
        ];
        assert_eq!(det_subsets(&m), rat_i(-3));
    }

    #[test]
    fn det_permutation() {
        let m = vec![
            vec![rat_i(0), rat_i(0), rat_i(1)],
            vec![rat_i(0), rat_i(1), rat_i(0)],
            vec![rat_i(1), rat_i(0), rat_i(0)],
        ];
        assert_eq!(det_subsets(&m), rat_i(-1));
    }
}
