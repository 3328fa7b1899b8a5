//! Exact arithmetic: arbitrary-precision rationals, univariate polynomials
//! over a coefficient field node, squarefree decomposition, factorization
//! over the rationals, and quotient-ring extension towers with
//! dynamic-evaluation splitting.

pub mod factorq;
pub mod field;
pub mod linalg;
pub mod modinv;
pub mod mpoly;
pub mod rat;
pub mod ring;
pub mod tripoly;
pub mod upoly;
