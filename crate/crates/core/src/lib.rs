//! Exact-arithmetic analysis of singularities of parameterized rational plane
//! curves through the syzygies of the parameterization.
//!
//! A parameterization is an ordered triple `(g1, g2, g3)` of binary forms of
//! the same degree `d`, defining a map from the projective line to the
//! projective plane.  The library tests such a triple for base points and
//! birationality, builds a Hilbert-Burch matrix for it, and extracts the
//! singular points of the image curve together with their multiplicities,
//! branch counts, delta invariants, and infinitely-near structure.  All
//! arithmetic is exact, over the rationals and over algebraic extension
//! towers with dynamic evaluation.

pub mod algebra;
pub mod binforms;
pub mod biproj;
pub mod blowup;
pub mod conductor;
pub mod error;
pub mod oracle;
pub mod singloc;
pub mod syzygy;

pub use algebra::field::{FElem, FieldNode, SplitEvent};
pub use algebra::rat::Rat;
pub use algebra::upoly::UniPoly;
pub use binforms::BinForm;
pub use error::CurveError;
pub use syzygy::{HBMatrix, ParamTriple};
