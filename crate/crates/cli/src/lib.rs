//! Library surface of the command-line tool: the polynomial parser, the
//! JSON report builders, and the sampling driver (kept in a lib target so
//! integration tests reach them directly).

pub mod json;
pub mod parse;
pub mod sample;
