//! Exact rational arithmetic: bivariate polynomials, `Y`-only
//! denominators, rational functions, and floating evaluation.

pub mod binom;
mod bipoly;
pub mod float;
mod polyy;
mod ratfunc;
pub mod text;

pub use binom::{gen_binom, int_binom, poly_binom};
pub use bipoly::BiPoly;
pub use float::{BigComplex, BigFloat, DEFAULT_PREC, GUARD_BITS};
pub use polyy::{Linear, PolyY};
pub use ratfunc::{RatFunc2, Var};

pub use rug::{Integer as BigInt, Rational as BigRational};
