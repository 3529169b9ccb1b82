//! Exact recurrences for the rational functions whose alternating series
//! interpolate the Gauss-Kuzmin-Wirsing eigenvalues and the dominant
//! Mayer-Ruelle eigenvalue, together with independent numerical oracles.
//!
//! * [`arith`]: exact bivariate rational functions and floating evaluation.
//! * [`recurrence`]: the coefficient tables `A`/`Psi` and `B`/`Lambda`.
//! * [`series`]: truncated eigenvalue series and derived constants.
//! * [`oracle`]: operator discretization, continuant sums, trace formulas.
//! * [`golden`], [`tables`]: the published tables and their recomputation.

pub mod arith;
pub mod error;
pub mod golden;
pub mod oracle;
pub mod recurrence;
pub mod series;
pub mod tables;

pub use arith::{BiPoly, BigComplex, BigFloat, BigInt, BigRational, PolyY, RatFunc2, Var};
pub use error::{Error, Result};
pub use recurrence::{build_table, CoeffTable, Variant};
pub use series::SeriesResult;
