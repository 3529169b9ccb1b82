//! Benchmark fixtures.

use gkw_core::BigComplex;

/// Working precision for the float benches.
pub const PREC: u32 = 256;

/// `num / den` as a real complex point.
pub fn real_point(num: i64, den: u32) -> BigComplex {
    BigComplex::with_val(PREC, num) / den
}
