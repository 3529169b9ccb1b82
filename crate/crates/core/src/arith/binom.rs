//! Binomial coefficients: integer, generalized (negative upper index), and
//! polynomial in `X`.

use rug::{Integer, Rational};

use crate::arith::BiPoly;
use crate::error::{Error, Result};

/// `C(m, r)` for `m >= 0`; zero when `r < 0` or `r > m`.
///
/// A negative upper index is rejected: the recurrence never produces one
/// for the sums that use this function.
pub fn int_binom(m: i64, r: i64) -> Result<Integer> {
    if m < 0 {
        return Err(Error::NegativeBinomial(m));
    }
    if r < 0 || r > m {
        return Ok(Integer::ZERO);
    }
    Ok(Integer::from(m).binomial(r as u32))
}

/// Generalized binomial `m (m-1) ... (m-r+1) / r!` for any integer `m`;
/// zero when `r < 0`.
///
/// Agrees with [`int_binom`] for `m >= 0` and equals `(-1)^r C(r-m-1, r)`
/// for negative `m`. This is the value of the polynomial binomial
/// `C(X + m, r)` at `X = 0`.
pub fn gen_binom(m: i64, r: i64) -> Integer {
    if r < 0 {
        return Integer::ZERO;
    }
    Integer::from(m).binomial(r as u32)
}

/// Coefficients (ascending powers of `X`) of `C(X + shift, k)`.
pub fn binom_x_coeffs(shift: i64, k: u32) -> Vec<Rational> {
    // product of (X + shift - i) for i in 0..k, then divide by k!
    let mut coeffs = vec![Integer::from(1)];
    for i in 0..k as i64 {
        let c = Integer::from(shift - i);
        let mut next = vec![Integer::ZERO; coeffs.len() + 1];
        for (d, a) in coeffs.iter().enumerate() {
            next[d + 1] += a;
            next[d] += Integer::from(a * &c);
        }
        coeffs = next;
    }
    let fact = Integer::from(Integer::factorial(k));
    coeffs
        .into_iter()
        .map(|c| Rational::from((c, fact.clone())))
        .collect()
}

/// `C(X + shift, k)` as a polynomial in `X`.
pub fn poly_binom(shift: i64, k: u32) -> BiPoly {
    BiPoly::from_x_coeffs(&binom_x_coeffs(shift, k))
}
