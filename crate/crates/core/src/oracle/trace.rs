//! Two closed expressions for the trace of the Gauss-Kuzmin-Wirsing
//! operator.
//!
//! * `sum_{m>=1} 1/(1 + xi_m^2)` with `xi_m = (m + sqrt(m^2+4))/2`, the
//!   fixed points of the branches `x -> 1/(m + x)`;
//! * `1/2 - 1/(2 sqrt 5) + 1/2 sum_{k>=1} (-1)^(k-1) C(2k,k) (zeta(2k) - 1)`.

use rug::{Float, Integer};

use super::zeta::zeta_minus_one;
use crate::arith::GUARD_BITS;

/// `1/(1 + xi_m^2) = (1 - m / sqrt(m^2 + 4)) / 2`.
fn xi_term(m: &Float) -> Float {
    let wp = m.prec();
    let r = (Float::with_val(wp, m.square_ref()) + 4u32).sqrt();
    (1 - Float::with_val(wp, m / &r)) / 2u32
}

/// Sum of the first `terms` fixed-point terms plus the Euler-Maclaurin
/// tail, whose integral `int_M^inf` is exactly `1/xi_M`.
pub fn trace_xi(prec: u32, terms: u64) -> Float {
    let wp = prec + GUARD_BITS;
    let mut s = Float::with_val(wp, 0);
    for m in 1..=terms {
        s += xi_term(&Float::with_val(wp, m));
    }
    // sum_{m>M} f(m) = int_M^inf f - f(M)/2 - f'(M)/12 + f'''(M)/720 - ...
    let mm = Float::with_val(wp, terms);
    let r2 = Float::with_val(wp, mm.square_ref()) + 4u32; // M^2 + 4
    let r = Float::with_val(wp, r2.sqrt_ref());
    let integral = Float::with_val(wp, &r - &mm) / 2u32; // 1/xi(M)
    let f = xi_term(&mm);
    // f'(x) = -2 (x^2+4)^(-3/2)
    let r3 = Float::with_val(wp, &r2 * &r);
    let f1 = Float::with_val(wp, -2) / &r3;
    // f'''(x) = 6 (x^2+4)^(-5/2) - 30 x^2 (x^2+4)^(-7/2)
    let r5 = Float::with_val(wp, &r3 * &r2);
    let r7 = Float::with_val(wp, &r5 * &r2);
    let f3 = Float::with_val(wp, 6) / &r5 - Float::with_val(wp, mm.square_ref()) * 30u32 / r7;
    s += integral - f / 2u32 - f1 / 12u32 + f3 / 720u32;
    Float::with_val(prec, s)
}

/// The binomial series with `terms` terms.
///
/// The `m = 2` part of `zeta(2k) - 1` makes the series converge only
/// conditionally, so it is summed in closed form,
/// `sum_k (-1)^(k-1) C(2k,k) 4^-k = 1 - 1/sqrt 2`; the rest decays like
/// `(4/9)^k`.
pub fn trace_binomial(prec: u32, terms: u32) -> Float {
    let wp = prec + GUARD_BITS + 2 * terms;
    let sqrt5 = Float::with_val(wp, 5).sqrt();
    let sqrt2 = Float::with_val(wp, 2).sqrt();
    let mut total = Float::with_val(wp, 0.5) - Float::with_val(wp, sqrt5.recip_ref()) / 2u32;
    total += (1 - Float::with_val(wp, sqrt2.recip_ref())) / 2u32;
    let mut s = Float::with_val(wp, 0);
    for k in 1..=terms {
        let rest = zeta_minus_one(2 * k, wp) - (Float::with_val(wp, 1) >> (2 * k));
        let c = Integer::from(Integer::binomial_u(2 * k, k));
        let term = rest * c;
        if k % 2 == 1 {
            s += term;
        } else {
            s -= term;
        }
    }
    total += s / 2u32;
    Float::with_val(prec, total)
}
