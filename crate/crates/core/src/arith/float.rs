//! Precision-carrying floats and complex numbers (MPFR/MPC via `rug`).

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};

pub type BigFloat = Float;
pub type BigComplex = Complex;

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 256;

/// Extra bits carried internally by floating evaluations.
pub const GUARD_BITS: u32 = 32;

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn ln2(prec: u32) -> Float {
    Float::with_val(prec, Constant::Log2)
}

/// `2^z` on the principal branch, `exp(z log 2)`.
pub fn pow2(z: &Complex) -> Complex {
    let prec = z.prec().0;
    let l = ln2(prec + GUARD_BITS);
    let w = Complex::with_val(prec + GUARD_BITS, z * &l);
    Complex::with_val(prec, w.exp())
}

/// `2^q` for rational `q`, principal (real) branch.
pub fn pow2_rational(q: &Rational, prec: u32) -> Float {
    let two = Float::with_val(prec + GUARD_BITS, 2);
    Float::with_val(prec, two.pow(&Float::with_val(prec + GUARD_BITS, q)))
}

/// Parses a complex number: `p/q`, a decimal, or `a+bi` / `a-bi` / `bi`.
pub fn parse_complex(text: &str, prec: u32) -> Result<Complex> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("{m}: {text:?}"),
    };
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            s => s,
        };
        let re = parse_real(re, prec).ok_or_else(|| bad("bad real part"))?;
        let im = parse_real(im, prec).ok_or_else(|| bad("bad imaginary part"))?;
        return Ok(Complex::with_val(prec, (re, im)));
    }
    let re = parse_real(&t, prec).ok_or_else(|| bad("bad number"))?;
    Ok(Complex::with_val(prec, (re, 0)))
}

/// Parses `p/q` or a decimal into a float at `prec` bits.
pub fn parse_real(text: &str, prec: u32) -> Option<Float> {
    let t = text.strip_prefix('+').unwrap_or(text);
    if let Some(q) = parse_rational(t) {
        return Some(Float::with_val(prec, q));
    }
    Float::parse(t).ok().map(|v| Float::with_val(prec, v))
}

/// Parses `p/q`, an integer, or a terminating decimal exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.strip_prefix('+').unwrap_or(text);
    if t.contains('/') || !t.contains(['.', 'e', 'E']) {
        return Rational::parse(t).ok().map(Rational::from);
    }
    if t.contains(['e', 'E']) {
        return None;
    }
    let (neg, digits) = match t.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, t),
    };
    let (int, frac) = digits.split_once('.')?;
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
    let n = rug::Integer::from_str_radix(&all, 10).ok()?;
    let d = rug::Integer::from(10).pow(frac.len() as u32);
    let q = Rational::from((n, d));
    Some(if neg { -q } else { q })
}

/// Rational value of `z` if it is real and an exact rational.
pub fn complex_as_rational(z: &Complex) -> Option<Rational> {
    if !z.imag().is_zero() {
        return None;
    }
    z.real().to_rational()
}
