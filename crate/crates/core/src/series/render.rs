//! Fixed-point decimal rendering with round-half-to-even.

use rug::{Complex, Float, Integer, Rational};

/// `x` with exactly `digits` fractional digits, rounded to nearest with
/// ties to even. Exact for rational inputs.
pub fn render_decimal(x: &Rational, digits: usize) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, digits as u32));
    let scaled = Rational::from(x * &scale);
    let neg = scaled < 0;
    let mag = scaled.abs();
    let (frac, int) = mag.fract_floor(Integer::new());
    let twice = frac * 2u32;
    let mut q = int;
    if twice > 1 || (twice == 1 && q.is_odd()) {
        q += 1;
    }
    let mut s = q.to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if neg && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// As [`render_decimal`], taking the float's exact binary value.
pub fn render_float(x: &Float, digits: usize) -> String {
    match x.to_rational() {
        Some(q) => render_decimal(&q, digits),
        None => x.to_string(),
    }
}

/// Real part alone when the imaginary part is zero, else `a+bi`.
pub fn render_complex(z: &Complex, digits: usize) -> String {
    let re = render_float(z.real(), digits);
    if z.imag().is_zero() {
        return re;
    }
    let im = render_float(z.imag(), digits);
    match im.strip_prefix('-') {
        Some(m) => format!("{re}-{m}i"),
        None => format!("{re}+{im}i"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn fixed_digits() {
        assert_eq!(render_decimal(&q(13, 5), 14), "2.60000000000000");
        assert_eq!(render_decimal(&q(1, 3), 5), "0.33333");
        assert_eq!(render_decimal(&q(2, 3), 5), "0.66667");
        assert_eq!(render_decimal(&q(-1, 3), 2), "-0.33");
        assert_eq!(render_decimal(&q(7, 1), 0), "7");
        assert_eq!(render_decimal(&q(1, 1000), 2), "0.00");
        assert_eq!(render_decimal(&q(-1, 1000), 2), "0.00");
    }

    #[test]
    fn ties_go_to_even() {
        assert_eq!(render_decimal(&q(1, 8), 2), "0.12");
        assert_eq!(render_decimal(&q(3, 8), 2), "0.38");
        assert_eq!(render_decimal(&q(5, 2), 0), "2");
        assert_eq!(render_decimal(&q(-5, 2), 0), "-2");
        assert_eq!(render_decimal(&q(7, 2), 0), "4");
    }

    #[test]
    fn floats_and_complex() {
        let x = Float::with_val(64, 0.5);
        assert_eq!(render_float(&x, 3), "0.500");
        let z = Complex::with_val(64, (0.25, -1.5));
        assert_eq!(render_complex(&z, 2), "0.25-1.50i");
    }
}
