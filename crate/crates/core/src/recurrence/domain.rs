//! Coefficient domains the recurrence can run over.
//!
//! The recurrence only adds, multiplies, scales by rationals and divides by
//! linear polynomials in `Y`. Every evaluation map `(X, Y) -> (x0, y0)`
//! that avoids the denominators is a ring homomorphism, so running it over
//! the values at a point gives the values of the symbolic result.

use rug::{Complex, Rational};

use crate::arith::binom::binom_x_coeffs;
use crate::arith::{BiPoly, RatFunc2};
use crate::error::{Error, Result};

/// Arithmetic needed by the recurrence.
pub trait Domain: Sync {
    type Elem: Clone + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn constant(&self, q: &Rational) -> Self::Elem;
    /// `alpha Y + beta`
    fn linear_y(&self, alpha: &Rational, beta: &Rational) -> Self::Elem;
    /// `C(X + shift, k)`
    fn x_binom(&self, shift: i64, k: u32) -> Self::Elem;
    /// `X + c`
    fn x_shift(&self, c: i64) -> Self::Elem;

    /// Sum; the symbolic domain defers cancellation to [`Domain::reduce`].
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem;
    fn reduce(&self, a: Self::Elem) -> Self::Elem {
        a
    }
    /// `a / (alpha Y + beta)`
    fn div_linear_y(&self, a: &Self::Elem, alpha: &Rational, beta: &Rational)
        -> Result<Self::Elem>;
    /// The value as an exact rational constant, if it is one.
    fn as_constant(&self, a: &Self::Elem) -> Option<Rational>;
}

/// Exact rational functions in `X`, `Y`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Domain for Symbolic {
    type Elem = RatFunc2;

    fn zero(&self) -> RatFunc2 {
        RatFunc2::zero()
    }

    fn is_zero(&self, a: &RatFunc2) -> bool {
        a.is_zero()
    }

    fn constant(&self, q: &Rational) -> RatFunc2 {
        RatFunc2::constant(q)
    }

    fn linear_y(&self, alpha: &Rational, beta: &Rational) -> RatFunc2 {
        BiPoly::from_terms([((0, 1), alpha.clone()), ((0, 0), beta.clone())]).into()
    }

    fn x_binom(&self, shift: i64, k: u32) -> RatFunc2 {
        BiPoly::from_x_coeffs(&binom_x_coeffs(shift, k)).into()
    }

    fn x_shift(&self, c: i64) -> RatFunc2 {
        BiPoly::from_x_coeffs(&[Rational::from(c), Rational::from(1)]).into()
    }

    fn add(&self, a: &RatFunc2, b: &RatFunc2) -> RatFunc2 {
        a.add_unreduced(b)
    }

    fn mul(&self, a: &RatFunc2, b: &RatFunc2) -> RatFunc2 {
        if b.den().is_one() {
            return a.mul_poly(b.num());
        }
        if a.den().is_one() {
            return b.mul_poly(a.num());
        }
        a.mul_unreduced(b)
    }

    fn scale(&self, a: &RatFunc2, q: &Rational) -> RatFunc2 {
        a.scale(q)
    }

    fn reduce(&self, mut a: RatFunc2) -> RatFunc2 {
        a.reduce();
        a
    }

    fn div_linear_y(&self, a: &RatFunc2, alpha: &Rational, beta: &Rational) -> Result<RatFunc2> {
        a.div_linear_y(alpha, beta)
    }

    fn as_constant(&self, a: &RatFunc2) -> Option<Rational> {
        a.as_constant()
    }
}

/// Exact values at a rational point `(x, y)`.
#[derive(Clone, Debug)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    /// The point `(n, 2^n)`.
    pub fn gkw(n: u32) -> Self {
        RationalPoint {
            x: Rational::from(n),
            y: Rational::from(rug::Integer::from(1) << n),
        }
    }

    /// The point `(s - 1, 2^(s-1))` for integer `s >= 2`.
    pub fn mr_integer(s: u32) -> Self {
        assert!(s >= 1);
        RationalPoint {
            x: Rational::from(s - 1),
            y: Rational::from(rug::Integer::from(1) << (s - 1)),
        }
    }
}

impl Domain for RationalPoint {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::new()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        *a == 0
    }

    fn constant(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn linear_y(&self, alpha: &Rational, beta: &Rational) -> Rational {
        Rational::from(alpha * &self.y) + beta
    }

    fn x_binom(&self, shift: i64, k: u32) -> Rational {
        let base = Rational::from(&self.x + shift);
        let mut acc = Rational::from(1);
        for i in 0..k {
            acc *= Rational::from(&base - i);
        }
        acc / rug::Integer::from(rug::Integer::factorial(k))
    }

    fn x_shift(&self, c: i64) -> Rational {
        Rational::from(&self.x + c)
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a + b)
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }

    fn scale(&self, a: &Rational, q: &Rational) -> Rational {
        Rational::from(a * q)
    }

    fn div_linear_y(&self, a: &Rational, alpha: &Rational, beta: &Rational) -> Result<Rational> {
        let d = self.linear_y(alpha, beta);
        if d == 0 {
            return Err(Error::Pole);
        }
        Ok(Rational::from(a / &d))
    }

    fn as_constant(&self, a: &Rational) -> Option<Rational> {
        Some(a.clone())
    }
}

/// Floating values at a complex point `(x, y)` with `prec` bits.
#[derive(Clone, Debug)]
pub struct ComplexPoint {
    pub x: Complex,
    pub y: Complex,
    pub prec: u32,
}

impl ComplexPoint {
    /// The point `(s - 1, 2^(s-1))` on the principal branch.
    pub fn mr(s: &Complex, prec: u32) -> Self {
        let wp = prec;
        let x = Complex::with_val(wp, s - 1u32);
        let y = crate::arith::float::pow2(&x);
        ComplexPoint { x, y, prec: wp }
    }

    /// The point `(x, 2^x)`.
    pub fn gkw(x: &Complex, prec: u32) -> Self {
        let x = Complex::with_val(prec, x);
        let y = crate::arith::float::pow2(&x);
        ComplexPoint { x, y, prec }
    }
}

impl Domain for ComplexPoint {
    type Elem = Complex;

    fn zero(&self) -> Complex {
        Complex::new(self.prec)
    }

    fn is_zero(&self, a: &Complex) -> bool {
        a.is_zero()
    }

    fn constant(&self, q: &Rational) -> Complex {
        Complex::with_val(self.prec, q)
    }

    fn linear_y(&self, alpha: &Rational, beta: &Rational) -> Complex {
        let mut v = Complex::with_val(self.prec, &self.y * alpha);
        v += beta;
        v
    }

    fn x_binom(&self, shift: i64, k: u32) -> Complex {
        let base = Complex::with_val(self.prec, &self.x + shift);
        let mut acc = Complex::with_val(self.prec, 1);
        for i in 0..k {
            acc *= Complex::with_val(self.prec, &base - i);
        }
        acc / rug::Integer::from(rug::Integer::factorial(k))
    }

    fn x_shift(&self, c: i64) -> Complex {
        Complex::with_val(self.prec, &self.x + c)
    }

    fn add(&self, a: &Complex, b: &Complex) -> Complex {
        Complex::with_val(self.prec, a + b)
    }

    fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        Complex::with_val(self.prec, a * b)
    }

    fn scale(&self, a: &Complex, q: &Rational) -> Complex {
        Complex::with_val(self.prec, a * q)
    }

    fn div_linear_y(&self, a: &Complex, alpha: &Rational, beta: &Rational) -> Result<Complex> {
        let d = self.linear_y(alpha, beta);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(Complex::with_val(self.prec, a / &d))
    }

    fn as_constant(&self, a: &Complex) -> Option<Rational> {
        crate::arith::float::complex_as_rational(a)
    }
}
