//! Rational functions in `X`, `Y` whose denominators depend on `Y` only.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Float, Integer, Rational};

use super::polyy::{upoly, Linear, PolyY};
use super::BiPoly;
use crate::error::{Error, Result};

/// Variable selector for partial derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// `num / den` with `den` in `Z[Y]`.
///
/// Canonical form: `den` is primitive with positive leading coefficient,
/// `num` carries all rational content, and no nonconstant polynomial in
/// `Y` divides both. Values in canonical form compare equal iff they are
/// equal as rational functions.
#[derive(Clone, Debug)]
pub struct RatFunc2 {
    num: BiPoly,
    den: PolyY,
}

impl PartialEq for RatFunc2 {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc2 {}

impl Default for RatFunc2 {
    fn default() -> Self {
        RatFunc2::zero()
    }
}

impl From<BiPoly> for RatFunc2 {
    fn from(num: BiPoly) -> Self {
        RatFunc2 {
            num,
            den: PolyY::one(),
        }
    }
}

impl RatFunc2 {
    pub fn zero() -> Self {
        BiPoly::zero().into()
    }

    pub fn one() -> Self {
        BiPoly::one().into()
    }

    pub fn constant(c: &Rational) -> Self {
        BiPoly::constant(c).into()
    }

    pub fn x() -> Self {
        BiPoly::x().into()
    }

    pub fn y() -> Self {
        BiPoly::y().into()
    }

    /// Builds `num / den` from an arbitrary nonzero integer denominator
    /// polynomial (ascending coefficients) and canonicalizes it.
    pub fn from_parts(num: BiPoly, den: &[Integer]) -> Result<Self> {
        let mut den = den.to_vec();
        upoly::trim(&mut den);
        if den.is_empty() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let k = upoly::make_primitive(&mut den);
        let num = num.scale(&Rational::from((Integer::from(1), k)));
        let mut f = RatFunc2 {
            num,
            den: PolyY::from_primitive(den),
        };
        f.reduce();
        Ok(f)
    }

    /// Builds from a numerator and a factored denominator, canonicalizing.
    pub fn from_factored(num: BiPoly, den: PolyY) -> Self {
        let mut f = RatFunc2 { num, den };
        f.reduce();
        f
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &PolyY {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Attempts to attach a factored view to the denominator.
    pub fn with_factor_candidates(mut self, candidates: &[Linear]) -> Self {
        self.den = self.den.factor_with(candidates);
        self
    }

    /// Removes common factors of `num` and `den`.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = PolyY::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        if let Some(factors) = self.den.factors() {
            let mut kept = Vec::with_capacity(factors.len());
            let mut num = std::mem::take(&mut self.num);
            let mut changed = false;
            for (l, m) in factors {
                let mut m = *m;
                while m > 0 {
                    match num.div_linear_y(l.a(), l.b()) {
                        Some(q) => {
                            num = q;
                            m -= 1;
                            changed = true;
                        }
                        None => break,
                    }
                }
                kept.push((l.clone(), m));
            }
            self.num = num;
            if changed {
                self.den = PolyY::from_factors(kept);
            }
            return;
        }
        let mut g = self.den.coeffs().to_vec();
        for row in self.num.y_rows() {
            if g.len() == 1 {
                return;
            }
            if !row.is_empty() {
                g = upoly::gcd(&g, row);
            }
        }
        if g.len() > 1 {
            self.num = self.num.div_upoly_exact(&g).expect("gcd divides numerator");
            let d = upoly::div_exact(self.den.coeffs(), &g).expect("gcd divides denominator");
            self.den = PolyY::from_primitive(d);
        }
    }

    fn combine_unreduced(&self, other: &RatFunc2, negate: bool) -> RatFunc2 {
        let (den, ca, cb) = self.den.lcm_with_cofactors(&other.den);
        let a = self.num.mul_upoly(&ca);
        let b = other.num.mul_upoly(&cb);
        let num = if negate { a.sub(&b) } else { a.add(&b) };
        RatFunc2 { num, den }
    }

    /// Sum without the final common-factor cancellation.
    pub(crate) fn add_unreduced(&self, other: &RatFunc2) -> RatFunc2 {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.combine_unreduced(other, false)
    }

    /// Product without the final common-factor cancellation.
    pub(crate) fn mul_unreduced(&self, other: &RatFunc2) -> RatFunc2 {
        if self.is_zero() || other.is_zero() {
            return RatFunc2::zero();
        }
        RatFunc2 {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    /// Multiplies by a polynomial without touching the denominator.
    pub(crate) fn mul_poly(&self, p: &BiPoly) -> RatFunc2 {
        RatFunc2 {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFunc2 {
        if *c == 0 {
            return RatFunc2::zero();
        }
        RatFunc2 {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Divides by `alpha Y + beta`; `alpha = beta = 0` is a caller bug.
    pub fn div_linear_y(&self, alpha: &Rational, beta: &Rational) -> Result<RatFunc2> {
        if *alpha == 0 {
            if *beta == 0 {
                return Err(Error::InternalInconsistency(
                    "division by the zero polynomial".into(),
                ));
            }
            return Ok(self.scale(&Rational::from(beta.recip_ref())));
        }
        let (kappa, lin) = Linear::from_rational(alpha, beta);
        let mut f = RatFunc2 {
            num: self.num.scale(&Rational::from(kappa.recip_ref())),
            den: self.den.mul_linear(lin),
        };
        f.reduce();
        Ok(f)
    }

    /// Partial derivative of the given order.
    pub fn partial(&self, var: Var, order: u32) -> RatFunc2 {
        let mut f = self.clone();
        for _ in 0..order {
            f = f.partial_once(var);
        }
        f
    }

    fn partial_once(&self, var: Var) -> RatFunc2 {
        match var {
            Var::X => RatFunc2::from_factored(self.num.partial_x(), self.den.clone()),
            Var::Y => {
                if self.den.is_one() {
                    return self.num.partial_y().into();
                }
                // (n' d - n d') / d^2
                let d = self.den.coeffs();
                let dd = upoly::derivative(d);
                let num = self
                    .num
                    .partial_y()
                    .mul_upoly(d)
                    .sub(&self.num.mul_upoly(&dd));
                RatFunc2::from_factored(num, self.den.pow(2))
            }
        }
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &Rational, y: &Rational) -> Result<Rational> {
        let d = self.den.eval_rational(y);
        if d == 0 {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_rational(x, y) / d)
    }

    /// Value at a complex point, computed with [`super::GUARD_BITS`] extra
    /// bits and rounded to `prec`.
    ///
    /// Fails with [`Error::NearPole`] when `|den(y)|` is below
    /// `2^(-prec) * sum |d_k| |y|^k`, i.e. when the denominator cannot be
    /// distinguished from zero at the working precision.
    pub fn eval_float(&self, x: &Complex, y: &Complex, prec: u32) -> Result<Complex> {
        let wp = prec + super::GUARD_BITS;
        let xw = Complex::with_val(wp, x);
        let yw = Complex::with_val(wp, y);
        let d = self.den.eval_complex(&yw);
        let y_abs = Float::with_val(wp, yw.abs_ref());
        let scale = self.den.abs_scale(&y_abs);
        let mag = Float::with_val(wp, d.abs_ref());
        let threshold = scale >> prec;
        if mag <= threshold {
            return Err(Error::NearPole {
                magnitude: mag.to_f64(),
                threshold: threshold.to_f64(),
            });
        }
        let n = self.num.eval_complex(&xw, &yw);
        Ok(Complex::with_val(prec, n / d))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> Result<f64> {
        let v = self.eval_float(
            &Complex::with_val(64, (x, 0)),
            &Complex::with_val(64, (y, 0)),
            64,
        )?;
        Ok(v.real().to_f64())
    }

    /// Integer numerator `R` and scalar `d` with `self = R / (d * den)`.
    pub fn integer_form(&self) -> (BiPoly, Integer) {
        let d = self.num.denom().clone();
        (self.num.scale(&Rational::from(d.clone())), d)
    }
}

impl Add for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        let mut f = self.add_unreduced(rhs);
        f.reduce();
        f
    }
}

impl Sub for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        if rhs.is_zero() {
            return self.clone();
        }
        let mut f = self.combine_unreduced(rhs, true);
        f.reduce();
        f
    }
}

impl Mul for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        let mut f = self.mul_unreduced(rhs);
        f.reduce();
        f
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc2 {
    /// `num` when the denominator is 1, otherwise `(R)/(d*den)` with an
    /// integer numerator `R`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let (r, d) = self.integer_form();
        let single = match self.den.factors() {
            Some(fs) => fs.len() == 1 && fs[0].1 == 1,
            None => true,
        };
        if d == 1 && single {
            write!(f, "({r})/{}", self.den)
        } else if d == 1 {
            write!(f, "({r})/({})", self.den)
        } else {
            write!(f, "({r})/({d}{})", self.den)
        }
    }
}
