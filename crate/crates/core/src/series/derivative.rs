//! Derivatives of `F_N(s) = sum_{j<=N} (-1)^j Lambda_j(s-1, 2^(s-1))` at
//! `s = 2`, where `(X, Y) = (1, 2)` and `dY/ds = Y log 2`.

use rug::float::Constant;
use rug::{Float, Rational};

use crate::arith::{Var, GUARD_BITS};
use crate::error::{Error, Result};
use crate::recurrence::{CoeffTable, Variant};

/// Value and partials up to order 2 of the truncated alternating sum, at
/// `(X, Y) = (1, 2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partials {
    pub g: Rational,
    pub gx: Rational,
    pub gy: Rational,
    pub gxx: Rational,
    pub gxy: Rational,
    pub gyy: Rational,
}

pub fn alternating_partials(order: usize, table: &CoeffTable) -> Result<Partials> {
    if table.variant() != Variant::Mr {
        return Err(Error::VariantMismatch {
            expected: Variant::Mr.name().into(),
            found: table.variant().name().into(),
        });
    }
    table.check_order(order)?;
    let (x, y) = (Rational::from(1), Rational::from(2));
    let mut acc = Partials {
        g: Rational::new(),
        gx: Rational::new(),
        gy: Rational::new(),
        gxx: Rational::new(),
        gxy: Rational::new(),
        gyy: Rational::new(),
    };
    for j in 0..=order {
        let f = table.require_psi(j)?;
        let fx = f.partial(Var::X, 1);
        let fy = f.partial(Var::Y, 1);
        let vals = [
            f.eval_exact(&x, &y)?,
            fx.eval_exact(&x, &y)?,
            fy.eval_exact(&x, &y)?,
            fx.partial(Var::X, 1).eval_exact(&x, &y)?,
            fx.partial(Var::Y, 1).eval_exact(&x, &y)?,
            fy.partial(Var::Y, 1).eval_exact(&x, &y)?,
        ];
        let slots = [
            &mut acc.g,
            &mut acc.gx,
            &mut acc.gy,
            &mut acc.gxx,
            &mut acc.gxy,
            &mut acc.gyy,
        ];
        for (slot, v) in slots.into_iter().zip(vals) {
            if j % 2 == 0 {
                *slot += v;
            } else {
                *slot -= v;
            }
        }
    }
    Ok(acc)
}

/// The exact pair `(a, b)` with `F_N'(2) = a log 2 + b`.
pub fn klevy_linear_form(order: usize, table: &CoeffTable) -> Result<(Rational, Rational)> {
    let d = alternating_partials(order, table)?;
    Ok((d.gy * 2u32, d.gx))
}

fn derivatives_of(d: &Partials, prec: u32) -> (Float, Float, Float) {
    let wp = prec + GUARD_BITS;
    let l = Float::with_val(wp, Constant::Log2);
    let fl = |q: &Rational| Float::with_val(wp, q);
    let yl = Float::with_val(wp, &l * 2u32);
    let f = fl(&d.g);
    let f1 = fl(&d.gx) + fl(&d.gy) * &yl;
    let f2 = fl(&d.gxx)
        + fl(&d.gxy) * Float::with_val(wp, &yl * 2u32)
        + fl(&d.gyy) * Float::with_val(wp, yl.square_ref())
        + fl(&d.gy) * Float::with_val(wp, &yl * &l);
    (f, f1, f2)
}

/// `(lambda_1'(2), lambda_1''(2))` from `lambda_1 = 1 / F_N`.
pub fn lambda_derivatives(order: usize, table: &CoeffTable, prec: u32) -> Result<(Float, Float)> {
    let d = alternating_partials(order, table)?;
    if d.g == 0 {
        return Err(Error::ZeroSum);
    }
    let (f, f1, f2) = derivatives_of(&d, prec);
    let wp = f.prec();
    let f_sq = Float::with_val(wp, f.square_ref());
    let l1 = Float::with_val(wp, -&f1) / &f_sq;
    let l2 = (Float::with_val(wp, f1.square_ref()) * 2u32 - Float::with_val(wp, &f * &f2))
        / Float::with_val(wp, &f_sq * &f);
    Ok((Float::with_val(prec, l1), Float::with_val(prec, l2)))
}

/// `(lambda_1'(2)^2 - lambda_1''(2)) / (pi^6 lambda_1'(2)^3)`.
pub fn hensley_estimate(order: usize, table: &CoeffTable, prec: u32) -> Result<Float> {
    let (l1, l2) = lambda_derivatives(order, table, prec)?;
    let wp = prec + GUARD_BITS;
    let pi6 = Float::with_val(wp, Constant::Pi).square().square()
        * Float::with_val(wp, Constant::Pi).square();
    let l1w = Float::with_val(wp, &l1);
    let num = Float::with_val(wp, l1w.square_ref()) - &l2;
    let den = pi6 * Float::with_val(wp, l1w.square_ref()) * &l1w;
    Ok(Float::with_val(prec, num / den))
}
