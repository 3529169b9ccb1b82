//! Truncated alternating series at a point, and the derivative-based
//! constants read off the `Lambda` series at `s = 2`.
//!
//! `S_N(n) = (sum_{j<=N} (-1)^j Psi_j(n, 2^n))^-1` and
//! `L_N(s) = (sum_{j<=N} (-1)^j Lambda_j(s-1, 2^(s-1)))^-1`.

mod derivative;
mod render;

use std::fmt;

use rug::{Complex, Float, Rational};

use crate::arith::float::{complex_as_rational, pow2};
use crate::arith::{RatFunc2, GUARD_BITS};
use crate::error::{Error, Result};
use crate::recurrence::{build_table_in, CoeffTable, ComplexPoint, RationalPoint, Variant};

pub use derivative::{
    alternating_partials, hensley_estimate, klevy_linear_form, lambda_derivatives, Partials,
};
pub use render::{render_complex, render_decimal, render_float};

/// A value on the exact or the floating path.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(Complex),
}

impl Scalar {
    pub fn to_complex(&self, prec: u32) -> Complex {
        match self {
            Scalar::Exact(q) => Complex::with_val(prec, q),
            Scalar::Float(z) => Complex::with_val(prec, z),
        }
    }

    /// Real part as a float.
    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Scalar::Exact(q) => Float::with_val(prec, q),
            Scalar::Float(z) => Float::with_val(prec, z.real()),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => *q == 0,
            Scalar::Float(z) => z.is_zero(),
        }
    }

    /// `|self|` as an `f64` diagnostic.
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().abs(),
            Scalar::Float(z) => Float::with_val(64, z.abs_ref()).to_f64(),
        }
    }

    pub fn render(&self, digits: usize) -> String {
        match self {
            Scalar::Exact(q) => render_decimal(q, digits),
            Scalar::Float(z) => render_complex(z, digits),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(z) => write!(f, "{}", render_complex(z, 20)),
        }
    }
}

/// Where a series is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesPoint {
    /// `(X, Y) = (n, 2^n)`.
    N(u32),
    /// `(X, Y) = (s - 1, 2^(s-1))`.
    S(Complex),
}

impl fmt::Display for SeriesPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesPoint::N(n) => write!(f, "{n}"),
            SeriesPoint::S(s) => match complex_as_rational(s) {
                Some(q) => write!(f, "{q}"),
                None => write!(f, "{}", render_complex(s, 6)),
            },
        }
    }
}

/// An `N`-truncation of one of the alternating series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesResult {
    pub variant: Variant,
    pub point: SeriesPoint,
    pub order: usize,
    /// `sum_{j<=k} (-1)^j term_j` for `k = 0..=order`.
    pub partial_sums: Vec<Scalar>,
    /// Reciprocal of the last partial sum.
    pub value: Scalar,
    /// `|term_j|` for `j = 0..=order`.
    pub term_magnitudes: Vec<f64>,
}

impl SeriesResult {
    /// Assembles the truncation from the terms `term_0..=term_N`.
    pub fn from_terms(variant: Variant, point: SeriesPoint, terms: &[Scalar]) -> Result<Self> {
        let order = terms.len().checked_sub(1).ok_or(Error::ZeroSum)?;
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut acc: Option<Scalar> = None;
        for (j, t) in terms.iter().enumerate() {
            let signed = if j % 2 == 0 { t.clone() } else { neg(t) };
            acc = Some(match acc {
                None => signed,
                Some(a) => add(&a, &signed),
            });
            partial_sums.push(acc.clone().expect("just set"));
        }
        let last = partial_sums.last().expect("nonempty");
        if last.is_zero() {
            return Err(Error::ZeroSum);
        }
        let value = match last {
            Scalar::Exact(q) => Scalar::Exact(q.clone().recip()),
            Scalar::Float(z) => Scalar::Float(Complex::with_val(z.prec(), z.recip_ref())),
        };
        Ok(SeriesResult {
            variant,
            point,
            order,
            partial_sums,
            value,
            term_magnitudes: terms.iter().map(Scalar::magnitude).collect(),
        })
    }

    /// `"<point>,<N>,<value>,<digits>"`.
    pub fn csv_row(&self, digits: usize) -> String {
        format!(
            "{},{},{},{digits}",
            self.point,
            self.order,
            self.value.render(digits)
        )
    }
}

fn neg(a: &Scalar) -> Scalar {
    match a {
        Scalar::Exact(q) => Scalar::Exact(Rational::from(-q)),
        Scalar::Float(z) => Scalar::Float(Complex::with_val(z.prec(), -z)),
    }
}

fn add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(Rational::from(x + y)),
        _ => {
            let prec = match (a, b) {
                (Scalar::Float(z), _) | (_, Scalar::Float(z)) => z.prec().0,
                _ => unreachable!(),
            };
            Scalar::Float(Complex::with_val(
                prec,
                a.to_complex(prec) + b.to_complex(prec),
            ))
        }
    }
}

fn require_variant<E: Clone>(table: &CoeffTable<E>, variant: Variant) -> Result<()> {
    if table.variant() != variant {
        return Err(Error::VariantMismatch {
            expected: variant.name().into(),
            found: table.variant().name().into(),
        });
    }
    Ok(())
}

/// `S_N(n)` from a symbolic table, exactly.
pub fn gkw_partial_sum(n: u32, order: usize, table: &CoeffTable) -> Result<SeriesResult> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    require_variant(table, Variant::Gkw)?;
    table.check_order(order)?;
    let pt = RationalPoint::gkw(n);
    let terms = (0..=order)
        .map(|j| {
            Ok(Scalar::Exact(
                table.require_psi(j)?.eval_exact(&pt.x, &pt.y)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    SeriesResult::from_terms(Variant::Gkw, SeriesPoint::N(n), &terms)
}

/// `Psi_j(n, 2^n)` for `j <= order`, computed by running the recurrence at
/// the point instead of through the symbolic table.
pub fn gkw_point_values(n: u32, order: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let table = build_table_in(&RationalPoint::gkw(n), Variant::Gkw, order)?;
    Ok(table.psi_values()?.into_iter().cloned().collect())
}

/// `S_N(n)` without building symbolic entries; exact.
pub fn gkw_series(n: u32, order: usize) -> Result<SeriesResult> {
    let terms: Vec<Scalar> = gkw_point_values(n, order)?
        .into_iter()
        .map(Scalar::Exact)
        .collect();
    SeriesResult::from_terms(Variant::Gkw, SeriesPoint::N(n), &terms)
}

/// Integer `s >= 2` if `s` is one.
fn integer_s(s: &Complex) -> Option<u32> {
    let q = complex_as_rational(s)?;
    if *q.denom() != 1 {
        return None;
    }
    q.numer().to_u32().filter(|&v| v >= 2)
}

fn check_mr_domain(s: &Complex) -> Result<()> {
    if !s.real().is_finite() || !s.imag().is_finite() || *s.real() <= 1 {
        return Err(Error::Domain(format!(
            "series needs Re s > 1, got s = {}",
            render_complex(s, 6)
        )));
    }
    Ok(())
}

/// `L_N(s)` from a symbolic table: exact for integer `s`, otherwise at
/// `prec` bits with `2^(s-1)` on the principal branch.
pub fn mr_partial_sum(
    s: &Complex,
    order: usize,
    table: &CoeffTable,
    prec: u32,
) -> Result<SeriesResult> {
    check_mr_domain(s)?;
    require_variant(table, Variant::Mr)?;
    table.check_order(order)?;
    let psi: Vec<&RatFunc2> = (0..=order)
        .map(|j| table.require_psi(j))
        .collect::<Result<_>>()?;
    let terms = match integer_s(s) {
        Some(si) => {
            let pt = RationalPoint::mr_integer(si);
            psi.iter()
                .map(|f| Ok(Scalar::Exact(f.eval_exact(&pt.x, &pt.y)?)))
                .collect::<Result<Vec<_>>>()?
        }
        None => {
            let wp = prec + GUARD_BITS;
            let x = Complex::with_val(wp, s - 1u32);
            let y = pow2(&x);
            psi.iter()
                .map(|f| Ok(Scalar::Float(f.eval_float(&x, &y, prec)?)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    SeriesResult::from_terms(Variant::Mr, SeriesPoint::S(s.clone()), &terms)
}

/// `Lambda_j(s-1, 2^(s-1))` for `j <= order` by running the recurrence at
/// the point: exact for integer `s`, otherwise at `prec` bits plus guard.
pub fn mr_point_values(s: &Complex, order: usize, prec: u32) -> Result<Vec<Scalar>> {
    check_mr_domain(s)?;
    if let Some(si) = integer_s(s) {
        let table = build_table_in(&RationalPoint::mr_integer(si), Variant::Mr, order)?;
        return Ok(table
            .psi_values()?
            .into_iter()
            .map(|q| Scalar::Exact(q.clone()))
            .collect());
    }
    let wp = prec + GUARD_BITS;
    let dom = ComplexPoint::mr(&Complex::with_val(wp, s), wp);
    let table = build_table_in(&dom, Variant::Mr, order)?;
    Ok(table
        .psi_values()?
        .into_iter()
        .map(|z| Scalar::Float(Complex::with_val(prec, z)))
        .collect())
}

/// `L_N(s)` without building symbolic entries.
pub fn mr_series(s: &Complex, order: usize, prec: u32) -> Result<SeriesResult> {
    let terms = mr_point_values(s, order, prec)?;
    SeriesResult::from_terms(Variant::Mr, SeriesPoint::S(s.clone()), &terms)
}
