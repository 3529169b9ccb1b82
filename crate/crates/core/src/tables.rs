//! Recomputation of the six published tables and comparison with the
//! golden data.
//!
//! Tables 1 and 4 come from the symbolic recurrence; tables 3 and 6 from
//! the recurrence run exactly at `(2, 4)` and `(3, 8)`. The series tables
//! build one table per point at the largest order and read the smaller
//! truncations off the partial sums.

use rug::{Complex, Rational};

use crate::arith::RatFunc2;
use crate::error::{Error, Result};
use crate::golden::{self, DecimalCell};
use crate::recurrence::{build_table, CacheStore, Variant};
use crate::series::{gkw_point_values, mr_point_values, render_decimal, Scalar};

/// Series-table cells are within this many units of the last printed place.
pub const TOLERANCE_UNITS: u32 = 1;

/// `Psi_0..Psi_order` (table 1) or `Lambda_0..Lambda_order` (table 4).
pub fn function_rows(
    variant: Variant,
    order: usize,
    cache: Option<&mut CacheStore>,
) -> Result<Vec<RatFunc2>> {
    let table = build_table(variant, order, cache)?;
    Ok(table.psi_values()?.into_iter().cloned().collect())
}

/// `Psi_j(2, 4)` (table 3) or `Lambda_j(3, 8)` (table 6) for `j <= order`.
pub fn exact_rows(variant: Variant, order: usize) -> Result<Vec<Rational>> {
    match variant {
        Variant::Gkw => gkw_point_values(2, order),
        Variant::Mr => mr_point_values(&Complex::with_val(64, 4), order, 64)?
            .into_iter()
            .map(|v| {
                v.as_exact()
                    .cloned()
                    .ok_or_else(|| Error::InternalInconsistency("inexact value at s = 4".into()))
            })
            .collect(),
    }
}

/// A recomputed series-table cell next to its printed value.
#[derive(Clone, Debug)]
pub struct DecimalCheck {
    pub cell: DecimalCell,
    /// `S_N(n)` or `L_N(s)` as computed (exact, or at `prec` bits).
    pub value: Rational,
    /// `value` rendered to the printed number of places.
    pub rendered: String,
    /// `|value - printed|` in units of the last printed place.
    pub units_off: f64,
}

impl DecimalCheck {
    pub fn passes(&self) -> bool {
        self.units_off <= f64::from(TOLERANCE_UNITS)
    }
}

/// Recomputes table 2 (`S_N(n)`) or table 5 (`L_N(s)`). Non-integer `s` is
/// evaluated at `prec` bits.
pub fn series_table(id: u8, prec: u32) -> Result<Vec<DecimalCheck>> {
    series_cells(id, prec, |_| true)
}

/// [`series_table`] restricted to the golden cells that `keep` accepts.
pub fn series_cells(
    id: u8,
    prec: u32,
    keep: impl Fn(&DecimalCell) -> bool,
) -> Result<Vec<DecimalCheck>> {
    let cells: Vec<DecimalCell> = match id {
        2 => golden::table2()?,
        5 => golden::table5()?,
        _ => return Err(Error::Domain(format!("table {id} is not a series table"))),
    }
    .into_iter()
    .filter(|c| keep(c))
    .collect();
    let mut points: Vec<Rational> = Vec::new();
    for c in &cells {
        if !points.contains(&c.point) {
            points.push(c.point.clone());
        }
    }
    let mut out = Vec::with_capacity(cells.len());
    for point in points {
        let mine: Vec<&DecimalCell> = cells.iter().filter(|c| c.point == point).collect();
        let order = mine.iter().map(|c| c.order).max().unwrap_or(0);
        let partial = partial_sums(id, &point, order, prec)?;
        for cell in mine {
            let sum = &partial[cell.order];
            if *sum == 0 {
                return Err(Error::ZeroSum);
            }
            let value = Rational::from(sum.recip_ref());
            out.push(DecimalCheck {
                rendered: render_decimal(&value, cell.places as usize),
                units_off: cell.units_off(&value).to_f64(),
                cell: cell.clone(),
                value,
            });
        }
    }
    // keep the golden row-major order
    out.sort_by_key(|c| cells.iter().position(|g| *g == c.cell));
    Ok(out)
}

/// Alternating partial sums `sum_{j<=k} (-1)^j term_j` for `k <= order`, as
/// exact rationals (floating values are converted exactly).
fn partial_sums(id: u8, point: &Rational, order: usize, prec: u32) -> Result<Vec<Rational>> {
    let terms: Vec<Rational> = if id == 2 {
        let n = point
            .numer()
            .to_u32()
            .filter(|_| *point.denom() == 1)
            .ok_or_else(|| Error::Domain(format!("n = {point} is not a positive integer")))?;
        gkw_point_values(n, order)?
    } else {
        let s = Complex::with_val(prec, point);
        mr_point_values(&s, order, prec)?
            .into_iter()
            .map(|v| match v {
                Scalar::Exact(q) => Ok(q),
                Scalar::Float(z) => z
                    .real()
                    .to_rational()
                    .ok_or_else(|| Error::Domain("non-finite series term".into())),
            })
            .collect::<Result<_>>()?
    };
    let mut acc = Rational::new();
    Ok(terms
        .iter()
        .enumerate()
        .map(|(j, t)| {
            if j % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
            acc.clone()
        })
        .collect())
}
