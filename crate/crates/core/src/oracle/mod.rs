//! Independent numerical checks: a truncated matrix of the transfer
//! operator, continuant sums for the leading eigenvalue of the
//! generalized operator, and two trace formulas.

mod matrix;
mod pseudozeta;
mod trace;
mod zeta;

use std::fmt;

use rug::Float;

pub use matrix::{gkw_eigenvalues, OperatorMatrix, QR_ITERATION_CAP};
pub use pseudozeta::{
    pseudozeta_estimate, pseudozeta_sum, PseudoZetaEstimate, PseudoZetaOptions, PseudoZetaSum,
    SubtreeModel,
};
pub use trace::{trace_binomial, trace_xi};
pub use zeta::{bernoulli_even, zeta_minus_one};

use crate::series::render_float;

/// A conjectured value next to an independently computed one.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub quantity: String,
    pub conjecture: Float,
    pub oracle: Float,
    pub diff: Float,
    pub params: String,
}

impl OracleReport {
    pub fn new(
        quantity: impl Into<String>,
        conjecture: Float,
        oracle: Float,
        params: impl Into<String>,
    ) -> Self {
        let prec = conjecture.prec().max(oracle.prec());
        let diff = Float::with_val(prec, &conjecture - &oracle).abs();
        OracleReport {
            quantity: quantity.into(),
            conjecture,
            oracle,
            diff,
            params: params.into(),
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.diff <= tol
    }

    pub const CSV_HEADER: &'static str = "quantity,conjecture,oracle,diff,params";

    /// `quantity,conjecture,oracle,diff,params`; `params` entries are
    /// separated by `;` to keep the row five columns wide.
    pub fn csv_row(&self, digits: usize) -> String {
        format!(
            "{},{},{},{},{}",
            self.quantity,
            render_float(&self.conjecture, digits),
            render_float(&self.oracle, digits),
            sci(&self.diff),
            self.params.replace(',', ";")
        )
    }
}

fn sci(x: &Float) -> String {
    format!("{:.3e}", x.to_f64())
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} conjecture={} oracle={} diff={} [{}]",
            self.quantity,
            render_float(&self.conjecture, 16),
            render_float(&self.oracle, 16),
            sci(&self.diff),
            self.params
        )
    }
}
