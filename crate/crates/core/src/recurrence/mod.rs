//! The coefficient tables `A_{p,t}`, `Psi_j` (and their `B`, `Lambda`
//! counterparts), the raw scalar recurrence used to cross-check them, and
//! the closed forms for the first few Taylor coefficients.

pub mod cache;
pub mod closed_form;
pub mod domain;
mod engine;
pub mod raw;
mod table;

pub use cache::CacheStore;
pub use closed_form::{closed_form_checks, ClosedFormReport};
pub use domain::{ComplexPoint, Domain, RationalPoint, Symbolic};
pub use engine::{isolated_coefficient, CellSolution, CellStore, Engine, EngineOptions, NoStore};
pub use raw::{raw_recurrence, RawTable};
pub use table::{CoeffTable, Variant};

use crate::arith::{Linear, RatFunc2};
use crate::error::Result;

/// Builds the symbolic table of order `order`, reading and writing
/// entries through `cache` when given.
pub fn build_table(
    variant: Variant,
    order: usize,
    cache: Option<&mut CacheStore>,
) -> Result<CoeffTable> {
    let engine = Engine::new(&Symbolic, variant, order, EngineOptions::default());
    match cache {
        Some(store) => engine.build(order, store),
        None => engine.build(order, &mut NoStore),
    }
}

/// Builds the table specialized at a point of `domain`. Equal to
/// evaluating the symbolic table there, but far cheaper at large orders.
pub fn build_table_in<D: Domain>(
    domain: &D,
    variant: Variant,
    order: usize,
) -> Result<CoeffTable<D::Elem>> {
    Engine::new(domain, variant, order, EngineOptions::default()).build(order, &mut NoStore)
}

/// Solves a single symbolic cell from a partially filled table.
pub fn solve_cell(table: &CoeffTable, p: usize, t: usize) -> Result<CellSolution<RatFunc2>> {
    Engine::new(
        &Symbolic,
        table.variant(),
        p.max(t),
        EngineOptions::default(),
    )
    .solve_cell(table, p, t)
}

/// The linear factors that can occur in denominators up to `order`.
pub fn denominator_factors(order: usize) -> Vec<Linear> {
    let mut out: Vec<Linear> = (0..=order)
        .flat_map(|p| (0..=order).map(move |t| (p, t)))
        .filter(|&(p, t)| p != t)
        .map(|(p, t)| {
            let (alpha, beta) = isolated_coefficient(p, t);
            Linear::from_rational(&alpha, &beta).1
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
