use std::fmt;

use crate::arith::RatFunc2;
use crate::error::{Error, Result};

/// Which recurrence to run.
///
/// `Gkw` builds `A_{p,t}` and `Psi_j` for the Gauss-Kuzmin-Wirsing
/// eigenvalues. `Mr` builds `B_{p,t}` and `Lambda_j` for the dominant
/// Mayer-Ruelle eigenvalue; it differs only in the binomial
/// `C(k - i, t - i - j)`, which replaces `C(X + k - i - 1, t - i - j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Gkw,
    Mr,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Gkw => "GKW",
            Variant::Mr => "MR",
        }
    }

    /// Lowercase name used for cache directories.
    pub fn dir_name(self) -> &'static str {
        match self {
            Variant::Gkw => "gkw",
            Variant::Mr => "mr",
        }
    }

    /// Cache-header kinds for the grid and series entries.
    pub fn kinds(self) -> (&'static str, &'static str) {
        match self {
            Variant::Gkw => ("A", "PSI"),
            Variant::Mr => ("B", "LAMBDA"),
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "gkw" => Some(Variant::Gkw),
            "mr" => Some(Variant::Mr),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The triangular-order grid `{A_{p,t}}` (or `B`) and the list `{Psi_j}`
/// (or `Lambda_j`) up to order `N`.
///
/// The element type is the coefficient domain: [`RatFunc2`] for symbolic
/// tables, or exact rationals / complex floats for tables specialized at a
/// point.
#[derive(Clone, Debug)]
pub struct CoeffTable<E = RatFunc2> {
    variant: Variant,
    order: usize,
    grid: Vec<Vec<Option<E>>>,
    psi: Vec<Option<E>>,
}

impl<E: Clone> CoeffTable<E> {
    /// An empty table of order `order`.
    pub fn empty(variant: Variant, order: usize) -> Self {
        CoeffTable {
            variant,
            order,
            grid: vec![vec![None; order + 1]; order + 1],
            psi: vec![None; order + 1],
        }
    }

    /// Builds a table directly from series entries only, with an empty
    /// grid. Used for hand-made tables in tests and for series evaluation
    /// from externally supplied values.
    pub fn from_series(variant: Variant, psi: Vec<E>) -> Self {
        let order = psi.len().saturating_sub(1);
        CoeffTable {
            variant,
            order,
            grid: vec![vec![None; order + 1]; order + 1],
            psi: psi.into_iter().map(Some).collect(),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// The order `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cell(&self, p: usize, t: usize) -> Option<&E> {
        self.grid.get(p)?.get(t)?.as_ref()
    }

    pub fn psi(&self, j: usize) -> Option<&E> {
        self.psi.get(j)?.as_ref()
    }

    pub(crate) fn require_cell(&self, p: usize, t: usize) -> Result<&E> {
        self.cell(p, t).ok_or(Error::MissingDependency { p, t })
    }

    pub fn require_psi(&self, j: usize) -> Result<&E> {
        self.psi(j).ok_or(Error::MissingPsi(j))
    }

    pub fn set_cell(&mut self, p: usize, t: usize, value: E) {
        self.grid[p][t] = Some(value);
    }

    pub fn set_psi(&mut self, j: usize, value: E) {
        self.psi[j] = Some(value);
    }

    /// All series entries `0..=order`; fails if any is missing.
    pub fn psi_values(&self) -> Result<Vec<&E>> {
        (0..=self.order).map(|j| self.require_psi(j)).collect()
    }

    /// Requires the table to hold at least `order` series entries.
    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.order {
            return Err(Error::TableTooShort {
                requested: order,
                available: self.order,
            });
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.psi.iter().all(Option::is_some) && self.grid.iter().flatten().all(Option::is_some)
    }

    /// Maps every entry through `f` (e.g. evaluation at a point).
    pub fn map<F, G>(&self, mut f: G) -> Result<CoeffTable<F>>
    where
        F: Clone,
        G: FnMut(&E) -> Result<F>,
    {
        let mut grid = Vec::with_capacity(self.grid.len());
        for row in &self.grid {
            let mut out = Vec::with_capacity(row.len());
            for c in row {
                out.push(c.as_ref().map(&mut f).transpose()?);
            }
            grid.push(out);
        }
        let psi = self
            .psi
            .iter()
            .map(|c| c.as_ref().map(&mut f).transpose())
            .collect::<Result<_>>()?;
        Ok(CoeffTable {
            variant: self.variant,
            order: self.order,
            grid,
            psi,
        })
    }

    /// The leading `order + 1` entries as a table of smaller order.
    pub fn truncated(&self, order: usize) -> CoeffTable<E> {
        let order = order.min(self.order);
        CoeffTable {
            variant: self.variant,
            order,
            grid: self.grid[..=order]
                .iter()
                .map(|r| r[..=order].to_vec())
                .collect(),
            psi: self.psi[..=order].to_vec(),
        }
    }
}
