//! The coefficient recurrence.
//!
//! For each cell `(p, t)`:
//!
//! ```text
//! (2^p Y - 2^t) A[p,t]
//!   = sum_{k<=p} sum_{j<=min(p-k,t)} sum_{i<=t-j}
//!         Psi[j] A[k,i] C(X+p-i-j, p-j-k) U(k,i,j) (-1)^(k+i) 2^(i+j-1)
//!   + sum_{k<p} sum_{i=max(0,k+t-p)}^{t-1}
//!         A[k,i] (X+p-t)/(t-i) C(X+p-i-1, p-k-1) C(p-k-1, p+i-k-t) (-1)^(p+k) 2^i
//!   + sum_{k<p} A[k,t] C(X+p-t, p-k) (-1)^(p+k) 2^t
//! ```
//!
//! with `U = C(X+k-i-1, t-i-j)` for [`Variant::Gkw`] and `U = C(k-i, t-i-j)`
//! for [`Variant::Mr`]. The unknown `A[p,t]` also appears on the right
//! through `k = p, j = 0, i = t`; moving it left gives the coefficient
//! `(2^p - (-1)^(p-t) 2^t) Y - 2^t + (-1)^(p-t) 2^t`, which vanishes exactly
//! when `p = t`. There the equation is solved for `Psi[p]` instead, whose
//! coefficient is `2^(p-1)`, and `A[p,p]` is set to zero.

use std::collections::HashMap;

use rayon::prelude::*;
use rug::{Integer, Rational};

use super::domain::Domain;
use super::table::{CoeffTable, Variant};
use crate::arith::binom::{gen_binom, int_binom};
use crate::error::{Error, Result};

/// Knobs that do not change the mathematics.
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Start the second sum at `i = 0` instead of `max(0, k + t - p)`.
    /// The extra terms carry the factor `C(p-k-1, negative) = 0`.
    pub relax_second_sum_bound: bool,
}

/// Result of solving a single cell.
#[derive(Clone, Debug, PartialEq)]
pub enum CellSolution<E> {
    /// An off-diagonal grid entry.
    Grid(E),
    /// A diagonal cell: the series entry, with the grid entry fixed to 0.
    Series(E),
}

/// Persistence hook for computed entries.
pub trait CellStore<E> {
    fn load_cell(&mut self, p: usize, t: usize) -> Result<Option<E>>;
    fn save_cell(&mut self, p: usize, t: usize, value: &E) -> Result<()>;
    fn load_psi(&mut self, j: usize) -> Result<Option<E>>;
    fn save_psi(&mut self, j: usize, value: &E) -> Result<()>;
}

/// A store that keeps nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoStore;

impl<E> CellStore<E> for NoStore {
    fn load_cell(&mut self, _: usize, _: usize) -> Result<Option<E>> {
        Ok(None)
    }
    fn save_cell(&mut self, _: usize, _: usize, _: &E) -> Result<()> {
        Ok(())
    }
    fn load_psi(&mut self, _: usize) -> Result<Option<E>> {
        Ok(None)
    }
    fn save_psi(&mut self, _: usize, _: &E) -> Result<()> {
        Ok(())
    }
}

/// `(-1)^e * 2^k` for possibly negative `k`.
fn signed_pow2(negative: bool, k: i64) -> Rational {
    let mag = if k >= 0 {
        Rational::from(Integer::from(1) << k as u32)
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << (-k) as u32))
    };
    if negative {
        -mag
    } else {
        mag
    }
}

/// Coefficient `(alpha, beta)` of the isolated unknown: `alpha Y + beta`.
pub fn isolated_coefficient(p: usize, t: usize) -> (Rational, Rational) {
    let odd = (p + t) % 2 == 1;
    let two_p = Rational::from(Integer::from(1) << p as u32);
    let two_t = Rational::from(Integer::from(1) << t as u32);
    // (2^p - (-1)^(p-t) 2^t) Y + (-2^t + (-1)^(p-t) 2^t)
    if odd {
        (two_p + &two_t, (-(two_t * 2u32)))
    } else {
        (two_p - two_t, Rational::new())
    }
}

/// Recurrence runner over a coefficient domain.
pub struct Engine<'d, D: Domain> {
    domain: &'d D,
    variant: Variant,
    options: EngineOptions,
    binoms: HashMap<(i64, u32), D::Elem>,
}

impl<'d, D: Domain> Engine<'d, D> {
    /// Prepares binomial polynomials for tables up to `order`.
    pub fn new(domain: &'d D, variant: Variant, order: usize, options: EngineOptions) -> Self {
        let n = order as i64;
        let keys: Vec<(i64, u32)> = (-n - 1..=n + 1)
            .flat_map(|s| (0..=order as u32 + 1).map(move |k| (s, k)))
            .collect();
        let binoms = keys
            .par_iter()
            .map(|&(s, k)| ((s, k), domain.x_binom(s, k)))
            .collect();
        Engine {
            domain,
            variant,
            options,
            binoms,
        }
    }

    pub fn domain(&self) -> &D {
        self.domain
    }

    fn binom(&self, shift: i64, k: i64) -> D::Elem {
        debug_assert!(k >= 0);
        match self.binoms.get(&(shift, k as u32)) {
            Some(b) => b.clone(),
            None => self.domain.x_binom(shift, k as u32),
        }
    }

    /// Table initialized with `A[0,0] = 1` and `Psi[0] = 2Y - 2`.
    pub fn seeded_table(&self, order: usize) -> CoeffTable<D::Elem> {
        let d = self.domain;
        let mut table = CoeffTable::empty(self.variant, order);
        table.set_cell(0, 0, d.constant(&Rational::from(1)));
        table.set_psi(0, d.linear_y(&Rational::from(2), &Rational::from(-2)));
        table
    }

    /// Weight of `Psi[j] A[k,i]` in the first sum.
    fn first_weight(&self, p: usize, t: usize, k: usize, i: usize, j: usize) -> D::Elem {
        let d = self.domain;
        let (p, t, k, i, j) = (p as i64, t as i64, k as i64, i as i64, j as i64);
        let b1 = self.binom(p - i - j, p - j - k);
        let factor = signed_pow2((k + i) % 2 == 1, i + j - 1);
        let w = match self.variant {
            Variant::Gkw => d.mul(&b1, &self.binom(k - i - 1, t - i - j)),
            Variant::Mr => {
                let u = gen_binom(k - i, t - i - j);
                if u.is_zero() {
                    return d.zero();
                }
                d.scale(&b1, &Rational::from(u))
            }
        };
        d.scale(&w, &factor)
    }

    /// `sum_j Psi[j] S_j` over the first sum, skipping the self term and,
    /// on the diagonal, the unknown `Psi[p]`.
    fn first_sum(&self, table: &CoeffTable<D::Elem>, p: usize, t: usize) -> Result<D::Elem> {
        let d = self.domain;
        let diagonal = p == t && p >= 1;
        let jmax = p.min(t);
        let parts: Vec<Result<D::Elem>> = (0..=jmax)
            .into_par_iter()
            .map(|j| {
                if diagonal && j == p {
                    return Ok(d.zero());
                }
                let mut s = d.zero();
                for k in 0..=p - j {
                    for i in 0..=t - j {
                        if k == p && i == t {
                            continue;
                        }
                        let a = table.require_cell(k, i)?;
                        if d.is_zero(a) {
                            continue;
                        }
                        let w = self.first_weight(p, t, k, i, j);
                        if d.is_zero(&w) {
                            continue;
                        }
                        s = d.add(&s, &d.mul(a, &w));
                    }
                }
                if d.is_zero(&s) {
                    return Ok(s);
                }
                let psi = table.require_psi(j)?;
                Ok(d.mul(psi, &d.reduce(s)))
            })
            .collect();
        let mut acc = d.zero();
        for part in parts {
            acc = d.add(&acc, &part?);
        }
        Ok(acc)
    }

    /// Second and third sums.
    fn lower_sums(&self, table: &CoeffTable<D::Elem>, p: usize, t: usize) -> Result<D::Elem> {
        let d = self.domain;
        let parts: Vec<Result<D::Elem>> = (0..p)
            .into_par_iter()
            .map(|k| {
                let (pi, ti, ki) = (p as i64, t as i64, k as i64);
                let sign = (p + k) % 2 == 1;
                let mut s = d.zero();
                let lo = if self.options.relax_second_sum_bound {
                    0
                } else {
                    (ki + ti - pi).max(0)
                };
                for i in lo..ti {
                    let c = int_binom(pi - ki - 1, pi + i - ki - ti)?;
                    if c.is_zero() {
                        continue;
                    }
                    let a = table.require_cell(k, i as usize)?;
                    if d.is_zero(a) {
                        continue;
                    }
                    let scalar = Rational::from((c, Integer::from(ti - i))) * signed_pow2(sign, i);
                    let w = d.mul(&d.x_shift(pi - ti), &self.binom(pi - i - 1, pi - ki - 1));
                    s = d.add(&s, &d.mul(a, &d.scale(&w, &scalar)));
                }
                let a = table.require_cell(k, t)?;
                if !d.is_zero(a) {
                    let w = d.scale(&self.binom(pi - ti, pi - ki), &signed_pow2(sign, ti));
                    s = d.add(&s, &d.mul(a, &w));
                }
                Ok(s)
            })
            .collect();
        let mut acc = d.zero();
        for part in parts {
            acc = d.add(&acc, &part?);
        }
        Ok(acc)
    }

    /// Coefficient of `Psi[p]` in the diagonal equation, asserted constant.
    fn series_coefficient(&self, table: &CoeffTable<D::Elem>, p: usize) -> Result<Rational> {
        let d = self.domain;
        // only k = 0, i = 0 admits j = p
        let a00 = table.require_cell(0, 0)?;
        let w = d.mul(a00, &self.first_weight(p, p, 0, 0, p));
        let c = d.as_constant(&d.reduce(w)).ok_or_else(|| {
            Error::InternalInconsistency(format!("series coefficient at ({p},{p}) is not constant"))
        })?;
        let expected = Rational::from(Integer::from(1) << (p as u32 - 1));
        if c != expected {
            return Err(Error::InternalInconsistency(format!(
                "series coefficient at ({p},{p}) is {c}, expected {expected}"
            )));
        }
        Ok(c)
    }

    /// Solves cell `(p, t)` from the already filled entries.
    pub fn solve_cell(
        &self,
        table: &CoeffTable<D::Elem>,
        p: usize,
        t: usize,
    ) -> Result<CellSolution<D::Elem>> {
        let d = self.domain;
        if p == 0 && t == 0 {
            return Ok(CellSolution::Grid(d.constant(&Rational::from(1))));
        }
        let first = self.first_sum(table, p, t)?;
        let lower = self.lower_sums(table, p, t)?;
        let rest = d.add(&first, &lower);
        if p == t {
            let c = self.series_coefficient(table, p)?;
            let psi = d.scale(&rest, &(-c.recip()));
            return Ok(CellSolution::Series(d.reduce(psi)));
        }
        let (alpha, beta) = isolated_coefficient(p, t);
        if alpha == 0 && beta == 0 {
            return Err(Error::InternalInconsistency(format!(
                "isolated coefficient vanishes off the diagonal at ({p},{t})"
            )));
        }
        let a = d.div_linear_y(&d.reduce(rest), &alpha, &beta)?;
        Ok(CellSolution::Grid(d.reduce(a)))
    }

    /// Fills a table of order `order` column by column: for each `P`,
    /// cells `t < P`, then the diagonal series entry, then `t > P`.
    pub fn build<S: CellStore<D::Elem>>(
        &self,
        order: usize,
        store: &mut S,
    ) -> Result<CoeffTable<D::Elem>> {
        let mut table = self.seeded_table(order);
        for big_p in 0..=order {
            for t in (0..big_p).chain(big_p..=big_p).chain(big_p + 1..=order) {
                if big_p == 0 && t == 0 {
                    continue;
                }
                if big_p == t {
                    let psi = match store.load_psi(big_p)? {
                        Some(v) => v,
                        None => {
                            let CellSolution::Series(v) = self.solve_cell(&table, big_p, t)? else {
                                unreachable!("diagonal cells yield series entries")
                            };
                            store.save_psi(big_p, &v)?;
                            v
                        }
                    };
                    table.set_psi(big_p, psi);
                    table.set_cell(big_p, t, self.domain.zero());
                    continue;
                }
                let a = match store.load_cell(big_p, t)? {
                    Some(v) => v,
                    None => {
                        let CellSolution::Grid(v) = self.solve_cell(&table, big_p, t)? else {
                            unreachable!("off-diagonal cells yield grid entries")
                        };
                        store.save_cell(big_p, t, &v)?;
                        v
                    }
                };
                table.set_cell(big_p, t, a);
            }
        }
        Ok(table)
    }

    /// `LHS - RHS` of the recurrence at `(p, t)` with every filled value
    /// substituted, including the self term and `Psi[p]`. Zero for a
    /// correctly built table.
    pub fn residual(&self, table: &CoeffTable<D::Elem>, p: usize, t: usize) -> Result<D::Elem> {
        let d = self.domain;
        let mut rhs = self.lower_sums(table, p, t)?;
        for k in 0..=p {
            for j in 0..=(p - k).min(t) {
                for i in 0..=t - j {
                    let a = table.require_cell(k, i)?;
                    let psi = table.require_psi(j)?;
                    let w = self.first_weight(p, t, k, i, j);
                    rhs = d.add(&rhs, &d.mul(&d.mul(psi, a), &w));
                }
            }
        }
        let lhs_coeff = d.linear_y(
            &Rational::from(Integer::from(1) << p as u32),
            &Rational::from(-(Integer::from(1) << t as u32)),
        );
        let lhs = d.mul(&lhs_coeff, table.require_cell(p, t)?);
        let diff = d.add(&lhs, &d.scale(&rhs, &Rational::from(-1)));
        Ok(d.reduce(diff))
    }
}
