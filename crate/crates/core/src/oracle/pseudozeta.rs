//! Sums of `<a>^-s` over tuples `a` of positive integers of length `k`,
//! where `<a>` is the continuant (the denominator of `[0; a_1, ..., a_k]`).
//!
//! The enumeration is a depth-first walk over prefixes. Continuants are
//! super-multiplicative, `<a b> >= <a> <b>`, so the subtree under a prefix
//! with continuant `q` and `r` entries still to choose contributes at most
//! `q^-s Z_r`, where `Z_r` bounds the full depth-`r` sum (`zeta(s)^r`
//! always works; shallower results give much tighter values). Subtrees
//! whose bound falls below the pruning tolerance, and entries above
//! `max_entry`, are dropped and their bounds added to the returned tail
//! bound, so the partial sum is an underestimate by at most that bound.
//!
//! The last entry is summed in closed form,
//! `sum_{a<=M} (a q + q')^-s = q^-s (zeta(s, 1 + q'/q) - zeta(s, M + 1 + q'/q))`.
//! Terms are formed in `f64` and accumulated with compensated summation,
//! so the result is an oracle good to roughly twelve digits.
//!
//! Pruning alone loses mass that shrinks only like the square root of the
//! tolerance, which is far too slow for ratio estimates. Next to the
//! certified sum we therefore keep an estimate of what was omitted: the
//! subtree below a prefix is exactly `q^-s F_r(q'/q)` with
//! `F_r = L_s^r 1`, and `F_r` is tabulated on `[0, 1]` by Chebyshev
//! collocation ([`SubtreeModel`]). Only the small omitted part depends on
//! the model.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use rug::Float;

use super::zeta::zeta_minus_one;
use crate::error::{Error, Result};

/// Enumeration limits.
#[derive(Clone, Debug)]
pub struct PseudoZetaOptions {
    /// Subtrees with bound below this are pruned. Zero disables pruning.
    pub prune_below: f64,
    /// Maximum number of visited prefixes.
    pub node_cap: u64,
    /// Upper bounds `Z_r` for the full depth-`r` sums, `r = 0, 1, ...`;
    /// missing entries default to `zeta(s)^r`.
    pub level_bounds: Vec<f64>,
    /// Subtree model for the omitted-mass estimate; built on demand.
    pub model: Option<SubtreeModel>,
}

impl Default for PseudoZetaOptions {
    fn default() -> Self {
        PseudoZetaOptions {
            prune_below: 0.0,
            node_cap: 2_000_000_000,
            level_bounds: Vec::new(),
            model: None,
        }
    }
}

/// Partial sum and the bound on what was left out.
#[derive(Clone, Debug)]
pub struct PseudoZetaSum {
    /// Enumerated part; never exceeds the full sum.
    pub sum: Float,
    /// Bound on the full sum minus `sum`.
    pub tail_bound: Float,
    /// `sum` plus the modelled mass of pruned subtrees and large entries.
    pub estimate: Float,
    pub nodes: u64,
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &Acc) {
        self.add(other.sum);
        self.add(other.comp);
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Hurwitz zeta `sum_{n>=0} (n + v)^-s` for `s > 1`, `v > 0`, in `f64`.
pub(crate) fn hurwitz(s: f64, v: f64) -> f64 {
    const HEAD: u32 = 16;
    let mut acc = Acc::default();
    for n in 0..HEAD {
        acc.add((v + f64::from(n)).powf(-s));
    }
    // Euler-Maclaurin from w = v + HEAD
    let w = v + f64::from(HEAD);
    let ws = w.powf(-s);
    let w2 = 1.0 / (w * w);
    let mut corr = w * ws / (s - 1.0) + ws / 2.0;
    let c1 = s / 12.0;
    let c3 = s * (s + 1.0) * (s + 2.0) / 720.0;
    let c5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0;
    let c7 = c5 * (s + 5.0) * (s + 6.0) * (30240.0 / 1209600.0);
    corr += ws / w * (c1 - w2 * (c3 - w2 * (c5 - w2 * c7)));
    acc.add(corr);
    acc.value()
}

const CHEB_NODES: usize = 24;
/// Range sums starting at `a0 <= RANGE_TABLE` are tabulated.
const RANGE_TABLE: u64 = 64;
/// Terms summed explicitly before the Taylor tail.
const EXPLICIT: u64 = 64;

/// `F_r(x) = sum_{b in A(r)} (<b> + x <b_2..b_r>)^-s = (L_s^r 1)(x)` on
/// `[0, 1]`, the mass of a subtree with `r` entries left relative to its
/// root continuant, as Chebyshev interpolants for `r = 0..levels`.
#[derive(Clone, Debug)]
pub struct SubtreeModel {
    s: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<Vec<f64>>,
    /// `ranges[r][a0 - 1]` samples `x -> apply_range(r, x, a0)`
    ranges: Vec<Vec<Vec<f64>>>,
    taylor: Vec<[f64; 3]>,
}

impl SubtreeModel {
    pub fn new(s: f64, levels: usize) -> Self {
        let n = CHEB_NODES;
        let theta = |i: usize| std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
        let nodes: Vec<f64> = (0..n).map(|i| (1.0 - theta(i).cos()) / 2.0).collect();
        let weights = (0..n)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } * theta(i).sin())
            .collect();
        let mut model = SubtreeModel {
            s,
            nodes,
            weights,
            values: vec![vec![1.0; n]],
            ranges: Vec::new(),
            taylor: vec![[0.0; 3]],
        };
        for r in 1..levels {
            let next = (0..n)
                .map(|i| model.range_direct(r - 1, model.nodes[i], 1))
                .collect();
            model.values.push(next);
            let t = model.taylor_coefficients(r);
            model.taylor.push(t);
        }
        model.ranges = (0..levels)
            .into_par_iter()
            .map(|r| {
                (1..=RANGE_TABLE)
                    .map(|a0| {
                        model
                            .nodes
                            .iter()
                            .map(|&x| model.range_direct(r, x, a0))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        model
    }

    pub fn levels(&self) -> usize {
        self.values.len()
    }

    fn interpolate(&self, samples: &[f64], x: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&xi, &wi), &fi) in self.nodes.iter().zip(&self.weights).zip(samples) {
            let d = x - xi;
            if d == 0.0 {
                return fi;
            }
            num += wi / d * fi;
            den += wi / d;
        }
        num / den
    }

    /// `F_r(x)` for `x` in `[0, 1]`.
    pub fn eval(&self, r: usize, x: f64) -> f64 {
        self.interpolate(&self.values[r], x)
    }

    /// `sum_{a >= a0} (a + x)^-s F_r(1 / (a + x))`, the mass of the
    /// children `a >= a0` of a prefix with `q'/q = x`, over `q^-s`.
    pub fn apply_range(&self, r: usize, x: f64, a0: u64) -> f64 {
        if a0 <= RANGE_TABLE {
            self.interpolate(&self.ranges[r][a0 as usize - 1], x)
        } else {
            self.taylor_tail(r, a0 as f64 + x)
        }
    }

    fn range_direct(&self, r: usize, x: f64, a0: u64) -> f64 {
        let mut acc = Acc::default();
        for a in a0..a0 + EXPLICIT {
            let v = a as f64 + x;
            acc.add(v.powf(-self.s) * self.eval(r, 1.0 / v));
        }
        acc.add(self.taylor_tail(r, (a0 + EXPLICIT) as f64 + x));
        acc.value()
    }

    /// `sum_{n >= 0} (v + n)^-s F_r(1 / (v + n))` from the cubic Taylor
    /// polynomial of `F_r` at 0.
    fn taylor_tail(&self, r: usize, v: f64) -> f64 {
        let [d1, d2, d3] = self.taylor[r];
        let f0 = self.eval(r, 0.0);
        let s = self.s;
        f0 * hurwitz(s, v)
            + d1 * hurwitz(s + 1.0, v)
            + d2 * hurwitz(s + 2.0, v)
            + d3 * hurwitz(s + 3.0, v)
    }

    /// Taylor coefficients 1..=3 of `F_r` at 0 from forward differences.
    fn taylor_coefficients(&self, r: usize) -> [f64; 3] {
        let h = 0.02;
        let mut d: Vec<f64> = (0..5).map(|j| self.eval(r, j as f64 * h)).collect();
        let mut diffs = [0.0; 5];
        for slot in diffs.iter_mut() {
            *slot = d[0];
            d = d.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let [_, d1, d2, d3, d4] = diffs;
        [
            (d1 - d2 / 2.0 + d3 / 3.0 - d4 / 4.0) / h,
            (d2 - d3 + 11.0 / 12.0 * d4) / (2.0 * h * h),
            (d3 - 1.5 * d4) / (6.0 * h * h * h),
        ]
    }
}

struct Walk<'a> {
    s: f64,
    depth: usize,
    max_entry: u64,
    bounds: Vec<f64>,
    /// `M^(1-s)/(s-1)`, bounding `sum_{a > M} a^-s`
    beyond: f64,
    prune_below: f64,
    node_cap: u64,
    nodes: &'a AtomicU64,
    model: &'a SubtreeModel,
}

#[derive(Clone, Copy, Debug, Default)]
struct Totals {
    sum: Acc,
    tail: Acc,
    omitted: Acc,
}

impl Totals {
    fn merge(&mut self, other: &Totals) {
        self.sum.merge(&other.sum);
        self.tail.merge(&other.tail);
        self.omitted.merge(&other.omitted);
    }
}

impl Walk<'_> {
    /// `sum_{a >= a0} a^-s <= a0^-s + a0^(1-s)/(s-1)`.
    fn tail_from(&self, a0: f64) -> f64 {
        a0.powf(-self.s) + a0.powf(1.0 - self.s) / (self.s - 1.0)
    }

    /// `sum_{a=1}^{M} (a q + q_prev)^-s`.
    fn last_level(&self, q: f64, q_prev: f64) -> f64 {
        let x = q_prev / q;
        let m = self.max_entry as f64;
        q.powf(-self.s) * (hurwitz(self.s, 1.0 + x) - hurwitz(self.s, m + 1.0 + x))
    }

    /// Walks all extensions of a prefix of length `j < depth` with
    /// continuants `q = q_j`, `q_prev = q_{j-1}`.
    fn visit(&self, j: usize, q: f64, q_prev: f64, acc: &mut Totals) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.node_cap {
            return Err(Error::BudgetExceeded(self.node_cap));
        }
        let rest = self.depth - j - 1;
        let qs = q.powf(-self.s);
        let x = q_prev / q;
        let unit = qs * self.bounds[rest];
        acc.tail.add(unit * self.beyond);
        if rest == 0 {
            acc.sum.add(self.last_level(q, q_prev));
            let m = self.max_entry as f64;
            acc.omitted.add(qs * hurwitz(self.s, m + 1.0 + x));
            return Ok(());
        }
        for a in 1..=self.max_entry {
            let af = a as f64;
            // every child from here on is bounded by (a q)^-s Z_rest
            if self.prune_below > 0.0 && af.powf(-self.s) * unit < self.prune_below {
                acc.tail.add(unit * self.tail_from(af));
                acc.omitted.add(qs * self.model.apply_range(rest, x, a));
                return Ok(());
            }
            self.visit(j + 1, af * q + q_prev, q, acc)?;
        }
        acc.omitted
            .add(qs * self.model.apply_range(rest, x, self.max_entry + 1));
        Ok(())
    }
}

/// `sum_{a in A(k), a_i <= max_entry} <a>^-s` and a bound on the omitted part.
pub fn pseudozeta_sum(
    s: &Float,
    k: usize,
    max_entry: u64,
    opts: &PseudoZetaOptions,
) -> Result<PseudoZetaSum> {
    if *s <= 1 {
        return Err(Error::Domain("pseudo-zeta sums need s > 1".into()));
    }
    if k == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    if max_entry < 2 {
        return Err(Error::Domain("max entry must be at least 2".into()));
    }
    let prec = s.prec();
    let sf = s.to_f64();
    let zeta = 1.0 + zeta_minus_one_real(s);
    let bounds = (0..k)
        .map(|r| {
            opts.level_bounds
                .get(r)
                .copied()
                .unwrap_or_else(|| zeta.powi(r as i32))
        })
        .collect();
    let model = match &opts.model {
        Some(m) if m.levels() >= k => None,
        _ => Some(SubtreeModel::new(sf, k)),
    };
    let model = model.as_ref().or(opts.model.as_ref()).expect("model");
    let nodes = AtomicU64::new(0);
    let walk = Walk {
        s: sf,
        depth: k,
        max_entry,
        bounds,
        beyond: (max_entry as f64).powf(1.0 - sf) / (sf - 1.0),
        prune_below: opts.prune_below,
        node_cap: opts.node_cap,
        nodes: &nodes,
        model,
    };
    let mut totals = Totals::default();
    if k == 1 {
        walk.visit(0, 1.0, 0.0, &mut totals)?;
    } else {
        // partition by the first entry; merge in order for determinism
        totals.tail.add(walk.beyond * walk.bounds[k - 1]);
        totals
            .omitted
            .add(model.apply_range(k - 1, 0.0, max_entry + 1));
        let parts: Vec<Result<Totals>> = (1..=max_entry)
            .into_par_iter()
            .map(|a| {
                let mut acc = Totals::default();
                let af = a as f64;
                let bound = af.powf(-sf) * walk.bounds[k - 1];
                if walk.prune_below > 0.0 && bound < walk.prune_below {
                    acc.tail.add(bound);
                    acc.omitted.add(af.powf(-sf) * model.eval(k - 1, 1.0 / af));
                } else {
                    walk.visit(1, af, 1.0, &mut acc)?;
                }
                Ok(acc)
            })
            .collect();
        for part in parts {
            totals.merge(&part?);
        }
    }
    let sum = totals.sum.value();
    Ok(PseudoZetaSum {
        sum: Float::with_val(prec, sum),
        tail_bound: Float::with_val(prec, totals.tail.value()),
        estimate: Float::with_val(prec, sum + totals.omitted.value()),
        nodes: nodes.load(Ordering::Relaxed),
    })
}

fn zeta_minus_one_real(s: &Float) -> f64 {
    match s.to_u32_saturating() {
        Some(k) if *s == k && k >= 2 => zeta_minus_one(k, 64).to_f64(),
        _ => Float::with_val(64, s).zeta().to_f64() - 1.0,
    }
}

/// Depth-`k` estimates of the leading eigenvalue for `k = 1..=k_max`,
/// formed from the corrected sums [`PseudoZetaSum::estimate`].
#[derive(Clone, Debug)]
pub struct PseudoZetaEstimate {
    pub sums: Vec<PseudoZetaSum>,
    /// `sum(k)^(1/k)`
    pub root: Vec<Float>,
    /// `sum(k) / sum(k-1)`, with `sum(0) = 1`
    pub ratio: Vec<Float>,
}

/// Runs depths `1..=k_max`. Each depth prunes at `rel_tol` times an
/// extrapolated value of its sum, and bounds subtrees by the sums already
/// computed at smaller depths.
pub fn pseudozeta_estimate(
    s: &Float,
    k_max: usize,
    max_entry: u64,
    rel_tol: f64,
    node_cap: u64,
) -> Result<PseudoZetaEstimate> {
    let prec = s.prec();
    let mut sums: Vec<PseudoZetaSum> = Vec::with_capacity(k_max);
    let mut root = Vec::with_capacity(k_max);
    let mut ratio = Vec::with_capacity(k_max);
    let mut prev = Float::with_val(prec, 1);
    let mut level_bounds = vec![1.0];
    let mut guess_ratio = 1.0 + zeta_minus_one_real(s);
    let model = SubtreeModel::new(s.to_f64(), k_max);
    for k in 1..=k_max {
        let opts = PseudoZetaOptions {
            prune_below: rel_tol * prev.to_f64() * guess_ratio,
            node_cap,
            level_bounds: level_bounds.clone(),
            model: Some(model.clone()),
        };
        let r = pseudozeta_sum(s, k, max_entry, &opts)?;
        let rt = Float::with_val(prec, &r.estimate / &prev);
        guess_ratio = rt.to_f64();
        level_bounds.push((r.sum.to_f64() + r.tail_bound.to_f64()) * (1.0 + 1e-12));
        root.push(Float::with_val(prec, r.estimate.clone().ln() / k as u32).exp());
        ratio.push(rt);
        prev = r.estimate.clone();
        sums.push(r);
    }
    Ok(PseudoZetaEstimate { sums, root, ratio })
}
