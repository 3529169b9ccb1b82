//! Closed forms for the lowest Taylor coefficients at `(n, 2^n)`.
//!
//! With `P_n` normalized by `P_n(2) = 1`, `A_{0,l}(n, 2^n)` is the `l`-th
//! Taylor coefficient of `P_n` at 2 and `A_{1,0}(n, 2^n) = Q_n(2)`.

use std::fmt;

use rug::{Integer, Rational};

use super::build_table_in;
use super::domain::RationalPoint;
use super::table::Variant;
use crate::arith::int_binom;
use crate::error::{Error, Result};

/// One closed form against the engine value.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormCheck {
    pub name: String,
    pub closed: Rational,
    pub engine: Rational,
}

impl ClosedFormCheck {
    pub fn holds(&self) -> bool {
        self.closed == self.engine
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormReport {
    pub n: u32,
    pub checks: Vec<ClosedFormCheck>,
}

impl ClosedFormReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(ClosedFormCheck::holds)
    }
}

impl fmt::Display for ClosedFormReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.holds() { "ok" } else { "MISMATCH" };
            writeln!(
                f,
                "n={} {}: closed={} engine={} {mark}",
                self.n, c.name, c.closed, c.engine
            )?;
        }
        Ok(())
    }
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from(Integer::from(1) << k as u32)
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << (-k) as u32))
    }
}

fn factorial(k: u32) -> Rational {
    Rational::from(Integer::from(Integer::factorial(k)))
}

/// `c^(0..=l_max)` from the recurrence in `l`.
pub fn c_coefficients(n: u32, l_max: u32) -> Vec<Rational> {
    let two_n = pow2(i64::from(n));
    let mut c = vec![Rational::from(1)];
    for l in 1..=i64::from(l_max) {
        let a_l = if l % 2 == 0 {
            1 - pow2(l)
        } else {
            pow2(l) + 1u32 - pow2(l + 1 - i64::from(n))
        };
        let mut s = Rational::new();
        for (i, ci) in c.iter().enumerate() {
            let i = i as i64;
            let b = int_binom(l, i).expect("nonnegative top");
            let term = Rational::from(ci * &pow2(i)) * b;
            if i % 2 == 1 {
                s -= term;
            } else {
                s += term;
            }
        }
        let pre = Rational::from(&two_n - 1u32) / (Rational::from(&two_n * &a_l));
        c.push(pre * s);
    }
    c
}

/// Compares the closed forms with the recurrence at `(n, 2^n)` for Taylor
/// orders up to `l_max`.
pub fn closed_form_checks(n: u32, l_max: u32) -> Result<ClosedFormReport> {
    if n == 0 {
        return Err(Error::Domain("closed forms need n >= 1".into()));
    }
    let order = l_max.max(1) as usize;
    let table = build_table_in(&RationalPoint::gkw(n), Variant::Gkw, order)?;
    let a = |p: usize, t: usize| table.require_cell(p, t).cloned();

    let two_n = pow2(i64::from(n));
    let nq = Rational::from(n);
    let mut checks = Vec::new();

    checks.push(ClosedFormCheck {
        name: "lambda_n(2)".into(),
        closed: (Rational::from(&two_n * 2u32) - 2u32),
        engine: table.require_psi(0)?.clone(),
    });

    let q_closed = Rational::from(&two_n - 2u32) / (Rational::from(&two_n * 3u32) - 2u32)
        * Rational::from(&nq + 1u32);
    checks.push(ClosedFormCheck {
        name: "Q_n(2)".into(),
        closed: q_closed,
        engine: a(1, 0)?,
    });

    let n1 = Rational::from(&nq - 1u32);
    let n2 = Rational::from(&nq - 2u32);
    let n3 = Rational::from(&nq - 3u32);
    let d1 = Rational::from(&two_n * 3u32) - 4u32;
    let d2 = Rational::from(&two_n * 9u32) - 16u32;
    let derivs = [
        Rational::from(&two_n - 1u32) / d1.clone() * n1.clone(),
        Rational::from(&two_n - 1u32) / (3 * d1.clone()) * n1.clone() * n2.clone(),
        Rational::from(&two_n - 2u32) * Rational::from(&two_n - 1u32) / (d1 * d2) * n1 * n2 * n3,
    ];
    for (k, closed) in derivs.into_iter().enumerate() {
        let l = k as u32 + 1;
        if l > l_max {
            break;
        }
        checks.push(ClosedFormCheck {
            name: format!("P_n^({l})(2)"),
            closed,
            engine: a(0, l as usize)? * factorial(l),
        });
    }

    let c = c_coefficients(n, l_max.min(n - 1));
    for (l, cl) in c.into_iter().enumerate() {
        let lu = l as u32;
        let scale = factorial(lu) * factorial(n - lu - 1) / factorial(n - 1);
        checks.push(ClosedFormCheck {
            name: format!("c^({l})"),
            closed: cl,
            engine: a(0, l)? * scale,
        });
    }

    Ok(ClosedFormReport { n, checks })
}
