//! `plotdata`: `samples` equally spaced points of one function along the
//! curve `(X, Y) = (x, 2^x)`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use clap::ValueEnum;
use gkw_core::arith::float::{parse_rational, pow2};
use gkw_core::recurrence::CacheStore;
use gkw_core::series::{render_decimal, render_float};
use gkw_core::{build_table, Error, RatFunc2, Variant};
use gkw_core::{BigComplex as Complex, BigRational as Rational};

use crate::Cli;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PlotFunc {
    /// `Lambda_j(s-1, 2^(s-1))`.
    #[value(name = "lambda_j")]
    LambdaJ,
    /// `Psi_j(s, 2^s)`.
    #[value(name = "psi_j")]
    PsiJ,
    /// `sum_{i<=j} (-1)^i Lambda_i(s-1, 2^(s-1))`.
    #[value(name = "partial_sum")]
    PartialSum,
}

fn parse_range(range: &str) -> anyhow::Result<(Rational, Rational)> {
    let (a, b) = range
        .split_once(':')
        .with_context(|| format!("range must be `a:b`, got {range:?}"))?;
    let a = parse_rational(a).with_context(|| format!("bad range start {a:?}"))?;
    let b = parse_rational(b).with_context(|| format!("bad range end {b:?}"))?;
    if b < a {
        bail!("empty range {range}");
    }
    Ok((a, b))
}

pub fn run(
    cli: &Cli,
    func: PlotFunc,
    j: usize,
    range: &str,
    samples: usize,
    out: Option<&Path>,
    digits: usize,
) -> anyhow::Result<bool> {
    let (a, b) = parse_range(range)?;
    if samples == 0 {
        bail!("--samples must be positive");
    }
    let variant = match func {
        PlotFunc::PsiJ => Variant::Gkw,
        PlotFunc::LambdaJ | PlotFunc::PartialSum => Variant::Mr,
    };
    let mut store = CacheStore::open(&cli.cache_dir, variant)?;
    let table = build_table(variant, j, Some(&mut store))?;
    let terms: Vec<(Rational, &RatFunc2)> = match func {
        PlotFunc::PartialSum => (0..=j)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                Ok((Rational::from(sign), table.require_psi(i)?))
            })
            .collect::<gkw_core::Result<_>>()?,
        _ => vec![(Rational::from(1), table.require_psi(j)?)],
    };
    // Lambda is evaluated at s - 1, Psi at s itself.
    let shift = match func {
        PlotFunc::PsiJ => 0,
        _ => 1,
    };
    let prec = cli.precision;
    let mut text = String::new();
    let mut skipped = 0usize;
    for i in 0..samples {
        let s = if samples == 1 {
            a.clone()
        } else {
            Rational::from(&b - &a) * Rational::from((i, samples - 1)) + &a
        };
        let x = Complex::with_val(prec, Rational::from(&s - shift));
        let y = pow2(&x);
        let mut acc = Complex::with_val(prec, 0);
        let mut near_pole = false;
        for (c, f) in &terms {
            match f.eval_float(&x, &y, prec) {
                Ok(v) => acc += v * c,
                Err(Error::NearPole { .. } | Error::Pole) => {
                    near_pole = true;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        if near_pole {
            skipped += 1;
            continue;
        }
        writeln!(
            text,
            "{} {}",
            render_decimal(&s, 10),
            render_float(acc.real(), digits)
        )?;
    }
    if skipped > 0 {
        writeln!(text, "# skipped {skipped} near-pole samples")?;
    }
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(true)
}
