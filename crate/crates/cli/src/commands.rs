//! `build`, `table` and `eval`.

use std::time::Instant;

use anyhow::{bail, Context};
use gkw_core::arith::float::parse_complex;
use gkw_core::golden::{self, render_factored};
use gkw_core::recurrence::CacheStore;
use gkw_core::series::{gkw_series, mr_series};
use gkw_core::tables::{exact_rows, function_rows, series_cells};
use gkw_core::{build_table, Variant};

use crate::{Cli, Format};

pub fn build(cli: &Cli, variant: Variant, max_j: usize) -> anyhow::Result<bool> {
    let mut store = CacheStore::open(&cli.cache_dir, variant)?;
    let t = Instant::now();
    build_table(variant, max_j, Some(&mut store))
        .with_context(|| format!("building the {} table", variant.name()))?;
    match cli.format {
        Format::Csv => {
            println!("variant,order,written");
            println!("{},{max_j},{}", variant.name(), store.written());
        }
        Format::Human => println!(
            "{} table through order {max_j}: {} entries written to {} ({:.2}s)",
            variant.name(),
            store.written(),
            store.dir().display(),
            t.elapsed().as_secs_f64()
        ),
    }
    Ok(true)
}

/// Prints the `--check` summary line and returns whether all cells passed.
fn summary(check: bool, bad: usize, total: usize) -> bool {
    if check {
        let verdict = if bad == 0 { "PASS" } else { "FAIL" };
        println!(
            "# check: {}/{total} rows match the golden table: {verdict}",
            total - bad
        );
    }
    bad == 0 || !check
}

fn wanted(rows: &[usize], j: usize) -> bool {
    rows.is_empty() || rows.contains(&j)
}

pub fn table(
    cli: &Cli,
    id: u8,
    rows: &[usize],
    check: bool,
    digits: Option<usize>,
) -> anyhow::Result<bool> {
    let csv = cli.format == Format::Csv;
    match id {
        1 | 4 => {
            let (variant, golden) = if id == 1 {
                (Variant::Gkw, golden::table1()?)
            } else {
                (Variant::Mr, golden::table4()?)
            };
            let order = rows.iter().copied().max().unwrap_or(golden.len() - 1);
            let mut store = CacheStore::open(&cli.cache_dir, variant)?;
            let values = function_rows(variant, order, Some(&mut store))?;
            if csv {
                println!("j,value");
            }
            let (mut bad, mut total) = (0, 0);
            for (j, f) in values.iter().enumerate().filter(|(j, _)| wanted(rows, *j)) {
                if csv {
                    println!("{j},{f}");
                } else {
                    println!("{j:>2}  {f}");
                }
                if let Some(g) = golden.get(j) {
                    total += 1;
                    bad += usize::from(g != f);
                }
            }
            Ok(summary(check, bad, total))
        }
        3 | 6 => {
            let (variant, golden) = if id == 3 {
                (Variant::Gkw, golden::table3()?)
            } else {
                (Variant::Mr, golden::table6()?)
            };
            let order = rows.iter().copied().max().unwrap_or(golden.len() - 1);
            let values = exact_rows(variant, order)?;
            if csv {
                println!("j,value");
            }
            let (mut bad, mut total) = (0, 0);
            for (j, v) in values.iter().enumerate().filter(|(j, _)| wanted(rows, *j)) {
                let text = render_factored(v);
                if csv {
                    println!("{j},{text}");
                } else {
                    println!("{j:>2}  {text}");
                }
                if let Some(g) = golden.get(j) {
                    total += 1;
                    bad += usize::from(g != v);
                }
            }
            Ok(summary(check, bad, total))
        }
        2 | 5 => {
            let cells = series_cells(id, cli.precision, |c| wanted(rows, c.order))?;
            if cells.is_empty() {
                bail!("no rows of table {id} match {rows:?}");
            }
            if csv {
                println!("point,N,value,digits");
            }
            let mut bad = 0;
            for c in &cells {
                let d = digits.unwrap_or(c.cell.places as usize);
                let value = gkw_core::series::render_decimal(&c.value, d);
                if csv {
                    println!("{},{},{value},{d}", c.cell.point, c.cell.order);
                } else if check {
                    println!(
                        "{:>3}  {:>4}  {value}  printed {} ({:.2} units)",
                        c.cell.order, c.cell.point, c.cell.printed, c.units_off
                    );
                } else {
                    println!("{:>3}  {:>4}  {value}", c.cell.order, c.cell.point);
                }
                bad += usize::from(!c.passes());
            }
            Ok(summary(check, bad, cells.len()))
        }
        _ => bail!("no table {id}; tables are 1..=6"),
    }
}

pub fn eval(
    cli: &Cli,
    variant: Variant,
    n: Option<u32>,
    s: Option<&str>,
    max_j: usize,
    digits: usize,
) -> anyhow::Result<bool> {
    let result = match variant {
        Variant::Gkw => {
            let Some(n) = n else {
                bail!("--variant gkw needs --n")
            };
            gkw_series(n, max_j)?
        }
        Variant::Mr => {
            let Some(s) = s else {
                bail!("--variant mr needs --s")
            };
            let s = parse_complex(s, cli.precision)?;
            mr_series(&s, max_j, cli.precision)?
        }
    };
    match cli.format {
        Format::Csv => {
            println!("point,N,value,digits");
            println!("{}", result.csv_row(digits));
        }
        Format::Human => println!("{}", result.value.render(digits)),
    }
    Ok(true)
}
