//! Recurrence engine: worked cells, structural invariants, the raw
//! coefficient path, cache determinism and the second-sum bound.

use gkw_core::arith::{Linear, PolyY};
use gkw_core::golden;
use gkw_core::recurrence::{
    build_table_in, raw_recurrence, solve_cell, CacheStore, CellSolution, Engine, EngineOptions,
    NoStore, RationalPoint, Symbolic,
};
use gkw_core::{build_table, BiPoly, CoeffTable, RatFunc2, Variant};
use rug::Rational;
use tempfile::TempDir;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn same_tables(a: &CoeffTable, b: &CoeffTable) -> bool {
    a.order() == b.order()
        && (0..=a.order())
            .all(|p| a.psi(p) == b.psi(p) && (0..=a.order()).all(|t| a.cell(p, t) == b.cell(p, t)))
}

fn two_y_minus_two() -> RatFunc2 {
    BiPoly::from_terms([((0, 1), q(2, 1)), ((0, 0), q(-2, 1))]).into()
}

#[test]
fn seeds_and_gauge() {
    for variant in [Variant::Gkw, Variant::Mr] {
        let t = build_table(variant, 4, None).unwrap();
        assert_eq!(t.cell(0, 0), Some(&RatFunc2::one()));
        assert_eq!(t.psi(0), Some(&two_y_minus_two()));
        for p in 1..=4 {
            assert!(t.cell(p, p).unwrap().is_zero());
        }
        assert!(t.is_complete());
    }
}

#[test]
fn first_rows_match_the_printed_functions() {
    assert_eq!(
        build_table(Variant::Gkw, 1, None).unwrap().psi(1),
        Some(&golden::table1().unwrap()[1])
    );
    assert_eq!(
        build_table(Variant::Mr, 1, None).unwrap().psi(1),
        Some(&golden::table4().unwrap()[1])
    );
    let mr = build_table(Variant::Mr, 3, None).unwrap();
    let t4 = golden::table4().unwrap();
    for (j, want) in t4.iter().enumerate() {
        assert_eq!(mr.psi(j), Some(want), "Lambda_{j}");
    }
}

#[test]
fn worked_cells_at_two_four() {
    let t = build_table(Variant::Gkw, 2, None).unwrap();
    let at = |f: &RatFunc2| f.eval_exact(&q(2, 1), &q(4, 1)).unwrap();
    let CellSolution::Grid(a10) = solve_cell(&t, 1, 0).unwrap() else {
        panic!("grid cell")
    };
    assert_eq!(at(&a10), q(3, 5));
    let CellSolution::Grid(a01) = solve_cell(&t, 0, 1).unwrap() else {
        panic!("grid cell")
    };
    assert_eq!(at(&a01), q(3, 8));
    let CellSolution::Series(psi1) = solve_cell(&t, 1, 1).unwrap() else {
        panic!("series cell")
    };
    assert_eq!(&psi1, t.psi(1).unwrap());
    assert_eq!(at(&psi1), q(13, 5));
    assert_eq!(at(t.psi(0).unwrap()), q(6, 1));
}

#[test]
fn first_column_follows_its_closed_form() {
    // A_{1,0}(n, 2^n) = (2^n - 2) / (3 2^n - 2) (n + 1)
    let t = build_table(Variant::Gkw, 1, None).unwrap();
    let a10 = t.cell(1, 0).unwrap();
    for n in 1..=12i64 {
        let y = 1i64 << n;
        let v = a10.eval_exact(&q(n, 1), &q(y, 1)).unwrap();
        assert_eq!(v, q((y - 2) * (n + 1), 3 * y - 2), "n = {n}");
    }
}

#[test]
fn raw_path_examples() {
    assert_eq!(raw_recurrence(2, 1).unwrap().psi[1], q(13, 5));
    assert_eq!(raw_recurrence(2, 0).unwrap().psi[0], q(6, 1));
    for n in 1..=6u32 {
        let raw = raw_recurrence(n, 0).unwrap();
        assert_eq!(raw.grid[0][0], 1);
        assert_eq!(raw.psi[0], Rational::from((1i64 << (n + 1)) - 2));
    }
}

#[test]
fn raw_path_equals_symbolic_evaluation() {
    let order = 6;
    let sym = build_table(Variant::Gkw, order, None).unwrap();
    for n in 1..=4u32 {
        let raw = raw_recurrence(n, order).unwrap();
        let (x, y) = (q(n.into(), 1), Rational::from(1u64 << n));
        for p in 0..=order {
            for t in 0..=order {
                let v = sym.cell(p, t).unwrap().eval_exact(&x, &y).unwrap();
                assert_eq!(v, raw.grid[p][t], "n={n} ({p},{t})");
            }
            assert_eq!(sym.psi(p).unwrap().eval_exact(&x, &y).unwrap(), raw.psi[p]);
        }
    }
}

#[test]
fn specialized_tables_equal_symbolic_evaluation() {
    let order = 6;
    for variant in [Variant::Gkw, Variant::Mr] {
        let sym = build_table(variant, order, None).unwrap();
        for (x, y) in [(q(3, 2), q(5, 1)), (q(-1, 3), q(7, 2)), (q(3, 1), q(8, 1))] {
            let pt = RationalPoint {
                x: x.clone(),
                y: y.clone(),
            };
            let spec = build_table_in(&pt, variant, order).unwrap();
            for p in 0..=order {
                assert_eq!(
                    sym.psi(p).unwrap().eval_exact(&x, &y).unwrap(),
                    *spec.psi(p).unwrap()
                );
                for t in 0..=order {
                    assert_eq!(
                        sym.cell(p, t).unwrap().eval_exact(&x, &y).unwrap(),
                        *spec.cell(p, t).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn relaxed_second_sum_bound_changes_nothing() {
    let order = 7;
    for variant in [Variant::Gkw, Variant::Mr] {
        let written = Engine::new(&Symbolic, variant, order, EngineOptions::default())
            .build(order, &mut NoStore)
            .unwrap();
        let relaxed = Engine::new(
            &Symbolic,
            variant,
            order,
            EngineOptions {
                relax_second_sum_bound: true,
            },
        )
        .build(order, &mut NoStore)
        .unwrap();
        assert!(same_tables(&written, &relaxed), "{variant:?}");
    }
}

#[test]
fn residual_vanishes_on_specialized_tables() {
    let order = 12;
    for variant in [Variant::Gkw, Variant::Mr] {
        let pt = match variant {
            Variant::Gkw => RationalPoint::gkw(3),
            Variant::Mr => RationalPoint::mr_integer(4),
        };
        let engine = Engine::new(&pt, variant, order, EngineOptions::default());
        let table = engine.build(order, &mut NoStore).unwrap();
        for p in 0..=order {
            for t in 0..=order {
                assert_eq!(
                    engine.residual(&table, p, t).unwrap(),
                    0,
                    "{variant:?} ({p},{t})"
                );
            }
        }
    }
}

#[test]
fn cache_is_deterministic_warm_or_cold() {
    let dir = TempDir::new().unwrap();
    for variant in [Variant::Gkw, Variant::Mr] {
        let cold = build_table(variant, 6, None).unwrap();
        let mut store = CacheStore::open(dir.path(), variant).unwrap();
        let first = build_table(variant, 6, Some(&mut store)).unwrap();
        assert!(store.written() > 0);
        let mut again = CacheStore::open(dir.path(), variant).unwrap();
        let warm = build_table(variant, 6, Some(&mut again)).unwrap();
        assert_eq!(again.written(), 0, "rebuild is a no-op");
        assert!(same_tables(&cold, &first) && same_tables(&cold, &warm));
        // extending the order reuses the cached columns
        let mut ext = CacheStore::open(dir.path(), variant).unwrap();
        let bigger = build_table(variant, 7, Some(&mut ext)).unwrap();
        assert!(same_tables(&cold, &bigger.truncated(6)));
        assert_eq!(ext.written(), 2 * 7 + 1);
    }
}

#[test]
fn cache_rejects_the_other_variant() {
    let dir = TempDir::new().unwrap();
    let mut gkw = CacheStore::open(dir.path(), Variant::Gkw).unwrap();
    build_table(Variant::Gkw, 2, Some(&mut gkw)).unwrap();
    // plant a gkw entry where the mr table expects its own
    let mut mr = CacheStore::open(dir.path(), Variant::Mr).unwrap();
    std::fs::create_dir_all(mr.psi_path(1).parent().unwrap()).unwrap();
    std::fs::copy(gkw.psi_path(1), mr.psi_path(1)).unwrap();
    assert!(build_table(Variant::Mr, 2, Some(&mut mr)).is_err());
}

/// `(2^p + 2^t) Y - 2^(t+1)` for `p - t` odd, or `Y`.
fn expected_factors(order: usize) -> Vec<Linear> {
    let mut out = vec![Linear::from_rational(&q(1, 1), &q(0, 1)).1];
    for p in 0..=order {
        for t in 0..=order {
            if (p + t) % 2 == 1 {
                let a = Rational::from((1u64 << p) + (1u64 << t));
                let b = -Rational::from(1u64 << (t + 1));
                out.push(Linear::from_rational(&a, &b).1);
            }
        }
    }
    out
}

fn factors_of(den: &PolyY) -> Vec<Linear> {
    den.factors()
        .expect("denominator carries its factored view")
        .iter()
        .map(|(l, _)| l.clone())
        .collect()
}

#[test]
fn denominators_are_products_of_the_known_linear_factors() {
    let order = 7;
    let allowed = expected_factors(order);
    for variant in [Variant::Gkw, Variant::Mr] {
        let t = build_table(variant, order, None).unwrap();
        for p in 0..=order {
            let mut dens = vec![t.psi(p).unwrap().den().clone()];
            dens.extend((0..=order).map(|s| t.cell(p, s).unwrap().den().clone()));
            for den in dens {
                for l in factors_of(&den) {
                    assert!(
                        allowed.contains(&l),
                        "{variant:?} column {p}: unexpected factor {l}"
                    );
                }
            }
        }
    }
}

#[test]
fn both_variants_start_from_two_y_minus_two() {
    let g = build_table(Variant::Gkw, 0, None).unwrap();
    let m = build_table(Variant::Mr, 0, None).unwrap();
    assert_eq!(g.psi(0), m.psi(0));
}
