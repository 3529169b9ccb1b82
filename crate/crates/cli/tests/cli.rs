//! End-to-end runs of the `gkw` binary against a temporary cache.

use std::path::Path;
use std::process::{Command, Output};

use gkw_core::series::mr_series;
use gkw_core::BigComplex;
use tempfile::TempDir;

/// Runs `gkw` with whitespace-separated `args`.
fn run(cache: &Path, args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkw"))
        .env("GKW_CACHE", cache)
        .args(args.split_whitespace())
        .output()
        .expect("run gkw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn build_is_idempotent() {
    let dir = TempDir::new().unwrap();
    let first = run(dir.path(), "--format csv build --variant gkw --max-j 10");
    assert_eq!(code(&first), 0);
    let second = run(dir.path(), "--format csv build --variant gkw --max-j 10");
    assert_eq!(code(&second), 0);
    assert!(!stdout(&first).ends_with(",10,0\n"), "{}", stdout(&first));
    assert_eq!(stdout(&second), "variant,order,written\nGKW,10,0\n");
}

#[test]
fn cache_dir_is_created() {
    let dir = TempDir::new().unwrap();
    let nested = dir.path().join("a").join("b");
    let o = run(&nested, "build --variant mr --max-j 2");
    assert_eq!(code(&o), 0);
    assert!(nested.join("mr").join("psi_2.rf").exists());
}

#[test]
fn function_tables_after_build() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), "build --variant mr --max-j 3")), 0);
    let t4 = run(dir.path(), "table --id 4 --check");
    assert_eq!(code(&t4), 0, "{}", stdout(&t4));
    assert!(stdout(&t4).starts_with(" 0  2Y-2\n 1  (XY^2+Y^2-3Y+2)/(3Y-2)\n"));

    assert_eq!(code(&run(dir.path(), "build --variant gkw --max-j 1")), 0);
    let t1 = run(dir.path(), "table --id 1 --rows 0,1 --check");
    assert_eq!(code(&t1), 0);
    let out = stdout(&t1);
    assert_eq!(out.lines().count(), 3, "{out}");
    assert!(out.ends_with("# check: 2/2 rows match the golden table: PASS\n"));
}

#[test]
fn exact_value_tables() {
    let dir = TempDir::new().unwrap();
    let t3 = run(dir.path(), "table --id 3");
    assert_eq!(code(&t3), 0);
    let out = stdout(&t3);
    assert_eq!(out.lines().count(), 10);
    assert!(out.contains(" 1  13/5\n") && out.contains(" 4  -74439/(2^2*5^6*17^2)\n"));
    // the printed row 2 reads -11/5^2; the recurrence gives -11/5^3
    let check = run(dir.path(), "table --id 3 --check");
    assert_eq!(code(&check), 1);
    assert!(stdout(&check).contains(" 2  -11/(5^3)\n"));
    assert!(stdout(&check).contains("9/10 rows"));

    let t6 = run(dir.path(), "--format csv table --id 6 --check");
    assert_eq!(code(&t6), 0, "{}", stdout(&t6));
    assert!(stdout(&t6).starts_with("j,value\n0,14\n"));
}

#[test]
fn series_table_rows() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), "table --id 2 --rows 5,10 --check");
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("  5     2  0.30359526888627  printed 0.30359526888627"));
    assert!(out.ends_with("8/8 rows match the golden table: PASS\n"));
    let csv = run(dir.path(), "--format csv table --id 5 --rows 20");
    assert_eq!(code(&csv), 0);
    assert!(stdout(&csv).contains("4,20,0.19945881834667,14\n"));
}

#[test]
fn eval_examples() {
    let dir = TempDir::new().unwrap();
    let one = run(dir.path(), "eval --variant gkw --n 1 --max-j 5");
    assert_eq!(stdout(&one), "1.00000000000000\n");
    let s2 = run(
        dir.path(),
        "eval --variant gkw --n 2 --max-j 20 --digits 20",
    );
    assert!(stdout(&s2).starts_with("0.30366300267057"));

    let l = run(
        dir.path(),
        "eval --variant mr --s 5/2 --max-j 10 --digits 14",
    );
    let s = BigComplex::with_val(256, (5, 0)) / 2u32;
    let want = mr_series(&s, 10, 256).unwrap().value.render(14);
    assert_eq!(stdout(&l).trim(), want);
    assert!(want.starts_with("0.599084638326"));

    let z = run(
        dir.path(),
        "--format csv eval --variant mr --s 3+1i --max-j 4",
    );
    let out = stdout(&z);
    let row = out.lines().nth(1).unwrap();
    assert!(
        row.starts_with("3.000000+1.000000i,4,") && row.ends_with("i,14"),
        "{row}"
    );
}

#[test]
fn errors_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), "eval --variant mr --s 1/2 --max-j 3");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain error"));
    assert_eq!(code(&run(dir.path(), "eval --variant gkw --max-j 3")), 2);
    let o = run(
        dir.path(),
        "--precision 32 eval --variant gkw --n 2 --max-j 3",
    );
    assert_ne!(code(&o), 0);
    assert_ne!(code(&run(dir.path(), "table --id 7")), 0);
}

#[test]
fn oracles_exit_by_tolerance() {
    let dir = TempDir::new().unwrap();
    let raw = run(dir.path(), "--format csv oracle raw --n 3 --max-j 8");
    assert_eq!(code(&raw), 0);
    let out = stdout(&raw);
    assert!(out.starts_with("quantity,conjecture,oracle,diff,params\n"));
    assert_eq!(out.lines().count(), 1 + 81 + 9);

    assert_eq!(code(&run(dir.path(), "oracle trace --tol 1e-8")), 0);
    // the printed trace carries ten digits only
    assert_eq!(code(&run(dir.path(), "oracle trace --tol 1e-13")), 1);

    assert_eq!(code(&run(dir.path(), "oracle closedform")), 0);

    let m = run(
        dir.path(),
        "oracle matrix --dim 32 --count 3 --max-j 20 --tol 1e-6",
    );
    assert_eq!(code(&m), 0, "{}", stdout(&m));
    assert_eq!(stdout(&m).lines().count(), 4);

    // depth 4 is far from the limit (about 0.181 against 0.1995)
    let shallow = "oracle pseudozeta --k-max 4 --max-entry 100 --rel-tol 1e-5 --max-j 10";
    assert_eq!(code(&run(dir.path(), &format!("{shallow} --tol 5e-2"))), 0);
    assert_eq!(code(&run(dir.path(), &format!("{shallow} --tol 1e-2"))), 1);
}

#[test]
fn plot_data_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("panel1.dat");
    let o = run(
        dir.path(),
        &format!(
            "plotdata --func lambda_j --j 2 --range 1:2.4 --samples 200 --out {}",
            out.display()
        ),
    );
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.is_ascii() && text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 200);
    // Lambda_2(0, 1) from the printed row: (-12 + 52 - 56 + 16) / 12 = 0
    assert_eq!(lines[0], "1.0000000000 0.00000000000000");
    assert!(lines[199].starts_with("2.4000000000 "));

    let o = run(dir.path(), "plotdata --func lambda_j --j 6 --range 1:10.4");
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 200);
    assert!(text.lines().last().unwrap().starts_with("10.4000000000 "));

    // the partial sum at s = 2 is 1
    let o = run(
        dir.path(),
        "plotdata --func partial_sum --j 3 --range 2:2 --samples 1",
    );
    assert_eq!(stdout(&o), "2.0000000000 1.00000000000000\n");
}
