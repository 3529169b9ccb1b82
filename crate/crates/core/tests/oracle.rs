//! Oracles against each other: matrix trace against both trace formulas,
//! eigenvalues across truncation sizes, and the report format.

use gkw_core::oracle::{
    gkw_eigenvalues, pseudozeta_sum, trace_binomial, trace_xi, OperatorMatrix, OracleReport,
    PseudoZetaOptions,
};
use proptest::prelude::*;
use rug::Float;

#[test]
fn matrix_trace_matches_trace_formulas() {
    let m = OperatorMatrix::new(48, 256);
    let tm = m.trace();
    let tx = trace_xi(256, 50_000);
    let tb = trace_binomial(256, 40);
    assert!(
        Float::with_val(256, &tm - &tx).abs() < 1e-12,
        "{tm} vs {tx}"
    );
    assert!(Float::with_val(256, &tb - &tx).abs() < 1e-12);
}

#[test]
fn eigenvalues_are_stable_in_the_truncation_size() {
    let small = gkw_eigenvalues(32, 256, 4).unwrap();
    let large = gkw_eigenvalues(64, 256, 4).unwrap();
    // truncation error only
    assert!(Float::with_val(256, &small[0] - 1u32).abs() < 1e-9);
    assert!(Float::with_val(256, &large[0] - 1u32).abs() < 1e-18);
    for (a, b) in small.iter().zip(&large) {
        let rel = Float::with_val(256, a - b).abs() / b.clone().abs();
        assert!(rel < 1e-6, "{a} vs {b}");
    }
    // alternating signs, decreasing magnitudes
    for w in large.windows(2) {
        assert!(w[0].is_sign_positive() != w[1].is_sign_positive());
        assert!(w[0].clone().abs() > w[1].clone().abs());
    }
}

#[test]
fn report_rows_have_five_columns() {
    let r = OracleReport::new(
        "lambda_2",
        Float::with_val(128, -0.25),
        Float::with_val(128, -0.25 + 1e-9),
        "N=40,dim=64",
    );
    let row = r.csv_row(12);
    assert_eq!(row.split(',').count(), 5, "{row}");
    assert_eq!(OracleReport::CSV_HEADER.split(',').count(), 5);
    assert!(row.starts_with("lambda_2,-0.250000000000,"));
    assert!(r.within(1e-8) && !r.within(1e-10));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Shallow sums bracket: the certified sum never exceeds sum + tail,
    /// and the bound shrinks as the entry cap grows.
    #[test]
    fn pseudozeta_bounds_nest(s10 in 25u32..60, k in 1usize..4) {
        let s = Float::with_val(64, s10) / 10u32;
        let opts = PseudoZetaOptions::default();
        let small = pseudozeta_sum(&s, k, 40, &opts).unwrap();
        let large = pseudozeta_sum(&s, k, 160, &opts).unwrap();
        let hi_small = Float::with_val(64, &small.sum + &small.tail_bound);
        let hi_large = Float::with_val(64, &large.sum + &large.tail_bound);
        prop_assert!(large.sum >= small.sum);
        prop_assert!(large.sum <= hi_small.clone() * (1.0 + 1e-12));
        prop_assert!(hi_large <= hi_small * (1.0 + 1e-12));
    }
}
