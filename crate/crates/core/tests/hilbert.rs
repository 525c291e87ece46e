use std::f64::consts::PI;

use mhankel::hankel::*;

fn frozen(key: &str) -> f64 {
    let text = include_str!("fixtures/frozen.json");
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    value[key].as_f64().unwrap()
}

#[test]
fn multiplicative_value_at_thousand_is_frozen() {
    let k = HilbertKernel::new(HilbertVariant::Mult, 1000).unwrap();
    let dense = symmetric_dense_norm(&k.dense()).unwrap();
    assert!((dense - frozen("hilbert_mult_n1000")).abs() < 1e-8);
    let r = lanczos_norm(&k, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert!((r.value - dense).abs() < 1e-8);
    let r = spectral_norm(&k, DEFAULT_TOL, DEFAULT_MAX_ITER);
    assert!((r.value - dense).abs() < 1e-8);
}

#[test]
fn truncations_increase_below_pi() {
    for variant in HilbertVariant::ALL {
        let mut last = 0.0;
        for n in [10, 50, 200, 800] {
            let value = symmetric_dense_norm(&HilbertKernel::new(variant, n).unwrap().dense()).unwrap();
            assert!(value >= last - 1e-12, "{variant} N={n}");
            if variant != HilbertVariant::QueHilbert {
                assert!(value <= PI + 1e-9, "{variant} N={n}");
            }
            last = value;
        }
    }
}

#[test]
fn symbol_matrix_agrees_with_kernel() {
    let s = mult_hilbert_symbol(10_000).unwrap();
    let h = build_hankel(&s, &IndexSetSpec::RangeZero(100)).unwrap();
    let k = HilbertKernel::new(HilbertVariant::Mult, 100).unwrap();
    let a = largest_singular_value(h.entries()).unwrap();
    let b = symmetric_dense_norm(&k.dense()).unwrap();
    assert!((a - b).abs() < 1e-12);
    assert!((h.entries()[(0, 1)].re - 1.0 / (6f64.sqrt() * 6f64.ln())).abs() < 1e-15);
}

#[test]
fn bennett_gap_is_frozen() {
    let t = bennett_tails(10_000).unwrap();
    assert!((t.gap - frozen("bennett_gap_table_10000")).abs() < 1e-12);
    assert!(t.gap >= 0.4 && t.row_tail > 0.5 && t.column_tail < 0.5);
}

#[test]
fn nehari_coefficients() {
    let c = nehari_symbol_coefficients(100, 1 << 16).unwrap();
    assert!(c.iter().enumerate().all(|(k, ck)| (ck - 1.0 / (k + 1) as f64).norm() <= 1e-8));
    assert!((nehari_symbol_sup(1 << 16).unwrap() - PI).abs() < 1e-6);
}
