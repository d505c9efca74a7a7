//! The pipeline runs in single precision with looser tolerances.

use dnaswap::encodings::Base;
use dnaswap::metrics::pair_concurrence;
use dnaswap::protocol::{canonical_table, run_pair};
use dnaswap::ConfigF32;

#[test]
fn at_classes_in_f32() {
    let e = run_pair::<f32>(Base::A.into(), Base::T.into(), &ConfigF32::default()).unwrap();
    let rows = canonical_table(&e);
    assert_eq!(rows.len(), 4);
    let hi = (2.0 + 2f32.sqrt()) / 8.0;
    let lo = (2.0 - 2f32.sqrt()) / 8.0;
    for r in &rows {
        let expected = if r.bell_12 == r.bell_34 { hi } else { lo };
        assert!((r.probability - expected).abs() < 1e-5);
        assert!(r.a.norm() < 1e-5 && (r.b.re - 1.0).abs() < 1e-5);
    }
}

#[test]
fn gc_table_in_f32() {
    let e = run_pair::<f32>(Base::G.into(), Base::C.into(), &ConfigF32::default()).unwrap();
    let rows = canonical_table(&e);
    assert_eq!(rows.len(), 16);
    let total: f32 = rows.iter().map(|r| r.probability).sum();
    assert!((total - 1.0).abs() < 1e-5);
    for b in &e.branches {
        assert!((pair_concurrence(&b.final_state, 1, 2).unwrap() - 1.0).abs() < 1e-3);
    }
}
