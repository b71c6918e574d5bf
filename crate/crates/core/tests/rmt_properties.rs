use num_traits::ToPrimitive;
use proptest::prelude::*;
use vicious_core::rmt::{
    exact_trace_moment, mc_trace_moment, mc_unitary_side, sample_haar_unitary, truncate,
    two_sided_agreement, McConfig, RngStream,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn haar_samples_are_unitary(m in 1usize..=8, seed in any::<u64>(), index in 0u64..1000) {
        let u = sample_haar_unitary(m, &mut RngStream::new(seed, index).rng());
        prop_assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn truncations_contract(d in 1usize..=4, q in 0usize..=4, seed in any::<u64>()) {
        let u = sample_haar_unitary(d + q, &mut RngStream::new(seed, 0).rng());
        let p = truncate(&u, d).unwrap();
        prop_assert_eq!(p.dim(), d);
        prop_assert!(p.operator_norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn same_stream_same_matrix(seed in any::<u64>(), index in any::<u64>()) {
        let a = sample_haar_unitary(3, &mut RngStream::new(seed, index).rng());
        let b = sample_haar_unitary(3, &mut RngStream::new(seed, index).rng());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn estimates_are_bit_identical_across_runs_and_workers() {
    let cfg = McConfig::new(10_000, 99);
    let a = mc_trace_moment(2, 1, 1, &cfg).unwrap();
    let b = mc_trace_moment(2, 1, 1, &cfg).unwrap();
    let c = mc_trace_moment(2, 1, 1, &cfg.with_workers(3)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&c).unwrap()
    );
}

#[test]
fn two_sided_consistency_grid() {
    for d in 1..=2 {
        for q in 0..=2 {
            let cfg = McConfig::new(40_000, 1000 + (10 * d + q) as u64);
            let r = two_sided_agreement(d, q, 0.3, &cfg, 4.0).unwrap();
            assert!(r.agree, "d={d} q={q}: {r:?}");
        }
    }
}

#[test]
fn unitary_side_is_real() {
    for (d, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let e = mc_unitary_side(d, q, 0.4, &McConfig::new(20_000, 77)).unwrap();
        assert!(e.complex().im.abs() <= 4.0 * e.imag_error(), "d={d} q={q}: {e:?}");
    }
}

#[test]
fn trace_moments_match_exact_values() {
    for (d, q, n) in [(1, 2, 1), (2, 1, 1), (2, 1, 2), (3, 0, 2)] {
        let exact = exact_trace_moment(d, q, n).unwrap().to_f64().unwrap();
        let est = mc_trace_moment(d, q, n, &McConfig::new(50_000, 5)).unwrap();
        assert!(est.within(exact, 4.0), "({d},{q},{n}): exact {exact}, {est:?}");
    }
}
