use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use vicious_core::enumeration::{z_ground, GroundStateQuery};
use vicious_core::series::{
    bessel_series, gd_from_counts, toeplitz_report, toeplitz_bessel_det, Factorials,
    RationalSeries,
};

fn series() -> impl Strategy<Value = RationalSeries> {
    (0usize..=8).prop_flat_map(|order| {
        proptest::collection::vec((-20i64..=20, 1i64..=9), order + 1).prop_map(move |cs| {
            RationalSeries::from_coefficients(
                order,
                cs.into_iter()
                    .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))),
            )
        })
    })
}

fn offsets() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|d| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, d), d)
    })
}

proptest! {
    #[test]
    fn addition_is_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative(a in series(), b in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn truncation_order_is_the_minimum(a in series(), b in series()) {
        let m = a.order().min(b.order());
        prop_assert_eq!((&a + &b).order(), m);
        prop_assert_eq!((&a * &b).order(), m);
        prop_assert_eq!(&(&a - &b) + &b, a.truncate(m));
    }

    #[test]
    fn transposed_offsets_give_the_same_determinant(m in offsets(), order in 0usize..=10) {
        let t: Vec<Vec<i64>> = (0..m.len()).map(|i| m.iter().map(|row| row[i]).collect()).collect();
        let neg: Vec<Vec<i64>> = m.iter().map(|row| row.iter().map(|k| -k).collect()).collect();
        let det = toeplitz_bessel_det(&m, order).unwrap();
        prop_assert_eq!(&det, &toeplitz_bessel_det(&t, order).unwrap());
        prop_assert_eq!(&det, &toeplitz_bessel_det(&neg, order).unwrap());
    }

    #[test]
    fn gd_coefficients_are_non_negative_and_integral(d in 1usize..=3, q in 0usize..=3, order in 0usize..=12) {
        let g = gd_from_counts(d, q, order);
        let facts = Factorials::up_to(order);
        for (n, c) in g.coefficients().iter().enumerate() {
            prop_assert!(!c.is_negative());
            let scaled = c * BigRational::from_integer(facts.get(n).clone());
            prop_assert!(scaled.is_integer());
        }
    }
}

#[test]
fn bessel_sum_is_exponential() {
    // sum_k I_k(2x) = e^{2x}
    let order = 10;
    let mut total = RationalSeries::zero(order);
    for k in -(order as i64)..=(order as i64) {
        total = &total + &bessel_series(k, order);
    }
    let facts = Factorials::up_to(order);
    for (n, c) in total.coefficients().iter().enumerate() {
        let expected = BigRational::new(BigInt::from(2).pow(n as u32), facts.get(n).clone());
        assert_eq!(c, &expected, "x^{n}");
    }
}

#[test]
fn toeplitz_identity_holds_on_small_grid() {
    for d in 1..=3 {
        for q in 0..=2 {
            let r = toeplitz_report(d, q, 12).unwrap();
            assert!(r.holds, "d={d} q={q}");
            assert!(r.rows.iter().all(|row| row.equal));
            for (n, row) in r.rows.iter().enumerate() {
                let z = z_ground(&GroundStateQuery { d, steps: n, q });
                assert_eq!(row.count, z.to_string());
            }
        }
    }
}

#[test]
fn determinant_of_identity_offsets() {
    // det(I_{i-j}) with d = 1 is I_0
    let det = toeplitz_bessel_det(&[vec![0]], 8).unwrap();
    assert_eq!(det, bessel_series(0, 8));
    assert!(det.coefficient(1).is_zero());
}
