use num_bigint::BigInt;
use proptest::prelude::*;
use vicious_core::enumeration::{
    binomial, factorial, syt_count, u_count, walk_oracle, z_count, z_count_sequence, z_ground,
    GroundStateQuery, WalkCountQuery,
};
use vicious_core::lattice::{Configuration, YoungDiagram, YoungLattice};
use vicious_core::operators::{refined_count, Step, StepWord};

// Plain recursion over walker moves, written without the lattice module.
fn dfs(pos: &mut Vec<i64>, steps: usize, target: &[i64]) -> u64 {
    if steps == 0 {
        return u64::from(pos.as_slice() == target);
    }
    let mut total = 0;
    for i in 0..pos.len() {
        for delta in [-1, 1] {
            pos[i] += delta;
            let ok = pos.windows(2).all(|w| w[0] > w[1]);
            if ok {
                total += dfs(pos, steps - 1, target);
            }
            pos[i] -= delta;
        }
    }
    total
}

fn configuration(d: usize) -> impl Strategy<Value = Configuration> {
    proptest::collection::btree_set(-4i64..=4, d)
        .prop_map(|set| Configuration::new(set.into_iter().rev().collect()).unwrap())
}

fn pair() -> impl Strategy<Value = (Configuration, Configuration)> {
    (1usize..=3).prop_flat_map(|d| (configuration(d), configuration(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn z_count_matches_oracles((from, to) in pair(), steps in 0usize..=8) {
        let q = WalkCountQuery::new(steps, from.clone(), to.clone()).unwrap();
        let fast = z_count(&q);
        prop_assert_eq!(&fast, &walk_oracle(&q).unwrap());
        let mut pos = from.parts().to_vec();
        prop_assert_eq!(fast, BigInt::from(dfs(&mut pos, steps, to.parts())));
    }

    #[test]
    fn z_count_is_symmetric((from, to) in pair(), steps in 0usize..=14) {
        let forward = z_count(&WalkCountQuery::new(steps, from.clone(), to.clone()).unwrap());
        let backward = z_count(&WalkCountQuery::new(steps, to, from).unwrap());
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn z_ground_vanishes_exactly_off_parity(d in 1usize..=3, steps in 0usize..=16, q in 0usize..=4) {
        let z = z_ground(&GroundStateQuery { d, steps, q });
        let reachable = steps >= d * q && (steps - d * q) % 2 == 0;
        prop_assert_eq!(z == BigInt::from(0), !reachable);
    }

    #[test]
    fn sequence_agrees_with_single_counts((from, to) in pair(), max in 0usize..=10) {
        let seq = z_count_sequence(&from, &to, max);
        prop_assert_eq!(seq.len(), max + 1);
        for (n, v) in seq.iter().enumerate() {
            let q = WalkCountQuery::new(n, from.clone(), to.clone()).unwrap();
            prop_assert_eq!(v, &z_count(&q));
        }
    }
}

#[test]
fn syt_counts_match_up_walks_from_empty() {
    for d in 1..=4 {
        let young = YoungLattice { d };
        let mut shapes = vec![YoungDiagram::empty()];
        for size in 0..=8u32 {
            for y in &shapes {
                let w = StepWord::power(Step::Raise, size as usize);
                let walks = refined_count(&young, &w, &YoungDiagram::empty(), y).unwrap();
                assert_eq!(walks, syt_count(y), "{y}");
            }
            shapes = shapes
                .iter()
                .flat_map(|y| vicious_core::lattice::young_up_neighbors(y, d))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
        }
    }
}

#[test]
fn u_count_small_cases() {
    for n in 0..=7 {
        for d in n..=n + 2 {
            assert_eq!(u_count(d, n).unwrap(), factorial(n));
        }
    }
    for n in 0..=9 {
        let catalan = binomial(2 * n, n) / BigInt::from(n + 1);
        assert_eq!(u_count(2, n).unwrap(), catalan, "n = {n}");
    }
    assert!(u_count(3, 10).is_err());
}

#[test]
fn one_walker_counts_are_binomial() {
    // a single walker moving q sites in q + 2n steps: choose the n left steps
    for q in 0..=5usize {
        for n in 0..=6usize {
            let z = z_ground(&GroundStateQuery { d: 1, steps: 2 * n + q, q });
            assert_eq!(z, binomial(2 * n + q, n));
        }
    }
}
