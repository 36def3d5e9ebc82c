use fls::closure::{closure, closure_oracle, ClosureMode, ORACLE_SUBSET_BOUND};
use fls::counting::{
    count_k_fuzzy_line_labelings, count_k_fuzzy_point_configs, infer_line_count,
    infer_line_count_for_space, labeling_oracle, space_cardinality, ORACLE_POSITION_BOUND,
};
use fls::enumerate::skeleton_classes;
use fls::theorems::check_generalized_dbe;
use fls::{fixtures, AxiomSet, ChainLattice, FuzzyLinearSpace, PointSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lattice(n: u32) -> ChainLattice {
    ChainLattice::new(n).unwrap()
}

fn random_relabel(s: &FuzzyLinearSpace, n: u32, seed: u64) -> FuzzyLinearSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    s.relabeled(lattice(n), |_, _| rng.gen_range(1..=n + 1)).unwrap()
}

fn small_spaces() -> Vec<FuzzyLinearSpace> {
    (3..=5)
        .flat_map(|v| skeleton_classes(v, true).unwrap())
        .map(|c| c.canonical)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_matches_oracle(idx in 0usize..9, n in 0u32..3, seed in any::<u64>(), mask in any::<u64>()) {
        let spaces = small_spaces();
        let s = random_relabel(&spaces[idx % spaces.len()], n, seed);
        let x = PointSet::from_bits(mask).intersection(s.all_points());
        for mode in [ClosureMode::ExistsSubset, ClosureMode::ForallSubsets] {
            prop_assert_eq!(
                closure(&s, x, mode).unwrap(),
                closure_oracle(&s, x, mode, ORACLE_SUBSET_BOUND).unwrap()
            );
        }
    }

    #[test]
    fn verdict_depends_only_on_supports(idx in 0usize..10, n in 1u32..4, seed in any::<u64>()) {
        let corpus = fixtures::corpus();
        let crisp = corpus[idx % corpus.len()].1.crisp_shadow();
        let fuzzy = random_relabel(&crisp, n, seed);
        let a = check_generalized_dbe(&crisp, AxiomSet::BASE).unwrap();
        let b = check_generalized_dbe(&fuzzy, AxiomSet::BASE).unwrap();
        prop_assert_eq!(a.without_product(), b.without_product());
    }

    #[test]
    fn labeling_oracle_matches_formula(sizes in prop::collection::vec(0usize..5, 0..4), n in 0u32..4) {
        prop_assume!(sizes.iter().sum::<usize>() <= 9);
        let lat = lattice(n);
        let supports: Vec<PointSet> = sizes.iter().map(|&k| PointSet::full(k)).collect();
        prop_assert_eq!(
            labeling_oracle(&supports, lat, ORACLE_POSITION_BOUND).unwrap(),
            count_k_fuzzy_point_configs(&sizes, lat)
        );
    }

    #[test]
    fn point_configs_order_independent(mut sizes in prop::collection::vec(0usize..30, 0..8), n in 0u32..6) {
        let lat = lattice(n);
        let a = count_k_fuzzy_point_configs(&sizes, lat);
        sizes.reverse();
        prop_assert_eq!(&a, &count_k_fuzzy_point_configs(&sizes, lat));
        let product = sizes.iter().fold(num_bigint::BigUint::from(1u32), |acc, &k| {
            acc * count_k_fuzzy_line_labelings(k, lat).value()
        });
        prop_assert_eq!(a.value(), &product);
    }

    #[test]
    fn infer_inverts_power(b in 0usize..40, v in 1usize..8, n in 1u32..6) {
        let lat = lattice(n);
        let m = count_k_fuzzy_point_configs(&vec![v; b], lat);
        prop_assert_eq!(infer_line_count(&m, v, lat).unwrap(), b);
    }
}

#[test]
fn infer_round_trip_on_uniform_skeletons() {
    for v in 3..=6 {
        for class in skeleton_classes(v, true).unwrap() {
            let sizes = class.canonical.support_sizes();
            let uniform = sizes.iter().all(|&k| k == sizes[0]);
            for n in 1..=3 {
                let s = class.canonical.relabeled(lattice(n), |_, _| 1).unwrap();
                let inferred = infer_line_count_for_space(&s);
                if uniform {
                    assert_eq!(inferred.unwrap(), s.b());
                    assert_eq!(
                        infer_line_count(&space_cardinality(&s), sizes[0], lattice(n)).unwrap(),
                        s.b()
                    );
                } else {
                    assert!(inferred.is_err());
                }
            }
        }
    }
}
