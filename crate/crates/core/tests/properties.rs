//! Algebraic identities over random delta-matroids.
//!
//! Each case draws a `u64` seed from proptest and builds its inputs with a
//! ChaCha generator, so a failure report is a single reproducible seed.

use std::collections::BTreeSet;

use delta_matroid::binary::{enumerate_minors, is_binary};
use delta_matroid::census::{canonical_code, CensusRecord};
use delta_matroid::iso::isomorphism_code;
use delta_matroid::random;
use delta_matroid::text::{format_dm, parse_dm, Style};
use delta_matroid::twistpoly::twist_polynomial;
use delta_matroid::{check_symmetric_exchange, DeltaMatroid, Error, Family, Subset, TwistPolynomial};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0x5eed_d317a),
        failure_persistence: None,
        ..Config::default()
    }
}

/// A random delta-matroid on 0..=5 elements.
fn sample(seed: u64) -> (ChaCha8Rng, DeltaMatroid) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(0..=5);
    let d = random::delta_matroid(&mut rng, n);
    (rng, d)
}

fn assert_valid(d: &DeltaMatroid) {
    assert_eq!(check_symmetric_exchange(d.family()), Ok(()), "{d:?}");
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn twist_is_an_involution(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let a = random::subset(&mut rng, d.n());
        prop_assert_eq!(d.twist(a).twist(a), d);
    }

    #[test]
    fn twists_compose_by_symmetric_difference(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let (a, b) = (random::subset(&mut rng, d.n()), random::subset(&mut rng, d.n()));
        prop_assert_eq!(d.twist(a).twist(b), d.twist(a ^ b));
        prop_assert_eq!(d.dual(), d.twist(d.ground_set()));
    }

    #[test]
    fn deletion_and_contraction_swap_under_a_twist(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        prop_assume!(d.n() > 0);
        let e = rng.random_range(0..d.n());
        let te = d.twist(Subset::singleton(e));
        // Both sides must agree on whether the result exists.
        prop_assert_eq!(te.delete(e), d.contract(e));
        prop_assert_eq!(te.contract(e), d.delete(e));
    }

    #[test]
    fn operations_return_delta_matroids(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let a = random::subset(&mut rng, d.n());
        assert_valid(&d.twist(a));
        assert_valid(&d.dual());
        for r in [d.delete_set(a), d.contract_set(a), d.restrict(a)] {
            match r {
                Ok(m) => assert_valid(&m),
                Err(e) => prop_assert_eq!(e, Error::EmptyFamily),
            }
        }
        let n2 = rng.random_range(0..=3);
        let other = random::delta_matroid(&mut rng, n2);
        assert_valid(&d.direct_sum(&other).unwrap());
    }

    #[test]
    fn polynomial_is_twist_invariant(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let a = random::subset(&mut rng, d.n());
        prop_assert_eq!(twist_polynomial(&d.twist(a)), twist_polynomial(&d));
    }

    #[test]
    fn polynomial_is_isomorphism_invariant(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let perm = random::permutation(&mut rng, d.n());
        prop_assert_eq!(twist_polynomial(&d.permute(&perm)), twist_polynomial(&d));
    }

    #[test]
    fn polynomial_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n1 = rng.random_range(0..=5);
        let n2 = rng.random_range(0..=(8 - n1).min(5));
        let (d1, d2) = (random::delta_matroid(&mut rng, n1), random::delta_matroid(&mut rng, n2));
        let sum = d1.direct_sum(&d2).unwrap();
        prop_assert_eq!(twist_polynomial(&sum), twist_polynomial(&d1).multiply(&twist_polynomial(&d2)));
    }

    #[test]
    fn coefficients_sum_to_the_number_of_twists(seed in any::<u64>()) {
        let (_, d) = sample(seed);
        prop_assert_eq!(twist_polynomial(&d).coefficient_sum(), 1u64 << d.n());
    }

    #[test]
    fn every_feasible_set_has_an_envelope(seed in any::<u64>()) {
        let (_, d) = sample(seed);
        let (lo, hi) = d.size_range();
        for f0 in d.feasible_sets() {
            let (f1, f2) = d.envelope(f0).unwrap();
            prop_assert!(d.is_feasible(f1) && d.is_feasible(f2));
            prop_assert_eq!((f1.len(), f2.len()), (lo, hi));
            prop_assert!(f1.is_subset_of(f0) && f0.is_subset_of(f2));
        }
    }

    #[test]
    fn extreme_layers_have_submodular_rank(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        for m in [d.min_matroid(), d.max_matroid()] {
            for _ in 0..16 {
                let (x, y) = (random::subset(&mut rng, d.n()), random::subset(&mut rng, d.n()));
                prop_assert!(m.rank(x | y) + m.rank(x & y) <= m.rank(x) + m.rank(y));
                prop_assert!(m.rank(x) <= x.len());
            }
        }
    }

    #[test]
    fn canonical_code_ignores_relabeling_and_twisting(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let code = canonical_code(&d).unwrap();
        let moved = d.permute(&random::permutation(&mut rng, d.n())).twist(random::subset(&mut rng, d.n()));
        prop_assert_eq!(canonical_code(&moved).unwrap(), code);
        prop_assert_eq!(canonical_code(&code.decode()).unwrap(), code);
        prop_assert!(code.decode().is_normal());
    }

    #[test]
    fn text_forms_round_trip(seed in any::<u64>()) {
        let (_, d) = sample(seed);
        for style in [Style::Block, Style::Compact] {
            prop_assert_eq!(parse_dm(&format_dm(&d, style)).unwrap(), d.clone());
        }
        let poly = twist_polynomial(&d);
        prop_assert_eq!(poly.to_string().parse::<TwistPolynomial>().unwrap(), poly);
    }

    #[test]
    fn catalog_lines_round_trip(seed in any::<u64>()) {
        let (_, d) = sample(seed);
        let record = CensusRecord::from_code(canonical_code(&d).unwrap());
        let mut buf = Vec::new();
        delta_matroid::census::write_catalog(d.n(), std::slice::from_ref(&record), &mut buf).unwrap();
        let (n, back) = delta_matroid::census::read_catalog(buf.as_slice()).unwrap();
        prop_assert_eq!(n, d.n());
        prop_assert_eq!(back, vec![record]);
    }
}

proptest! {
    #![proptest_config(config(1000))]

    /// Any sequence of deletions and contractions lands in the minor list.
    #[test]
    fn minor_list_is_closed(seed in any::<u64>()) {
        let (mut rng, d) = sample(seed);
        let minors: BTreeSet<Family> = enumerate_minors(&d).unwrap().iter().map(isomorphism_code).collect();
        let mut m = d.clone();
        while m.n() > 0 && rng.random_bool(0.8) {
            let e = rng.random_range(0..m.n());
            let next = if rng.random_bool(0.5) { m.delete(e) } else { m.contract(e) };
            match next {
                Ok(next) => m = next,
                Err(_) => continue,
            }
            prop_assert!(minors.contains(&isomorphism_code(&m)), "{m:?} missing from minors of {d:?}");
        }
        // Minors of a minor are minors.
        for sub in enumerate_minors(&m).unwrap() {
            prop_assert!(minors.contains(&isomorphism_code(&sub)));
        }
        if is_binary(&d) {
            prop_assert!(is_binary(&m));
        }
    }
}
