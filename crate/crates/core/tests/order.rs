use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use sturmian_core::order_analysis::{
    distance_profile, factor_complexity, factor_set, is_balanced, is_most_homogeneous,
    profile_structure, DistanceClass, Homogeneity,
};
use sturmian_core::sturmian_gen::generate;
use sturmian_core::{QuadIrrational, RotationParams, Word};

fn angle(name: &str) -> QuadIrrational {
    match name {
        "fib" => QuadIrrational::fibonacci(),
        "sqrt2" => QuadIrrational::new(0, 1, 2, 2u64).unwrap(),
        // (-3 + 3 sqrt 3) / 4, about 0.549: long blocks of allowed levels
        "sqrt3" => QuadIrrational::new(-3, 3, 4, 3u64).unwrap(),
        _ => unreachable!(),
    }
}

fn params(name: &str, psi: (i64, i64, i64)) -> RotationParams {
    let g = angle(name);
    let psi = QuadIrrational::new(psi.0, psi.1, psi.2, g.d()).unwrap().frac();
    RotationParams::new(g, psi).unwrap()
}

fn window() -> impl Strategy<Value = (String, (i64, i64, i64), i64, usize)> {
    (
        prop::sample::select(vec!["fib", "sqrt2", "sqrt3"]),
        (-99i64..=99, -99i64..=99, 1i64..=99),
        -2000i64..2000,
        2usize..=500,
    )
        .prop_map(|(g, psi, start, len)| (g.to_string(), psi, start, len))
}

/// `p_n(w) > n + 1` for some `n`.
fn complexity_exceeds(w: &Word) -> bool {
    (1..w.len()).any(|n| factor_set(w, n).unwrap().len() > n + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sturmian_windows_pass_both_deciders((g, psi, start, len) in window()) {
        let w = generate(&params(&g, psi), start, start + len as i64 - 1).unwrap();
        prop_assert!(is_balanced(&w).is_balanced());
        if let Ok(h) = is_most_homogeneous(&w) {
            prop_assert!(h.is_homogeneous(), "{g} window {}", w.as_string());
        }
        for n in 1..=len.min(40) {
            prop_assert!(factor_set(&w, n).unwrap().len() <= n + 1);
        }
    }

    #[test]
    fn every_single_flip_gets_agreeing_verdicts((g, psi, start, len) in window()) {
        let w = generate(&params(&g, psi), start, start + len.min(120) as i64 - 1).unwrap();
        for pos in 0..w.len() {
            let m = w.flipped(pos);
            let balanced = is_balanced(&m).is_balanced();
            if let Ok(h) = is_most_homogeneous(&m) {
                prop_assert_eq!(h.is_homogeneous(), balanced, "flip {} of {}", pos, w.as_string());
            }
        }
    }

    #[test]
    fn interior_flips_that_unbalance_raise_complexity(
        (g, psi, start, len) in window(),
        pick in any::<prop::sample::Index>(),
    ) {
        let len = len.max(50);
        let w = generate(&params(&g, psi), start, start + len as i64 - 1).unwrap();
        let pos = 3 + pick.index(len - 6);
        let m = w.flipped(pos);
        if !is_balanced(&m).is_balanced() {
            prop_assert!(complexity_exceeds(&m), "flip {pos} of {}", w.as_string());
        }
    }
}

#[test]
fn short_windows_can_be_unbalanced_at_minimal_complexity() {
    // why the complexity clause is only asserted for long windows with interior flips
    for s in ["0011", "00111", "00001010"] {
        let w: Word = s.parse().unwrap();
        assert!(!is_balanced(&w).is_balanced(), "{s}");
        assert!(!complexity_exceeds(&w), "{s}");
    }
}

#[test]
fn homogeneity_edge_bounds_match_balance() {
    // a gap of 1 next to a leading run of two zeros is a homogeneity failure
    let w: Word = "0011".parse().unwrap();
    match is_most_homogeneous(&w).unwrap() {
        Homogeneity::NotHomogeneous { witness } => assert!(witness.at_edge),
        other => panic!("expected a witness, got {other:?}"),
    }
    assert!(is_most_homogeneous(&"0001000".parse().unwrap()).is_err());
}

#[test]
fn fibonacci_profile_follows_floor_formula() {
    let g = QuadIrrational::fibonacci();
    let p = distance_profile(&RotationParams::fibonacci(g.clone()).unwrap(), 2000).unwrap();
    let step = g.add_int(2);
    let mut j = 1;
    loop {
        let dj = step.mul_int(j).floor();
        if dj > BigInt::from(2000) {
            break;
        }
        assert_eq!(BigInt::from(p.d[j as usize - 1]), dj, "d_{j}");
        j += 1;
    }
    assert_eq!(p.d.len(), j as usize - 1);
    p.check_increments().unwrap();
}

#[test]
fn profile_does_not_depend_on_phase() {
    let a = distance_profile(&params("sqrt2", (1, 1, 3)), 300).unwrap();
    let b = distance_profile(&params("sqrt2", (0, 0, 1)), 300).unwrap();
    assert_eq!(a, b);
}

#[test]
fn every_gap_pair_appears_in_long_windows() {
    for g in ["fib", "sqrt2", "sqrt3"] {
        let p = params(g, (0, 0, 1));
        let profile = distance_profile(&p, 100).unwrap();
        let w = generate(&p, 0, 49_999).unwrap();
        let ones = w.one_positions();
        let d1 = profile.d1().unwrap() as usize;
        assert!(ones.windows(2).all(|x| x[1] - x[0] == d1 || x[1] - x[0] == d1 + 1), "{g}");
        for (j, &dj) in profile.d.iter().enumerate().take(10) {
            let gaps: BTreeSet<u64> = ones.windows(j + 2).map(|x| (x[j + 1] - x[0]) as u64).collect();
            assert_eq!(gaps, BTreeSet::from([dj, dj + 1]), "{g}, j = {}", j + 1);
        }
    }
}

#[test]
fn fibonacci_windows_avoid_000_and_11() {
    let s = generate(&params("fib", (3, -1, 7)), -5000, 5000).unwrap().as_string();
    assert!(!s.contains("000"));
    assert!(!s.contains("11"));
}

#[test]
fn structure_of_profiles() {
    let fib = profile_structure(&distance_profile(&params("fib", (0, 0, 1)), 500).unwrap()).unwrap();
    assert_eq!(fib.d1, Some(2));
    assert!(fib.block_sizes.iter().all(|&s| s == 1 || s == 2));
    let sqrt2 = profile_structure(&distance_profile(&params("sqrt2", (0, 0, 1)), 500).unwrap()).unwrap();
    assert_eq!(sqrt2.d1, Some(3));
    assert!(sqrt2.classes.iter().all(|(_, c)| matches!(c, DistanceClass::Singleton)));
    let sqrt3 = profile_structure(&distance_profile(&params("sqrt3", (0, 0, 1)), 500).unwrap()).unwrap();
    assert!(sqrt3.block_sizes.iter().any(|&s| s > 2));
}

#[test]
fn complexity_is_n_plus_one_for_several_angles() {
    for g in ["fib", "sqrt2", "sqrt3"] {
        let report = factor_complexity(&params(g, (1, 0, 3)), 14).unwrap();
        for (n, p) in &report.p {
            assert_eq!(*p, n + 1, "{g}, n = {n}");
        }
    }
}

#[test]
fn profile_json_shape() {
    let p = distance_profile(&params("fib", (0, 0, 1)), 25).unwrap();
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v["d"], serde_json::json!([2, 5, 7, 10, 13, 15, 18, 20, 23]));
    assert_eq!(v["forbidden"], serde_json::json!([1, 4, 9, 12, 17, 22, 25]));
    assert_eq!(v["horizon"], 25);
    assert!(v["allowed"].is_array());
}
