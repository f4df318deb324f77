use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use sturmian_core::sturmian_gen::{
    fibonacci_substitution, generate, generate_approx, symbol_at, ApproxRotation, GammaSpec,
    SourceRegistry,
};
use sturmian_core::{rotate, EndpointPolicy, Error, QuadIrrational, RotationParams};

fn fib(psi: QuadIrrational) -> RotationParams {
    RotationParams::fibonacci(psi).unwrap()
}

fn sqrt2_angle() -> QuadIrrational {
    QuadIrrational::new(0, 1, 2, 2u64).unwrap()
}

fn phase(d: u64) -> impl Strategy<Value = QuadIrrational> {
    (-200i64..=200, -200i64..=200, 1i64..=200)
        .prop_map(move |(a, b, c)| QuadIrrational::new(a, b, c, d).unwrap().frac())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_equivariance(psi in phase(5), i in -500i64..500, len in 1i64..200) {
        let g = QuadIrrational::fibonacci();
        let shifted = fib(rotate(&psi, &g, 1).unwrap());
        let a = generate(&fib(psi), i + 1, i + len).unwrap();
        let b = generate(&shifted, i, i + len - 1).unwrap();
        prop_assert_eq!(a.symbols(), b.symbols());
    }

    #[test]
    fn window_matches_pointwise_coding(psi in phase(2), i in -300i64..300, len in 1i64..60) {
        let params = RotationParams::new(sqrt2_angle(), psi).unwrap();
        let w = generate(&params, i, i + len - 1).unwrap();
        for (k, &s) in w.symbols().iter().enumerate() {
            prop_assert_eq!(s, symbol_at(&params, i + k as i64).unwrap());
        }
    }

    #[test]
    fn ones_count_within_one_of_expectation(psi in phase(5), i in -1000i64..1000, len in 1usize..800) {
        let g = QuadIrrational::fibonacci();
        let w = generate(&fib(psi), i, i + len as i64 - 1).unwrap();
        let expected = g.neg().add_int(1).mul_int(len as i64);
        let dev = QuadIrrational::from_integer(w.ones() as i64).checked_sub(&expected).unwrap().abs();
        prop_assert!(dev <= QuadIrrational::one(), "deviation {dev} on window of length {len}");
    }

    #[test]
    fn approx_agrees_with_exact_whenever_certified(
        num in 0i64..1000,
        den in 1i64..1000,
        max_q in prop::sample::select(vec![8u64, 21, 55, 144, 377, 987]),
        from in -400i64..400,
        len in 1i64..300,
    ) {
        let g = QuadIrrational::fibonacci();
        let approx = ApproxRotation::from_convergents(&g, max_q).unwrap();
        let psi = BigRational::new(BigInt::from(num % den), BigInt::from(den));
        let exact = fib(QuadIrrational::from_rational(&psi));
        if let Ok(w) = generate_approx(&approx, &psi, from, from + len - 1) {
            prop_assert_eq!(w, generate(&exact, from, from + len - 1).unwrap());
        }
    }
}

#[test]
fn substitution_oracle_agrees_up_to_fifteen_iterates() {
    let g = QuadIrrational::fibonacci();
    let longest = fibonacci_substitution(15).unwrap();
    let rotation = generate(&fib(g), 1, longest.len() as i64).unwrap();
    assert_eq!(rotation, longest);
    for n in 1..15 {
        let w = fibonacci_substitution(n).unwrap();
        assert_eq!(w.symbols(), &rotation.symbols()[..w.len()], "iterate {n}");
    }
}

#[test]
fn substitution_lengths_are_fibonacci_numbers() {
    let (mut a, mut b) = (1usize, 2usize);
    for n in 1..=20 {
        assert_eq!(fibonacci_substitution(n).unwrap().len(), b, "iterate {n}");
        (a, b) = (b, a + b);
    }
}

#[test]
fn strict_policy_rejects_endpoint_hits_only() {
    let params = RotationParams::with_policy(
        QuadIrrational::fibonacci(),
        QuadIrrational::zero(),
        EndpointPolicy::Strict,
    )
    .unwrap();
    assert_eq!(generate(&params, 0, 5), Err(Error::AmbiguousCoding { index: 0 }));
    assert_eq!(generate(&params, 1, 5), Err(Error::AmbiguousCoding { index: 1 }));
    let half_open = fib(QuadIrrational::zero());
    assert_eq!(generate(&params, 2, 400).unwrap(), generate(&half_open, 2, 400).unwrap());
}

#[test]
fn registered_sources_agree() {
    let reg = SourceRegistry::default();
    assert_eq!(reg.names().collect::<Vec<_>>(), ["approx", "rotation", "substitution"]);
    let g = QuadIrrational::fibonacci();
    let exact = GammaSpec::Exact(g.clone());
    let rotation = reg.build("rotation", &exact, &g).unwrap().window(1, 600).unwrap();
    let substitution = reg.build("substitution", &exact, &g).unwrap().window(1, 600).unwrap();
    assert_eq!(rotation, substitution);

    let zero = QuadIrrational::zero();
    let ratio: GammaSpec = "ratio:987/1597".parse().unwrap();
    let approx = reg.build("approx", &ratio, &zero).unwrap().window(-30, 30).unwrap();
    let exact_zero = reg.build("rotation", &exact, &zero).unwrap().window(-30, 30).unwrap();
    assert_eq!(approx, exact_zero);
    assert!(reg.build("rotation", &ratio, &zero).is_err());
    assert!(reg.build("nope", &exact, &zero).is_err());
}

#[test]
fn other_quadratic_angles_generate() {
    let params = RotationParams::new(sqrt2_angle(), QuadIrrational::zero()).unwrap();
    let w = generate(&params, 0, 9999).unwrap();
    let ones = w.one_positions();
    // gamma = 1/sqrt(2) gives gaps 3 and 4 between consecutive ones
    assert!(ones.windows(2).all(|p| p[1] - p[0] == 3 || p[1] - p[0] == 4));
    assert!(RotationParams::new(sqrt2_angle(), QuadIrrational::fibonacci()).is_err());
}
