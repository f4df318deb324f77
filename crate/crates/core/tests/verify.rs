use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sturmian_core::config::RunConfig;
use sturmian_core::order_analysis::{distance_profile, DistanceProfile};
use sturmian_core::verify::{random_phase, run_verify, SuiteRegistry};
use sturmian_core::{QuadIrrational, RotationParams};

fn small() -> RunConfig {
    RunConfig {
        window: 600,
        l_max: 10,
        n_max: 8,
        ..RunConfig::default()
    }
}

#[test]
fn registry_lists_suites_in_run_order() {
    let reg = SuiteRegistry::default();
    assert_eq!(reg.names(), ["order", "discrepancy", "characterize", "energy"]);
    assert_eq!(reg.select("all").unwrap().len(), 4);
    assert!(reg.select("bogus").is_err());
}

#[test]
fn each_suite_passes_for_another_angle() {
    let cfg = RunConfig {
        gamma: "0,1,2,2".into(),
        psi: "1,1,5,2".into(),
        ..small()
    };
    for suite in ["order", "discrepancy", "characterize", "energy"] {
        let report = run_verify(suite, cfg.clone()).unwrap();
        assert_eq!(report.results.len(), 1);
        assert!(report.passed, "{suite}: {:?}", report.first_failure());
    }
}

#[test]
fn corrupted_profile_is_caught() {
    let params = RotationParams::fibonacci(QuadIrrational::zero()).unwrap();
    let mut d = distance_profile(&params, 60).unwrap().d;
    d[2] += 1;
    let cfg = RunConfig {
        profile_override: Some(DistanceProfile::from_d(d, 60).unwrap()),
        ..small()
    };
    let report = run_verify("all", cfg).unwrap();
    assert!(!report.passed);
    assert!(report.first_failure().is_some());
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run_verify("order", small()).unwrap()).unwrap();
    let b = serde_json::to_string(&run_verify("order", small()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn random_phases_stay_in_the_field() {
    let g = QuadIrrational::fibonacci();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let psi = random_phase(&mut rng, &g);
        assert!(RotationParams::fibonacci(psi).is_ok());
    }
}
