use acwallet_core::ars::PublicParams;
use acwallet_core::harness::{
    run_anonymity_suite, run_full_unforgeability_suite, run_traceability_suite,
    run_tracing_soundness_suite, simulate_transcript, GameReport,
};
use acwallet_core::{Secp256k1, ToyGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn check(report: GameReport) {
    assert!(report.passed(), "{report}");
    let json = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<GameReport>(&json).unwrap(), report);
}

#[test]
fn production_suites() {
    let pp = PublicParams::<Secp256k1>::new().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(40);
    check(run_full_unforgeability_suite(&pp, 10, &mut rng));
    check(run_traceability_suite(&pp, 24, &mut rng));
    check(run_tracing_soundness_suite(&pp, 10, &mut rng));
}

#[test]
fn toy_anonymity() {
    let pp = PublicParams::<ToyGroup>::new().unwrap();
    let report = run_anonymity_suite(&pp, 400, &mut ChaCha20Rng::seed_from_u64(41));
    let osk = report.distinguishers.iter().find(|d| d.uses_osk).unwrap();
    assert_eq!(osk.advantage, 1.0);
    check(report);
}

#[test]
fn simulator_on_production() {
    let pp = PublicParams::<Secp256k1>::new().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(42);
    assert!((0..10).all(|_| simulate_transcript(&pp, 3, &mut rng)));
}
