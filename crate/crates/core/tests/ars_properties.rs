use acwallet_core::ars::{
    judge, open, rsign, rverify, Message, OpenFailure, OpenerKeyPair, OpeningProof, PublicParams,
    RingSignature,
};
use acwallet_core::harness::{tamper_mutations, Fixture};
use acwallet_core::{Element, Group, Scalar, Secp256k1, ToyGroup};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn sweep<G: Group>(trials: usize, seed: u64) {
    let pp = PublicParams::<G>::new().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for n in [1, 2, 4, 10] {
        for _ in 0..trials {
            let fx = Fixture::new(&pp, n, &mut rng);
            for (l, user) in fx.users.iter().enumerate() {
                let msg = Message(format!("n={n} l={l}").into_bytes());
                let sig = rsign(&pp, &fx.opener.opk, &msg, &fx.ring, &user.sk, &mut rng).unwrap();
                assert!(rverify(&pp, &fx.opener.opk, &msg, &fx.ring, &sig));
                let proof = open(&pp, &msg, &fx.ring, &sig, &fx.opener.osk, &mut rng).unwrap();
                assert_eq!(proof.pk_identified, user.pk);
                assert!(judge(
                    &pp,
                    &fx.opener.opk,
                    &msg,
                    &fx.ring,
                    &sig,
                    &user.pk,
                    &proof
                ));
            }
        }
    }
}

#[test]
fn correctness_sweep_toy() {
    sweep::<ToyGroup>(5, 1);
}

#[test]
fn correctness_sweep_production() {
    sweep::<Secp256k1>(2, 2);
}

fn tamper<G: Group>(seed: u64) {
    let pp = PublicParams::<G>::new().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let fx = Fixture::new(&pp, 4, &mut rng);
    let msg = Message(b"tamper".to_vec());
    let sig = rsign(
        &pp,
        &fx.opener.opk,
        &msg,
        &fx.ring,
        &fx.users[2].sk,
        &mut rng,
    )
    .unwrap();
    let mutants = tamper_mutations(&fx.opener.opk, &msg, &fx.ring, &sig);
    assert!(mutants.len() >= 30, "only {} mutations", mutants.len());
    for m in &mutants {
        assert!(
            !rverify(&pp, &m.opk, &m.msg, &m.ring, &m.sig),
            "accepted: {}",
            m.name
        );
    }
}

#[test]
fn tamper_suite_toy() {
    tamper::<ToyGroup>(3);
}

#[test]
fn tamper_suite_production() {
    tamper::<Secp256k1>(4);
}

#[test]
fn wrong_opener_key_yields_bottom() {
    let pp = PublicParams::<Secp256k1>::new().unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let fx = Fixture::new(&pp, 4, &mut rng);
    let msg = Message(b"m".to_vec());
    let sig = rsign(
        &pp,
        &fx.opener.opk,
        &msg,
        &fx.ring,
        &fx.users[0].sk,
        &mut rng,
    )
    .unwrap();
    let other = OpenerKeyPair::generate(&pp, &mut rng);
    assert_eq!(
        open(&pp, &msg, &fx.ring, &sig, &other.osk, &mut rng),
        Err(OpenFailure::InvalidSignature)
    );
}

fn toy_scalar() -> impl Strategy<Value = Scalar<ToyGroup>> {
    (0u64..1013).prop_map(Scalar::from_u64)
}

fn secp_scalar() -> impl Strategy<Value = Scalar<Secp256k1>> {
    any::<u64>().prop_map(Scalar::from_u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn toy_exponent_laws(a in toy_scalar(), b in toy_scalar()) {
        let g = Element::<ToyGroup>::generator();
        prop_assert_eq!(g.pow(&(a + b)), g.pow(&a) * g.pow(&b));
        prop_assert_eq!(g.pow(&(a * b)), g.pow(&a).pow(&b));
        let e = g.pow(&a);
        prop_assert_eq!(Element::from_bytes(&e.to_bytes()).ok(), Some(e));
        prop_assert_eq!(Scalar::from_bytes(&a.to_bytes()).ok(), Some(a));
    }

    #[test]
    fn secp_exponent_laws(a in secp_scalar(), b in secp_scalar()) {
        let g = Element::<Secp256k1>::generator();
        prop_assert_eq!(g.pow(&(a + b)), g.pow(&a) * g.pow(&b));
        prop_assert_eq!(g.pow(&(a * b)), g.pow(&a).pow(&b));
        let e = g.pow(&(a + Scalar::one()));
        prop_assert_eq!(Element::from_bytes(&e.to_bytes()).ok(), Some(e));
        prop_assert_eq!(Scalar::from_bytes(&a.to_bytes()).ok(), Some(a));
    }

    #[test]
    fn signature_round_trip(seed in any::<u64>(), n in 1usize..6, signer in 0usize..6) {
        let pp = PublicParams::<ToyGroup>::new().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let fx = Fixture::new(&pp, n, &mut rng);
        let msg = Message(seed.to_be_bytes().to_vec());
        let sig = rsign(&pp, &fx.opener.opk, &msg, &fx.ring, &fx.users[signer % n].sk, &mut rng).unwrap();
        let decoded = RingSignature::<ToyGroup>::from_bytes(&sig.to_bytes()).unwrap();
        prop_assert_eq!(&decoded, &sig);
        prop_assert_eq!(RingSignature::<ToyGroup>::from_hex(&sig.to_hex()).unwrap(), sig.clone());
        let proof = open(&pp, &msg, &fx.ring, &sig, &fx.opener.osk, &mut rng).unwrap();
        prop_assert_eq!(OpeningProof::<ToyGroup>::from_bytes(&proof.to_bytes()).unwrap(), proof);
    }

    #[test]
    fn decoders_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..256)) {
        let _ = RingSignature::<ToyGroup>::from_bytes(&bytes);
        let _ = RingSignature::<Secp256k1>::from_bytes(&bytes);
        let _ = OpeningProof::<ToyGroup>::from_bytes(&bytes);
        let _ = OpeningProof::<Secp256k1>::from_bytes(&bytes);
        let _ = Element::<Secp256k1>::from_bytes(&bytes);
        let _ = Element::<ToyGroup>::from_bytes(&bytes);
    }
}
