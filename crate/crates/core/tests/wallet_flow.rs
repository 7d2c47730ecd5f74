mod common;

use acwallet_core::ars::Message;
use acwallet_core::audit::{judge_transaction, open_transaction};
use acwallet_core::wallet::{
    derive_address, individual_sign, ActionRule, AuthorizationBundle, Chain, Ledger,
    TransactionRequest,
};
use acwallet_core::{Secp256k1, ToyGroup};
use common::{Scenario, CHAIN_ID};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

#[test]
fn ring_and_individual_each_signer() {
    let mut rng = ChaCha20Rng::seed_from_u64(10);
    let mut s = Scenario::<Secp256k1>::new(&[4], true, ActionRule::Record, &mut rng);
    for l in 0..4 {
        let req = s.request(format!("pay {l}").as_bytes());
        let bundle = s.bundle(&req, &[l], &mut rng);
        let receipt = s.chain.submit_transaction(req, bundle).unwrap();
        assert_eq!(receipt.tx_index, l as u64);
        // 6N for the ring plus the nominal ECDSA charge.
        assert_eq!((receipt.exponentiations, receipt.hash_calls), (26, 2));

        let claim = open_transaction(&s.chain, l, 0, &s.rings[0].opener.osk, &mut rng).unwrap();
        assert_eq!(claim.pk_identified, s.rings[0].users[l].pk);
        assert!(judge_transaction(&s.chain, &claim));
    }
    assert_eq!(s.nonce(), 4);
    let records = &Ledger::wallet(&s.chain, &s.wallet).unwrap().records;
    assert_eq!(records[2], hex::encode("pay 2"));
}

#[test]
fn replay_is_bad_nonce() {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let mut s = Scenario::<ToyGroup>::new(&[4], true, ActionRule::Record, &mut rng);
    let req = s.request(b"once");
    let bundle = s.bundle(&req, &[1], &mut rng);
    s.chain
        .submit_transaction(req.clone(), bundle.clone())
        .unwrap();
    let err = s.chain.submit_transaction(req, bundle).unwrap_err();
    assert_eq!(err.kind(), "bad-nonce");
}

#[test]
fn missing_signatures() {
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    let mut s = Scenario::<ToyGroup>::new(&[4], true, ActionRule::Record, &mut rng);
    let req = s.request(b"x");
    let full = s.bundle(&req, &[0], &mut rng);

    let mut no_ring = full.clone();
    no_ring.ring_sigs.clear();
    assert_eq!(
        s.chain
            .submit_transaction(req.clone(), no_ring)
            .unwrap_err()
            .kind(),
        "missing-signature"
    );

    let mut no_ind = full.clone();
    no_ind.ind_sigs.clear();
    assert_eq!(
        s.chain
            .submit_transaction(req.clone(), no_ind)
            .unwrap_err()
            .kind(),
        "missing-signature"
    );

    let mut extra = full.clone();
    extra.set_ring_sig(1, full.ring_sigs[0].sig.clone());
    assert_eq!(
        s.chain
            .submit_transaction(req.clone(), extra)
            .unwrap_err()
            .kind(),
        "extra-signature"
    );

    assert!(s.chain.submit_transaction(req, full).is_ok());
}

#[test]
fn bad_signatures() {
    let mut rng = ChaCha20Rng::seed_from_u64(13);
    let mut s = Scenario::<ToyGroup>::new(&[4], true, ActionRule::Record, &mut rng);
    let req = s.request(b"x");
    let full = s.bundle(&req, &[3], &mut rng);

    let mut other = req.clone();
    other.payload = b"y".to_vec();
    let wrong = s.bundle(&other, &[3], &mut rng);

    let mut bad_ring = full.clone();
    bad_ring.ring_sigs = wrong.ring_sigs.clone();
    assert_eq!(
        s.chain
            .submit_transaction(req.clone(), bad_ring)
            .unwrap_err()
            .kind(),
        "invalid-ring-signature"
    );
    let mut bad_ind = full.clone();
    bad_ind.ind_sigs = wrong.ind_sigs.clone();
    assert_eq!(
        s.chain
            .submit_transaction(req.clone(), bad_ind)
            .unwrap_err()
            .kind(),
        "invalid-individual-signature"
    );
    let wrong_chain = TransactionRequest {
        chain_id: CHAIN_ID + 1,
        ..req.clone()
    };
    assert_eq!(
        s.chain
            .submit_transaction(wrong_chain, full.clone())
            .unwrap_err()
            .kind(),
        "wrong-chain"
    );
    let unknown = TransactionRequest {
        wallet: derive_address(b"nobody"),
        ..req
    };
    assert_eq!(
        s.chain
            .submit_transaction(unknown, full)
            .unwrap_err()
            .kind(),
        "unknown-wallet"
    );
}

#[test]
fn bundle_is_bound_to_its_wallet() {
    let mut rng = ChaCha20Rng::seed_from_u64(14);
    let mut s = Scenario::<ToyGroup>::new(&[4], false, ActionRule::Record, &mut rng);
    let policy = Ledger::wallet(&s.chain, &s.wallet).unwrap().policy.clone();
    let twin = s
        .chain
        .deploy_contract_wallet(policy, ActionRule::Record, b"other salt")
        .unwrap();
    assert_ne!(twin, s.wallet);

    let req = s.request(b"x");
    let bundle = s.bundle(&req, &[0], &mut rng);
    let redirected = TransactionRequest {
        wallet: twin,
        ..req
    };
    assert_eq!(
        s.chain
            .submit_transaction(redirected, bundle)
            .unwrap_err()
            .kind(),
        "invalid-ring-signature"
    );
}

#[test]
fn ring_verification_meter() {
    let mut rng = ChaCha20Rng::seed_from_u64(15);
    for (n, expected) in [(4, 24), (10, 60)] {
        let mut s = Scenario::<Secp256k1>::new(&[n], false, ActionRule::Record, &mut rng);
        let req = s.request(b"m");
        let bundle = s.bundle(&req, &[n - 1], &mut rng);
        let receipt = s.chain.submit_transaction(req, bundle).unwrap();
        assert_eq!((receipt.exponentiations, receipt.hash_calls), (expected, 1));
        assert_eq!(s.chain.last_meter().exponentiations, expected);
    }
}

#[test]
fn log_does_not_name_the_signer() {
    let mut rng = ChaCha20Rng::seed_from_u64(16);
    let mut s = Scenario::<Secp256k1>::new(&[4], false, ActionRule::Record, &mut rng);
    let req = s.request(b"m");
    let bundle = s.bundle(&req, &[2], &mut rng);
    s.chain.submit_transaction(req, bundle).unwrap();
    let entry = serde_json::to_value(Ledger::log_entry(&s.chain, 0).unwrap()).unwrap();
    let keys: Vec<&String> = entry.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["bundle", "request"]);
    let text = entry.to_string();
    for user in &s.rings[0].users {
        assert!(!text.contains(&user.pk.to_hex()));
    }
}

#[test]
fn transfer_rule_moves_funds() {
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    let payee = derive_address(b"payee");
    let rule = ActionRule::Transfer {
        to: payee,
        amount: 30,
    };
    let mut s = Scenario::<ToyGroup>::new(&[2], false, rule, &mut rng);

    let req = s.request(b"");
    let bundle = s.bundle(&req, &[0], &mut rng);
    let before = s.chain.to_json();
    let err = s
        .chain
        .submit_transaction(req.clone(), bundle.clone())
        .unwrap_err();
    assert_eq!(err.kind(), "insufficient-balance");
    assert_eq!(s.chain.to_json(), before);
    assert_eq!(s.nonce(), 0);

    s.chain.fund(s.wallet, 50).unwrap();
    s.chain.submit_transaction(req, bundle).unwrap();
    assert_eq!(
        (s.chain.balance(&s.wallet), s.chain.balance(&payee)),
        (20, 30)
    );
}

#[test]
fn state_round_trips() {
    let mut rng = ChaCha20Rng::seed_from_u64(18);
    let mut s = Scenario::<Secp256k1>::new(&[3], true, ActionRule::Record, &mut rng);
    let req = s.request(b"m");
    let bundle = s.bundle(&req, &[1], &mut rng);
    s.chain.submit_transaction(req, bundle).unwrap();
    let json = s.chain.to_json();
    let back = Chain::<Secp256k1>::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
    assert!(Chain::<ToyGroup>::from_json(&json).is_err());
}

/// Random mix of valid and invalid submissions; every rejection must leave
/// the serialized state untouched.
fn atomicity_run(attempts: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let payee = derive_address(b"payee");
    let mut s = Scenario::<ToyGroup>::new(
        &[3],
        true,
        ActionRule::Transfer {
            to: payee,
            amount: 5,
        },
        &mut rng,
    );
    s.chain.fund(s.wallet, 5 * (attempts as u64) / 8).unwrap();
    let (mut accepted, mut rejected) = (0, 0);
    for _ in 0..attempts {
        let req = s.request(&rng.gen::<[u8; 4]>());
        let mut bundle = s.bundle(&req, &[rng.gen_range(0..3)], &mut rng);
        let mut req = req;
        match rng.gen_range(0..8) {
            0 => req.nonce += rng.gen_range(1..3),
            1 => bundle.ring_sigs.clear(),
            2 => bundle.ind_sigs.clear(),
            3 => {
                bundle.ring_sigs[0].sig.branches[0].z_s =
                    bundle.ring_sigs[0].sig.branches[0].z_s + acwallet_core::Scalar::one()
            }
            4 => {
                let k = s.individual.as_ref().unwrap();
                bundle.set_ind_sig(
                    0,
                    individual_sign(&k.sigk, &Message(b"other".to_vec()), &mut rng),
                );
            }
            5 => req.payload.push(0),
            _ => {}
        }
        let before = s.chain.to_json();
        let nonce = s.nonce();
        match s.chain.submit_transaction(req, bundle) {
            Ok(_) => {
                accepted += 1;
                assert_eq!(s.nonce(), nonce + 1);
            }
            Err(_) => {
                rejected += 1;
                assert_eq!(s.chain.to_json(), before);
            }
        }
    }
    (accepted, rejected)
}

#[test]
fn rejections_are_atomic() {
    let (accepted, rejected) = atomicity_run(300, 19);
    assert!(accepted > 0 && rejected > 0);
}

#[test]
fn nonce_counts_accepted_transactions() {
    let mut rng = ChaCha20Rng::seed_from_u64(20);
    let mut s = Scenario::<ToyGroup>::new(&[2], false, ActionRule::Record, &mut rng);
    for k in 0..5 {
        assert_eq!(s.nonce(), k);
        let req = s.request(b"");
        let bundle: AuthorizationBundle<ToyGroup> = s.bundle(&req, &[1], &mut rng);
        s.chain.submit_transaction(req, bundle).unwrap();
    }
    assert_eq!(s.chain.log().len(), 5);
}
