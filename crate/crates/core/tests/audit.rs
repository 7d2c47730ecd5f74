mod common;

use std::collections::BTreeMap;

use acwallet_core::ars::PublicParams;
use acwallet_core::audit::{judge_transaction, open_transaction, AuditClaim};
use acwallet_core::wallet::{
    ActionRule, Address, ContractWallet, IndividualScheme, Ledger, LogEntry,
};
use acwallet_core::{Group, Secp256k1, ToyGroup};
use common::Scenario;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Holds only what an outside observer of the chain can see.
struct PublicView<G: IndividualScheme> {
    pp: PublicParams<G>,
    log: Vec<LogEntry<G>>,
    wallets: BTreeMap<Address, ContractWallet<G>>,
}

impl<G: IndividualScheme> Ledger<G> for PublicView<G> {
    fn params(&self) -> &PublicParams<G> {
        &self.pp
    }

    fn log_entry(&self, index: usize) -> Option<&LogEntry<G>> {
        self.log.get(index)
    }

    fn wallet(&self, address: &Address) -> Option<&ContractWallet<G>> {
        self.wallets.get(address)
    }
}

/// Two-ring wallet with one executed transaction per signer of ring 0.
fn executed<G: IndividualScheme>(seed: u64) -> (Scenario<G>, ChaCha20Rng) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut s = Scenario::<G>::new(&[4, 3], false, ActionRule::Record, &mut rng);
    for l in 0..4 {
        let req = s.request(&[l as u8]);
        let bundle = s.bundle(&req, &[l, l % 3], &mut rng);
        s.chain.submit_transaction(req, bundle).unwrap();
    }
    (s, rng)
}

fn public_view<G: IndividualScheme>(s: &Scenario<G>) -> PublicView<G> {
    PublicView {
        pp: s.pp.clone(),
        log: s.chain.log().to_vec(),
        wallets: s.chain.wallets().map(|w| (w.address, w.clone())).collect(),
    }
}

fn provability_and_soundness<G: IndividualScheme>(seed: u64) {
    let (s, mut rng) = executed::<G>(seed);
    let view = public_view(&s);
    for tx in 0..4 {
        for (ring, fx) in s.rings.iter().enumerate() {
            let claim = open_transaction(&s.chain, tx, ring, &fx.opener.osk, &mut rng).unwrap();
            let signer = if ring == 0 { tx } else { tx % 3 };
            assert_eq!(claim.pk_identified, fx.users[signer].pk);
            assert!(judge_transaction(&view, &claim));

            for other in fx.users.iter().filter(|u| u.pk != claim.pk_identified) {
                let mut swapped = claim.clone();
                swapped.pk_identified = other.pk;
                assert!(!judge_transaction(&view, &swapped));
                swapped.proof.pk_identified = other.pk;
                assert!(!judge_transaction(&view, &swapped));
            }

            let moved = AuditClaim {
                tx_index: (tx + 1) % 4,
                ..claim.clone()
            };
            assert!(!judge_transaction(&view, &moved));
        }
    }
}

#[test]
fn provability_and_soundness_toy() {
    provability_and_soundness::<ToyGroup>(30);
}

#[test]
fn provability_and_soundness_production() {
    provability_and_soundness::<Secp256k1>(31);
}

fn wrong_osk_is_bottom<G: IndividualScheme>(seed: u64) {
    let (s, mut rng) = executed::<G>(seed);
    let err = open_transaction(&s.chain, 0, 0, &s.rings[1].opener.osk, &mut rng).unwrap_err();
    assert!(
        matches!(err.kind(), "invalid-signature" | "untraceable"),
        "{err}"
    );
}

#[test]
fn wrong_osk_toy() {
    wrong_osk_is_bottom::<ToyGroup>(32);
}

#[test]
fn wrong_osk_production() {
    wrong_osk_is_bottom::<Secp256k1>(33);
}

#[test]
fn out_of_range() {
    let (s, mut rng) = executed::<ToyGroup>(34);
    let osk = &s.rings[0].opener.osk;
    assert_eq!(
        open_transaction(&s.chain, 4, 0, osk, &mut rng)
            .unwrap_err()
            .kind(),
        "out-of-range"
    );
    assert_eq!(
        open_transaction(&s.chain, 0, 2, osk, &mut rng)
            .unwrap_err()
            .kind(),
        "out-of-range"
    );
    let claim = open_transaction(&s.chain, 0, 0, osk, &mut rng).unwrap();
    assert!(!judge_transaction(
        &s.chain,
        &AuditClaim {
            tx_index: 99,
            ..claim
        }
    ));
}

#[test]
fn claim_file_shape() {
    let (s, mut rng) = executed::<Secp256k1>(35);
    let claim = open_transaction(&s.chain, 1, 0, &s.rings[0].opener.osk, &mut rng).unwrap();
    let value: serde_json::Value = serde_json::from_str(&claim.to_json()).unwrap();
    let mut keys: Vec<&String> = value.as_object().unwrap().keys().collect();
    keys.sort();
    assert_eq!(keys, ["pk", "proof", "ring", "tx_index"]);
    assert_eq!(value["tx_index"], 1);
    assert_eq!(
        value["proof"].as_str().unwrap().len(),
        2 * (3 * Secp256k1::ELEMENT_LEN + 2 * Secp256k1::SCALAR_LEN)
    );
    assert_eq!(
        AuditClaim::<Secp256k1>::from_json(&claim.to_json()).unwrap(),
        claim
    );
}
