//! Writes the fuzz corpus seeds: `cargo run --example gen_fuzz_seeds [DIR]`
//! (default `fuzz/corpus`). Output is deterministic.

use std::fs;
use std::path::{Path, PathBuf};

use acwallet_core::ars::{open, rsign, Message, PublicParams};
use acwallet_core::audit::open_transaction;
use acwallet_core::harness::Fixture;
use acwallet_core::wallet::{
    canonical_message, derive_address, individual_sign, ActionRule, AuthorizationBundle, Chain,
    IndividualKeyPair, IndividualScheme, Policy, PolicyRing, TransactionData, TransactionRequest,
};
use acwallet_core::{Element, Scalar, Secp256k1, ToyGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn write(dir: &Path, target: &str, name: &str, bytes: impl AsRef<[u8]>) {
    let path = dir.join(target);
    fs::create_dir_all(&path).expect("create corpus directory");
    fs::write(path.join(name), bytes).expect("write seed");
}

fn seeds<G: IndividualScheme>(dir: &Path, rng: &mut ChaCha20Rng) {
    let id = G::ID.as_str();
    let pp = PublicParams::<G>::new().unwrap();

    let g = Element::<G>::generator();
    write(
        dir,
        "decode_element",
        &format!("{id}-generator"),
        g.to_bytes(),
    );
    write(
        dir,
        "decode_element",
        &format!("{id}-random"),
        g.pow(&Scalar::random(rng)).to_bytes(),
    );
    write(
        dir,
        "decode_element",
        &format!("{id}-identity"),
        Element::<G>::identity().to_bytes(),
    );
    write(
        dir,
        "decode_scalar",
        &format!("{id}-one"),
        Scalar::<G>::one().to_bytes(),
    );
    write(
        dir,
        "decode_scalar",
        &format!("{id}-random"),
        Scalar::<G>::random(rng).to_bytes(),
    );
    write(
        dir,
        "decode_scalar",
        &format!("{id}-minus-one"),
        (-Scalar::<G>::one()).to_bytes(),
    );

    for n in [1usize, 4] {
        let fx = Fixture::new(&pp, n, rng);
        let msg = Message(b"seed".to_vec());
        let sig = rsign(&pp, &fx.opener.opk, &msg, &fx.ring, &fx.users[0].sk, rng).unwrap();
        write(
            dir,
            "decode_ring_signature",
            &format!("{id}-n{n}"),
            sig.to_bytes(),
        );
        let proof = open(&pp, &msg, &fx.ring, &sig, &fx.opener.osk, rng).unwrap();
        write(
            dir,
            "decode_opening_proof",
            &format!("{id}-n{n}"),
            proof.to_bytes(),
        );
    }

    // A {ring, individual} wallet with one executed transaction.
    let fx = Fixture::new(&pp, 3, rng);
    let ind = IndividualKeyPair::<G>::generate(rng);
    let policy = Policy {
        rings: vec![PolicyRing {
            opk: fx.opener.opk,
            members: fx.ring.members().to_vec(),
        }],
        individuals: vec![ind.vk.clone()],
    };
    write(
        dir,
        "parse_policy",
        &format!("{id}-ring-and-individual"),
        policy.to_json(),
    );

    let mut chain = Chain::<G>::new(1).unwrap();
    let wallet = chain
        .deploy_contract_wallet(policy, ActionRule::Record, b"seed")
        .unwrap();
    let request = TransactionRequest {
        chain_id: 1,
        wallet,
        nonce: 0,
        payload: vec![0xca, 0xfe],
    };
    write(
        dir,
        "parse_transaction",
        &format!("{id}-unsigned"),
        TransactionData::<G> {
            request: request.clone(),
            bundle: AuthorizationBundle::default(),
        }
        .to_json(),
    );
    let msg = canonical_message(&request);
    let mut bundle = AuthorizationBundle::default();
    bundle.set_ring_sig(
        0,
        rsign(&pp, &fx.opener.opk, &msg, &fx.ring, &fx.users[1].sk, rng).unwrap(),
    );
    bundle.set_ind_sig(0, individual_sign(&ind.sigk, &msg, rng));
    write(
        dir,
        "parse_transaction",
        &format!("{id}-signed"),
        TransactionData {
            request: request.clone(),
            bundle: bundle.clone(),
        }
        .to_json(),
    );
    write(
        dir,
        "parse_chain_state",
        &format!("{id}-empty"),
        chain.to_json(),
    );
    chain.submit_transaction(request, bundle).unwrap();
    chain.fund(wallet, 100).unwrap();
    write(
        dir,
        "parse_chain_state",
        &format!("{id}-one-tx"),
        chain.to_json(),
    );

    let claim = open_transaction(&chain, 0, 0, &fx.opener.osk, rng).unwrap();
    write(dir, "parse_claim", &format!("{id}-claim"), claim.to_json());
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fuzz/corpus"));
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
    seeds::<ToyGroup>(&dir, &mut rng);
    seeds::<Secp256k1>(&dir, &mut rng);

    let payee = derive_address(b"payee");
    write(&dir, "parse_action_rule", "record", "record");
    write(
        &dir,
        "parse_action_rule",
        "transfer",
        ActionRule::Transfer {
            to: payee,
            amount: 5,
        }
        .to_string(),
    );
    write(&dir, "parse_action_rule", "address", format!("0x{payee}"));
    println!("{}", dir.display());
}
