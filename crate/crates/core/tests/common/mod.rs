#![allow(dead_code)]

use acwallet_core::ars::{rsign, PublicParams};
use acwallet_core::harness::Fixture;
use acwallet_core::wallet::{
    canonical_message, individual_sign, ActionRule, Address, AuthorizationBundle, Chain,
    IndividualKeyPair, IndividualScheme, Ledger, Policy, PolicyRing, TransactionRequest,
};
use rand::{CryptoRng, RngCore};

pub const CHAIN_ID: u64 = 7;

/// A chain with one deployed wallet whose policy is one ring per fixture
/// plus optionally one individual key.
pub struct Scenario<G: IndividualScheme> {
    pub chain: Chain<G>,
    pub pp: PublicParams<G>,
    pub rings: Vec<Fixture<G>>,
    pub individual: Option<IndividualKeyPair<G>>,
    pub wallet: Address,
}

impl<G: IndividualScheme> Scenario<G> {
    pub fn new<R: RngCore + CryptoRng>(
        ring_sizes: &[usize],
        with_individual: bool,
        rule: ActionRule,
        rng: &mut R,
    ) -> Self {
        let pp = PublicParams::<G>::new().unwrap();
        let mut chain = Chain::<G>::new(CHAIN_ID).unwrap();
        // Toy-group rings can collide by chance; policies need disjoint rings.
        let mut rings: Vec<Fixture<G>> = Vec::new();
        for &n in ring_sizes {
            let fx = loop {
                let fx = Fixture::new(&pp, n, rng);
                let clash = rings
                    .iter()
                    .any(|r| fx.ring.members().iter().any(|pk| r.ring.contains(pk)));
                if !clash {
                    break fx;
                }
            };
            rings.push(fx);
        }
        let individual = with_individual.then(|| IndividualKeyPair::<G>::generate(rng));
        let policy = Policy {
            rings: rings
                .iter()
                .map(|f| PolicyRing {
                    opk: f.opener.opk,
                    members: f.ring.members().to_vec(),
                })
                .collect(),
            individuals: individual.iter().map(|k| k.vk.clone()).collect(),
        };
        let wallet = chain.deploy_contract_wallet(policy, rule, b"salt").unwrap();
        Scenario {
            chain,
            pp,
            rings,
            individual,
            wallet,
        }
    }

    pub fn nonce(&self) -> u64 {
        Ledger::wallet(&self.chain, &self.wallet).unwrap().nonce
    }

    pub fn request(&self, payload: &[u8]) -> TransactionRequest {
        TransactionRequest {
            chain_id: CHAIN_ID,
            wallet: self.wallet,
            nonce: self.nonce(),
            payload: payload.to_vec(),
        }
    }

    /// A complete bundle; ring `i` is signed by member `signers[i]`.
    pub fn bundle<R: RngCore + CryptoRng>(
        &self,
        req: &TransactionRequest,
        signers: &[usize],
        rng: &mut R,
    ) -> AuthorizationBundle<G> {
        let msg = canonical_message(req);
        let mut bundle = AuthorizationBundle::default();
        for (i, (fx, &l)) in self.rings.iter().zip(signers).enumerate() {
            let sig = rsign(
                &self.pp,
                &fx.opener.opk,
                &msg,
                &fx.ring,
                &fx.users[l].sk,
                rng,
            )
            .unwrap();
            bundle.set_ring_sig(i, sig);
        }
        if let Some(k) = &self.individual {
            bundle.set_ind_sig(0, individual_sign(&k.sigk, &msg, rng));
        }
        bundle
    }
}
