//! Off-chain accountability.
//!
//! Any holder of a ring's opener secret can open a logged transaction and
//! hand the resulting [`AuditClaim`] to anyone; judging it needs only public
//! chain data. Claims never go on chain.

use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ars::{judge, open, OpenFailure, OpeningProof, Ring, RingSignature};
use crate::group::{Element, Scalar};
use crate::wallet::{canonical_message, IndividualScheme, Ledger};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("transaction {0} is not in the log")]
    TxOutOfRange(usize),
    #[error("ring {0} is not part of the wallet policy")]
    RingOutOfRange(usize),
    #[error("log entry {0} refers to a wallet that does not exist")]
    MissingWallet(usize),
    #[error("cannot open: {0}")]
    Open(#[from] OpenFailure),
}

impl AuditError {
    pub fn kind(&self) -> &'static str {
        match self {
            AuditError::TxOutOfRange(_) | AuditError::RingOutOfRange(_) => "out-of-range",
            AuditError::MissingWallet(_) => "bad-state",
            AuditError::Open(OpenFailure::InvalidSignature) => "invalid-signature",
            AuditError::Open(OpenFailure::Untraceable) => "untraceable",
        }
    }
}

/// Claim that ring member `pk` signed ring `ring` of transaction `tx_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AuditClaim<G: IndividualScheme> {
    pub tx_index: usize,
    #[serde(rename = "ring")]
    pub ring_index: usize,
    #[serde(rename = "pk")]
    pub pk_identified: Element<G>,
    pub proof: OpeningProof<G>,
}

impl<G: IndividualScheme> AuditClaim<G> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("claim serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

struct Located<G: IndividualScheme> {
    msg: crate::ars::Message,
    ring: Ring<G>,
    opk: Element<G>,
    sig: RingSignature<G>,
}

fn locate<G: IndividualScheme>(
    chain: &impl Ledger<G>,
    tx_index: usize,
    ring_index: usize,
) -> Result<Located<G>, AuditError> {
    let entry = chain
        .log_entry(tx_index)
        .ok_or(AuditError::TxOutOfRange(tx_index))?;
    let wallet = chain
        .wallet(&entry.request.wallet)
        .ok_or(AuditError::MissingWallet(tx_index))?;
    let ring = wallet
        .policy
        .ring(ring_index)
        .ok_or(AuditError::RingOutOfRange(ring_index))?;
    let opk = wallet.policy.rings[ring_index].opk;
    let sig = entry
        .bundle
        .ring_sigs
        .iter()
        .find(|e| e.ring == ring_index)
        .map(|e| e.sig.clone())
        .ok_or(AuditError::RingOutOfRange(ring_index))?;
    Ok(Located {
        msg: canonical_message(&entry.request),
        ring,
        opk,
        sig,
    })
}

/// Opens ring `ring_index` of logged transaction `tx_index` with `osk`.
pub fn open_transaction<G: IndividualScheme, R: RngCore + CryptoRng>(
    chain: &impl Ledger<G>,
    tx_index: usize,
    ring_index: usize,
    osk: &Scalar<G>,
    rng: &mut R,
) -> Result<AuditClaim<G>, AuditError> {
    let at = locate(chain, tx_index, ring_index)?;
    let proof = open(chain.params(), &at.msg, &at.ring, &at.sig, osk, rng)?;
    Ok(AuditClaim {
        tx_index,
        ring_index,
        pk_identified: proof.pk_identified,
        proof,
    })
}

/// Checks a claim against public chain data.
pub fn judge_transaction<G: IndividualScheme>(
    chain: &impl Ledger<G>,
    claim: &AuditClaim<G>,
) -> bool {
    let Ok(at) = locate(chain, claim.tx_index, claim.ring_index) else {
        return false;
    };
    judge(
        chain.params(),
        &at.opk,
        &at.msg,
        &at.ring,
        &at.sig,
        &claim.pk_identified,
        &claim.proof,
    )
}
