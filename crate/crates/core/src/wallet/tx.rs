use serde::{Deserialize, Serialize};

use super::address::Address;
use super::individual::{IndividualScheme, IndividualSig};
use crate::ars::{Message, RingSignature};
use crate::group::{Group, Transcript};

/// The body every signature in a bundle signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransactionRequest {
    pub chain_id: u64,
    pub wallet: Address,
    pub nonce: u64,
    #[serde(with = "super::hexbytes")]
    pub payload: Vec<u8>,
}

/// Length-prefixed encoding of `(chain_id, wallet, nonce, payload)`.
pub fn canonical_message(req: &TransactionRequest) -> Message {
    let mut t = Transcript::new();
    t.append_u64(req.chain_id)
        .append(req.wallet.as_bytes())
        .append_u64(req.nonce)
        .append(&req.payload);
    Message(t.as_bytes().to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RingSigEntry<G: Group> {
    /// Position of the ring in the wallet policy.
    pub ring: usize,
    pub sig: RingSignature<G>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct IndSigEntry<G: IndividualScheme> {
    /// Position of the verification key in the wallet policy.
    pub vk: usize,
    pub sig: IndividualSig<G>,
}

/// Every signature a collector gathered for one transaction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AuthorizationBundle<G: IndividualScheme> {
    #[serde(default)]
    pub ring_sigs: Vec<RingSigEntry<G>>,
    #[serde(default)]
    pub ind_sigs: Vec<IndSigEntry<G>>,
}

impl<G: IndividualScheme> Default for AuthorizationBundle<G> {
    fn default() -> Self {
        AuthorizationBundle {
            ring_sigs: Vec::new(),
            ind_sigs: Vec::new(),
        }
    }
}

impl<G: IndividualScheme> AuthorizationBundle<G> {
    /// Adds or replaces the signature for ring `ring`.
    pub fn set_ring_sig(&mut self, ring: usize, sig: RingSignature<G>) {
        self.ring_sigs.retain(|e| e.ring != ring);
        self.ring_sigs.push(RingSigEntry { ring, sig });
        self.ring_sigs.sort_by_key(|e| e.ring);
    }

    /// Adds or replaces the signature for individual `vk`.
    pub fn set_ind_sig(&mut self, vk: usize, sig: IndividualSig<G>) {
        self.ind_sigs.retain(|e| e.vk != vk);
        self.ind_sigs.push(IndSigEntry { vk, sig });
        self.ind_sigs.sort_by_key(|e| e.vk);
    }
}

/// The transaction file: request fields and collected signatures in one
/// flat JSON object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TransactionData<G: IndividualScheme> {
    #[serde(flatten)]
    pub request: TransactionRequest,
    #[serde(flatten)]
    pub bundle: AuthorizationBundle<G>,
}

impl<G: IndividualScheme> TransactionData<G> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transaction serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Result of an accepted submission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Receipt {
    pub tx_index: u64,
    pub exponentiations: u64,
    pub hash_calls: u64,
}

/// `(exponentiations, hash_calls)` spent verifying the bundle.
pub fn meter_read(receipt: &Receipt) -> (u64, u64) {
    (receipt.exponentiations, receipt.hash_calls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ToyGroup;
    use crate::wallet::derive_address;

    fn req() -> TransactionRequest {
        TransactionRequest {
            chain_id: 1,
            wallet: derive_address(b"w"),
            nonce: 0,
            payload: vec![1, 2, 3],
        }
    }

    #[test]
    fn message_binds_every_field() {
        let base = canonical_message(&req());
        assert_eq!(base, canonical_message(&req()));
        assert_ne!(
            base,
            canonical_message(&TransactionRequest { nonce: 1, ..req() })
        );
        assert_ne!(
            base,
            canonical_message(&TransactionRequest {
                chain_id: 2,
                ..req()
            })
        );
        assert_ne!(
            base,
            canonical_message(&TransactionRequest {
                wallet: derive_address(b"v"),
                ..req()
            })
        );
        assert_ne!(
            base,
            canonical_message(&TransactionRequest {
                payload: vec![1, 2],
                ..req()
            })
        );
    }

    #[test]
    fn transaction_file_shape() {
        let data = TransactionData::<ToyGroup> {
            request: req(),
            bundle: AuthorizationBundle::default(),
        };
        let value: serde_json::Value = serde_json::from_str(&data.to_json()).unwrap();
        assert_eq!(value["chain_id"], 1);
        assert_eq!(value["nonce"], 0);
        assert_eq!(value["payload"], "010203");
        assert_eq!(value["wallet"].as_str().unwrap().len(), 40);
        assert!(value["ring_sigs"].as_array().unwrap().is_empty());
        assert!(value["ind_sigs"].as_array().unwrap().is_empty());

        let bare = r#"{"chain_id":1,"wallet":"00000000000000000000000000000000000000ff","nonce":3,"payload":""}"#;
        let parsed = TransactionData::<ToyGroup>::from_json(bare).unwrap();
        assert_eq!(parsed.request.nonce, 3);
        assert!(parsed.bundle.ring_sigs.is_empty());
    }

    #[test]
    fn receipt_shape() {
        let r = Receipt {
            tx_index: 0,
            exponentiations: 24,
            hash_calls: 1,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"tx_index":0,"exponentiations":24,"hash_calls":1}"#
        );
        assert_eq!(meter_read(&r), (24, 1));
    }
}
