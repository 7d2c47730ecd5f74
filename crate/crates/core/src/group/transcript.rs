use sha2::{Digest, Sha256};

use super::{Element, Group, Scalar};

/// Fiat-Shamir challenge derivation.
///
/// Computes `SHA-256(len(tag) || tag || transcript)` with a 4-byte big-endian
/// length and reduces the digest modulo `q`. The reduction is not
/// rejection-sampled: for secp256k1 the bias is below 2^-128, for the toy
/// group it is below 2^-240.
pub fn hash_to_scalar<G: Group>(domain_tag: &[u8], transcript: &[u8]) -> Scalar<G> {
    let mut hasher = Sha256::new();
    hasher.update((domain_tag.len() as u32).to_be_bytes());
    hasher.update(domain_tag);
    hasher.update(transcript);
    Scalar::from_digest(&hasher.finalize().into())
}

/// Byte transcript of length-prefixed fields.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    bytes: Vec<u8>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, field: &[u8]) -> &mut Self {
        self.bytes
            .extend_from_slice(&(field.len() as u32).to_be_bytes());
        self.bytes.extend_from_slice(field);
        self
    }

    pub fn append_u64(&mut self, v: u64) -> &mut Self {
        self.append(&v.to_be_bytes())
    }

    pub fn append_element<G: Group>(&mut self, e: &Element<G>) -> &mut Self {
        self.append(&e.to_bytes())
    }

    pub fn append_scalar<G: Group>(&mut self, s: &Scalar<G>) -> &mut Self {
        self.append(&s.to_bytes())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}
