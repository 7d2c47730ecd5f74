//! Operation counting, the stand-in for on-chain gas.

use serde::{Deserialize, Serialize};

use crate::group::{hash_to_scalar, Element, Group, Scalar};

/// Counts of group exponentiations and hash-to-scalar invocations.
///
/// Group multiplications, inversions and encodings are free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CostMeter {
    pub exponentiations: u64,
    pub hash_calls: u64,
}

impl CostMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    pub fn exp<G: Group>(&mut self, base: &Element<G>, e: &Scalar<G>) -> Element<G> {
        self.exponentiations += 1;
        base.pow(e)
    }

    pub fn hash<G: Group>(&mut self, domain_tag: &[u8], transcript: &[u8]) -> Scalar<G> {
        self.hash_calls += 1;
        hash_to_scalar(domain_tag, transcript)
    }

    /// Charges operations performed by code that cannot be instrumented
    /// directly, such as an external signature library.
    pub fn charge(&mut self, exponentiations: u64, hash_calls: u64) {
        self.exponentiations += exponentiations;
        self.hash_calls += hash_calls;
    }

    pub fn absorb(&mut self, other: &CostMeter) {
        self.charge(other.exponentiations, other.hash_calls);
    }
}
