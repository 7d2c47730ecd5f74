use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::individual::{IndividualScheme, IndividualVk};
use crate::ars::Ring;
use crate::group::{Element, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("policy requires no signatures")]
    EmptyPolicy,
    #[error("ring {0} is empty")]
    EmptyRing(usize),
    #[error("ring {0} lists a member twice")]
    DuplicateRingMembers(usize),
    #[error("rings {0} and {1} share a member")]
    OverlappingRings(usize, usize),
    #[error("individual verification key {0} is listed twice")]
    DuplicateIndividuals(usize),
}

/// A group of anonymous signers: a ring and the opener key its members
/// share.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PolicyRing<G: Group> {
    pub opk: Element<G>,
    pub members: Vec<Element<G>>,
}

/// Signatures a contract wallet requires: one ring signature per ring and
/// one conventional signature per individual key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Policy<G: IndividualScheme> {
    pub rings: Vec<PolicyRing<G>>,
    pub individuals: Vec<IndividualVk<G>>,
}

impl<G: IndividualScheme> Policy<G> {
    /// The `index`-th ring, or `None` if out of range or invalid.
    pub fn ring(&self, index: usize) -> Option<Ring<G>> {
        let entry = self.rings.get(index)?;
        Ring::new(entry.members.clone()).ok()
    }

    pub fn opener_key(&self, index: usize) -> Option<&Element<G>> {
        self.rings.get(index).map(|r| &r.opk)
    }

    /// Position of the ring that contains `pk`.
    pub fn ring_of(&self, pk: &Element<G>) -> Option<usize> {
        self.rings.iter().position(|r| r.members.contains(pk))
    }

    pub fn individual_index(&self, vk: &IndividualVk<G>) -> Option<usize> {
        self.individuals.iter().position(|i| i == vk)
    }

    /// Length-prefixed binary encoding used for address derivation:
    /// `u32 #rings`, then per ring `opk || u32 #members || members`, then
    /// `u32 #individuals` and per key `u32 len || vk`.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend((self.rings.len() as u32).to_be_bytes());
        for ring in &self.rings {
            out.extend(ring.opk.to_bytes());
            out.extend((ring.members.len() as u32).to_be_bytes());
            for pk in &ring.members {
                out.extend(pk.to_bytes());
            }
        }
        out.extend((self.individuals.len() as u32).to_be_bytes());
        for vk in &self.individuals {
            let bytes = vk.to_bytes();
            out.extend((bytes.len() as u32).to_be_bytes());
            out.extend(bytes);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("policy serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Checks every structural requirement on a policy: at least one required
/// signature, non-empty rings without repeated members, pairwise disjoint
/// rings and distinct individual keys.
pub fn validate_policy<G: IndividualScheme>(policy: &Policy<G>) -> Result<(), PolicyError> {
    if policy.rings.is_empty() && policy.individuals.is_empty() {
        return Err(PolicyError::EmptyPolicy);
    }

    let mut owner: std::collections::HashMap<Vec<u8>, usize> = std::collections::HashMap::new();
    for (i, ring) in policy.rings.iter().enumerate() {
        if ring.members.is_empty() {
            return Err(PolicyError::EmptyRing(i));
        }
        let mut local = HashSet::new();
        for pk in &ring.members {
            let key = pk.to_bytes();
            if !local.insert(key.clone()) {
                return Err(PolicyError::DuplicateRingMembers(i));
            }
            if let Some(&j) = owner.get(&key) {
                return Err(PolicyError::OverlappingRings(j, i));
            }
            owner.insert(key, i);
        }
    }

    let mut seen = HashSet::new();
    for (j, vk) in policy.individuals.iter().enumerate() {
        if !seen.insert(vk.to_bytes()) {
            return Err(PolicyError::DuplicateIndividuals(j));
        }
    }
    Ok(())
}
