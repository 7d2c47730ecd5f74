//! Accountable ring signatures.
//!
//! A signature on `M` for ring `R = (pk_1, ..., pk_N)` under opener key `opk`
//! consists of an ElGamal encryption `(u, v) = (g^r, pk_l * opk^r)` of the
//! signer's key and a non-interactive OR-proof that for some `i`:
//!
//! ```text
//! u = g^r,   v / pk_i = opk^r,   pk_i = g^sk
//! ```
//!
//! with the witnesses `(r, sk)` known. Each branch carries commitments
//! `(a_i, b_i, d_i)`, a challenge share `c_i` and responses `(z_r_i, z_s_i)`;
//! the shares sum to the Fiat-Shamir challenge of the whole transcript. The
//! verifier checks, for every branch,
//!
//! ```text
//! g^z_r   = a_i * u^c_i
//! opk^z_r = b_i * (v / pk_i)^c_i
//! g^z_s   = d_i * pk_i^c_i
//! ```
//!
//! which is six exponentiations per ring member.
//!
//! Whoever holds `osk` decrypts `pk = v / u^osk` and proves equality of the
//! discrete logarithms `log_g opk = log_u (v / pk)` (a Chaum-Pedersen proof).
//! Proofs and signatures are both bound to the public parameters, the opener
//! key, the ring (in order) and the message.

mod keys;
mod open;
mod sign;

use std::marker::PhantomData;

use thiserror::Error;

use crate::group::{Element, Group, GroupDescription, GroupError, GroupId, Transcript};

pub use keys::{OpenerKeyPair, UserKeyPair};
pub use open::{
    judge, judge_metered, open, open_metered, prove_opening, OpenFailure, OpeningProof,
};
pub use sign::{
    rsign, rsign_with_nonces, rverify, rverify_metered, Branch, RingSignature, SigningNonces,
};

pub const SCHEME_VERSION: u32 = 1;

/// Largest ring accepted by the decoders.
pub const MAX_RING_SIZE: usize = 1 << 12;

pub(crate) const SIGN_TAG: &[u8] = b"acwallet/ars/sign/v1";
pub(crate) const OPEN_TAG: &[u8] = b"acwallet/ars/open/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("public parameters are for group `{found}`, expected `{expected}`")]
    GroupMismatch { expected: GroupId, found: GroupId },
    #[error("signer is not a member of the ring")]
    SignerNotInRing,
    #[error("ring contains duplicate members")]
    DuplicateRingMembers,
    #[error("ring is empty")]
    EmptyRing,
    #[error("ring has {0} members, more than the supported maximum")]
    RingTooLarge(usize),
    #[error("nonces cover {got} simulated branches, ring needs {expected}")]
    NonceCount { expected: usize, got: usize },
    #[error("malformed {0} encoding")]
    Malformed(&'static str),
}

/// Public parameters `pp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicParams<G: Group> {
    pub group: GroupDescription,
    pub scheme_version: u32,
    _group: PhantomData<G>,
}

impl<G: Group> PublicParams<G> {
    /// Parameters for `G` at the current scheme version.
    pub fn new() -> Result<Self, ArsError> {
        Ok(PublicParams {
            group: GroupDescription::of::<G>()?,
            scheme_version: SCHEME_VERSION,
            _group: PhantomData,
        })
    }

    pub fn generator(&self) -> Element<G> {
        Element::generator()
    }

    pub(crate) fn bind(&self, t: &mut Transcript) {
        t.append(self.group.group_id.as_str().as_bytes())
            .append(&self.group.generator_g)
            .append(&self.scheme_version.to_be_bytes());
    }
}

/// Setup: parameters for the group named `group_id`, which must be the
/// group `G` the caller is instantiated over.
pub fn setup<G: Group>(group_id: &str) -> Result<PublicParams<G>, ArsError> {
    let id: GroupId = group_id.parse()?;
    if id != G::ID {
        return Err(ArsError::GroupMismatch {
            expected: G::ID,
            found: id,
        });
    }
    PublicParams::new()
}

/// A message to be signed. Opaque bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Message(pub Vec<u8>);

impl Message {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl From<&[u8]> for Message {
    fn from(bytes: &[u8]) -> Self {
        Message(bytes.to_vec())
    }
}

impl From<Vec<u8>> for Message {
    fn from(bytes: Vec<u8>) -> Self {
        Message(bytes)
    }
}

/// An ordered list of distinct user public keys.
///
/// Order is significant: two rings with the same members in different
/// orders are different rings and signatures do not transfer between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring<G: Group> {
    members: Vec<Element<G>>,
}

impl<G: Group> Ring<G> {
    pub fn new(members: Vec<Element<G>>) -> Result<Self, ArsError> {
        if members.is_empty() {
            return Err(ArsError::EmptyRing);
        }
        if members.len() > MAX_RING_SIZE {
            return Err(ArsError::RingTooLarge(members.len()));
        }
        let mut encodings: Vec<Vec<u8>> = members.iter().map(Element::to_bytes).collect();
        encodings.sort_unstable();
        if encodings.windows(2).any(|w| w[0] == w[1]) {
            return Err(ArsError::DuplicateRingMembers);
        }
        Ok(Ring { members })
    }

    pub fn members(&self) -> &[Element<G>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, pk: &Element<G>) -> bool {
        self.members.contains(pk)
    }

    pub fn position(&self, pk: &Element<G>) -> Option<usize> {
        self.members.iter().position(|m| m == pk)
    }

    pub(crate) fn bind(&self, t: &mut Transcript) {
        t.append_u64(self.members.len() as u64);
        for pk in &self.members {
            t.append_element(pk);
        }
    }
}

impl<G: Group> TryFrom<Vec<Element<G>>> for Ring<G> {
    type Error = ArsError;

    fn try_from(members: Vec<Element<G>>) -> Result<Self, Self::Error> {
        Ring::new(members)
    }
}

impl<G: Group> From<Ring<G>> for Vec<Element<G>> {
    fn from(ring: Ring<G>) -> Self {
        ring.members
    }
}

impl<G: Group> serde::Serialize for Ring<G> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

impl<'de, G: Group> serde::Deserialize<'de> for Ring<G> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<Element<G>>::deserialize(deserializer)?;
        Ring::new(members).map_err(serde::de::Error::custom)
    }
}

/// Cursor over a fixed-layout byte encoding.
pub(crate) struct Reader<'a> {
    bytes: &'a [u8],
    what: &'static str,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(bytes: &'a [u8], what: &'static str) -> Self {
        Reader { bytes, what }
    }

    pub(crate) fn take(&mut self, n: usize) -> Result<&'a [u8], ArsError> {
        if self.bytes.len() < n {
            return Err(ArsError::Malformed(self.what));
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Ok(head)
    }

    pub(crate) fn element<G: Group>(&mut self) -> Result<Element<G>, ArsError> {
        Ok(Element::from_bytes(self.take(G::ELEMENT_LEN)?)?)
    }

    pub(crate) fn scalar<G: Group>(&mut self) -> Result<crate::group::Scalar<G>, ArsError> {
        Ok(crate::group::Scalar::from_bytes(self.take(G::SCALAR_LEN)?)?)
    }

    pub(crate) fn u32(&mut self) -> Result<u32, ArsError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    pub(crate) fn remaining(&self) -> usize {
        self.bytes.len()
    }

    pub(crate) fn finish(self) -> Result<(), ArsError> {
        if self.bytes.is_empty() {
            Ok(())
        } else {
            Err(ArsError::Malformed(self.what))
        }
    }
}
