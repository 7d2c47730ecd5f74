//! Prime-order groups used by the ring signature scheme.
//!
//! Two instantiations are provided: [`Secp256k1`], the production group, and
//! [`ToyGroup`], the order-1013 subgroup of quadratic residues modulo the safe
//! prime 2027. The toy group is small enough that discrete logarithms can be
//! found by exhaustive search, which makes it usable as a test oracle.
//!
//! Group elements are written multiplicatively throughout (`g^x`, `a * b`),
//! including for the elliptic-curve group.

mod prime;
mod secp;
mod toy;
mod transcript;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use secp::Secp256k1;
pub use toy::ToyGroup;
pub use transcript::{hash_to_scalar, Transcript};

pub(crate) use prime::is_probable_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown group identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("malformed encoding")]
    MalformedEncoding,
    #[error("element is not in the prime-order subgroup")]
    NotInSubgroup,
    #[error("invalid group description: {0}")]
    InvalidDescription(&'static str),
}

/// Names of the available group instantiations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupId {
    Production,
    Toy,
}

impl GroupId {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupId::Production => "production",
            GroupId::Toy => "toy",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "production" => Ok(GroupId::Production),
            "toy" => Ok(GroupId::Toy),
            other => Err(GroupError::UnknownIdentifier(other.to_owned())),
        }
    }
}

/// Raw arithmetic of a cyclic group of prime order `q` and its scalar field.
///
/// Implementors are zero-sized marker types. Code outside this module works
/// with the [`Element`] and [`Scalar`] wrappers instead of the raw associated
/// types.
pub trait Group: Copy + Default + fmt::Debug + Send + Sync + 'static {
    type Elem: Copy + Eq + fmt::Debug + Send + Sync;
    type Scal: Copy + Eq + fmt::Debug + Send + Sync;

    const ID: GroupId;
    /// Width of a canonical scalar encoding in bytes.
    const SCALAR_LEN: usize;
    /// Width of a canonical element encoding in bytes.
    const ELEMENT_LEN: usize;

    fn order() -> BigUint;
    /// Modulus of the field the group is defined over (the curve's base
    /// field, or `p` for the residue group).
    fn field_modulus() -> BigUint;

    fn generator() -> Self::Elem;
    fn identity() -> Self::Elem;
    fn combine(a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(a: &Self::Elem) -> Self::Elem;
    fn exp(base: &Self::Elem, e: &Self::Scal) -> Self::Elem;

    fn scalar_from_u64(v: u64) -> Self::Scal;
    fn scalar_add(a: &Self::Scal, b: &Self::Scal) -> Self::Scal;
    fn scalar_mul(a: &Self::Scal, b: &Self::Scal) -> Self::Scal;
    fn scalar_neg(a: &Self::Scal) -> Self::Scal;
    /// Uniform non-zero scalar.
    fn random_scalar<R: RngCore + CryptoRng>(rng: &mut R) -> Self::Scal;
    /// Reduces a 256-bit big-endian digest modulo the group order.
    fn scalar_from_digest(digest: &[u8; 32]) -> Self::Scal;

    fn encode_scalar(s: &Self::Scal) -> Vec<u8>;
    fn decode_scalar(bytes: &[u8]) -> Result<Self::Scal, GroupError>;
    fn encode_element(e: &Self::Elem) -> Vec<u8>;
    fn decode_element(bytes: &[u8]) -> Result<Self::Elem, GroupError>;
}

/// An element of the prime-order group `G`.
pub struct Element<G: Group>(G::Elem);

/// An integer modulo the order of `G`.
pub struct Scalar<G: Group>(G::Scal);

impl<G: Group> Element<G> {
    pub fn generator() -> Self {
        Element(G::generator())
    }

    pub fn identity() -> Self {
        Element(G::identity())
    }

    pub fn is_identity(&self) -> bool {
        self.0 == G::identity()
    }

    /// `self^e`. Code on metered paths goes through
    /// [`CostMeter::exp`](crate::meter::CostMeter::exp) instead.
    pub fn pow(&self, e: &Scalar<G>) -> Self {
        Element(G::exp(&self.0, &e.0))
    }

    pub fn invert(&self) -> Self {
        Element(G::invert(&self.0))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        G::encode_element(&self.0)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, GroupError> {
        G::decode_element(bytes).map(Element)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str) -> Result<Self, GroupError> {
        let bytes = decode_hex(s)?;
        Self::from_bytes(&bytes)
    }

    pub fn raw(&self) -> &G::Elem {
        &self.0
    }

    pub fn from_raw(raw: G::Elem) -> Self {
        Element(raw)
    }
}

impl<G: Group> Scalar<G> {
    pub fn zero() -> Self {
        Scalar(G::scalar_from_u64(0))
    }

    pub fn one() -> Self {
        Scalar(G::scalar_from_u64(1))
    }

    pub fn from_u64(v: u64) -> Self {
        Scalar(G::scalar_from_u64(v))
    }

    pub fn random<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        Scalar(G::random_scalar(rng))
    }

    pub fn from_digest(digest: &[u8; 32]) -> Self {
        Scalar(G::scalar_from_digest(digest))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == G::scalar_from_u64(0)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        G::encode_scalar(&self.0)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, GroupError> {
        G::decode_scalar(bytes).map(Scalar)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str) -> Result<Self, GroupError> {
        let bytes = decode_hex(s)?;
        Self::from_bytes(&bytes)
    }

    /// The scalar as an unsigned integer in `[0, q)`.
    pub fn to_biguint(&self) -> BigUint {
        BigUint::from_bytes_be(&self.to_bytes())
    }

    pub fn raw(&self) -> &G::Scal {
        &self.0
    }
}

fn decode_hex(s: &str) -> Result<Vec<u8>, GroupError> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    hex::decode(s).map_err(|_| GroupError::MalformedEncoding)
}

impl<G: Group> Clone for Element<G> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<G: Group> Copy for Element<G> {}
impl<G: Group> PartialEq for Element<G> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<G: Group> Eq for Element<G> {}
impl<G: Group> fmt::Debug for Element<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element<{}>({})", G::ID, self.to_hex())
    }
}

impl<G: Group> Clone for Scalar<G> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<G: Group> Copy for Scalar<G> {}
impl<G: Group> PartialEq for Scalar<G> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<G: Group> Eq for Scalar<G> {}
impl<G: Group> fmt::Debug for Scalar<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar<{}>({})", G::ID, self.to_hex())
    }
}

impl<G: Group> Mul for Element<G> {
    type Output = Element<G>;
    fn mul(self, rhs: Self) -> Self {
        Element(G::combine(&self.0, &rhs.0))
    }
}

impl<G: Group> Div for Element<G> {
    type Output = Element<G>;
    fn div(self, rhs: Self) -> Self {
        Element(G::combine(&self.0, &G::invert(&rhs.0)))
    }
}

impl<G: Group> Add for Scalar<G> {
    type Output = Scalar<G>;
    fn add(self, rhs: Self) -> Self {
        Scalar(G::scalar_add(&self.0, &rhs.0))
    }
}

impl<G: Group> Sub for Scalar<G> {
    type Output = Scalar<G>;
    fn sub(self, rhs: Self) -> Self {
        Scalar(G::scalar_add(&self.0, &G::scalar_neg(&rhs.0)))
    }
}

impl<G: Group> Mul for Scalar<G> {
    type Output = Scalar<G>;
    fn mul(self, rhs: Self) -> Self {
        Scalar(G::scalar_mul(&self.0, &rhs.0))
    }
}

impl<G: Group> Neg for Scalar<G> {
    type Output = Scalar<G>;
    fn neg(self) -> Self {
        Scalar(G::scalar_neg(&self.0))
    }
}

impl<G: Group> std::iter::Sum for Scalar<G> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, s| acc + s)
    }
}

impl<G: Group> Serialize for Element<G> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de, G: Group> Deserialize<'de> for Element<G> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Element::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

impl<G: Group> Serialize for Scalar<G> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de, G: Group> Deserialize<'de> for Scalar<G> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Validated public description of a group instantiation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescription {
    pub group_id: GroupId,
    pub order_q: BigUint,
    pub field_modulus: BigUint,
    /// Canonical encoding of the generator.
    pub generator_g: Vec<u8>,
}

impl GroupDescription {
    /// Builds and checks the description of `G`: the order and field modulus
    /// must pass a primality test, and the generator must have order exactly
    /// `q`.
    pub fn of<G: Group>() -> Result<Self, GroupError> {
        let q = G::order();
        if !is_probable_prime(&q) {
            return Err(GroupError::InvalidDescription("group order is not prime"));
        }
        if !is_probable_prime(&G::field_modulus()) {
            return Err(GroupError::InvalidDescription("field modulus is not prime"));
        }
        let g = Element::<G>::generator();
        if g.is_identity() {
            return Err(GroupError::InvalidDescription("generator is the identity"));
        }
        // g^(q-1) * g = g^q
        if !(g.pow(&-Scalar::one()) * g).is_identity() {
            return Err(GroupError::InvalidDescription("generator order is not q"));
        }
        Ok(GroupDescription {
            group_id: G::ID,
            order_q: q,
            field_modulus: G::field_modulus(),
            generator_g: g.to_bytes(),
        })
    }
}

/// Looks up and validates a group by identifier.
pub fn instantiate(group_id: &str) -> Result<GroupDescription, GroupError> {
    match group_id.parse::<GroupId>()? {
        GroupId::Production => GroupDescription::of::<Secp256k1>(),
        GroupId::Toy => GroupDescription::of::<ToyGroup>(),
    }
}
