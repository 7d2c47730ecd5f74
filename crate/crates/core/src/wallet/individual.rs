//! Conventional signatures for individually named policy members.
//!
//! Production wallets use ECDSA over secp256k1. Toy-group wallets use a
//! Schnorr signature over the toy group so that whole scenarios stay inside
//! one brute-forceable group.

use std::fmt;

use k256::ecdsa::signature::{Signer, Verifier};
use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::group::{Element, Group, GroupError, Scalar, Secp256k1, ToyGroup, Transcript};
use crate::meter::CostMeter;

const SCHNORR_TAG: &[u8] = b"acwallet/schnorr/v1";

/// A conventional (non-ring) signature scheme paired with a group.
pub trait IndividualScheme: Group {
    type SigningKey: Clone + Send + Sync;
    type VerifyingKey: Clone + Eq + fmt::Debug + Send + Sync;
    type Signature: Clone + Eq + fmt::Debug + Send + Sync;

    const SCHEME_NAME: &'static str;

    fn generate_signing_key<R: RngCore + CryptoRng>(rng: &mut R) -> Self::SigningKey;
    fn verifying_key(sigk: &Self::SigningKey) -> Self::VerifyingKey;
    fn sign_bytes<R: RngCore + CryptoRng>(
        sigk: &Self::SigningKey,
        msg: &[u8],
        rng: &mut R,
    ) -> Self::Signature;
    fn verify_bytes(
        vk: &Self::VerifyingKey,
        msg: &[u8],
        sig: &Self::Signature,
        meter: &mut CostMeter,
    ) -> bool;

    fn encode_verifying_key(vk: &Self::VerifyingKey) -> Vec<u8>;
    fn decode_verifying_key(bytes: &[u8]) -> Result<Self::VerifyingKey, GroupError>;
    fn encode_signature(sig: &Self::Signature) -> Vec<u8>;
    fn decode_signature(bytes: &[u8]) -> Result<Self::Signature, GroupError>;
    fn encode_signing_key(sigk: &Self::SigningKey) -> Vec<u8>;
    fn decode_signing_key(bytes: &[u8]) -> Result<Self::SigningKey, GroupError>;
}

/// Schnorr signature `(c, z)` with `c = H(vk, g^z * vk^-c, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchnorrSignature<G: Group> {
    pub c: Scalar<G>,
    pub z: Scalar<G>,
}

fn schnorr_challenge<G: Group>(
    vk: &Element<G>,
    commitment: &Element<G>,
    msg: &[u8],
    meter: &mut CostMeter,
) -> Scalar<G> {
    let mut t = Transcript::new();
    t.append_element(vk).append_element(commitment).append(msg);
    meter.hash(SCHNORR_TAG, t.as_bytes())
}

impl IndividualScheme for ToyGroup {
    type SigningKey = Scalar<ToyGroup>;
    type VerifyingKey = Element<ToyGroup>;
    type Signature = SchnorrSignature<ToyGroup>;

    const SCHEME_NAME: &'static str = "schnorr";

    fn generate_signing_key<R: RngCore + CryptoRng>(rng: &mut R) -> Self::SigningKey {
        Scalar::random(rng)
    }

    fn verifying_key(sigk: &Self::SigningKey) -> Self::VerifyingKey {
        Element::generator().pow(sigk)
    }

    fn sign_bytes<R: RngCore + CryptoRng>(
        sigk: &Self::SigningKey,
        msg: &[u8],
        rng: &mut R,
    ) -> Self::Signature {
        let k = Scalar::random(rng);
        let commitment = Element::generator().pow(&k);
        let vk = Self::verifying_key(sigk);
        let c = schnorr_challenge(&vk, &commitment, msg, &mut CostMeter::new());
        SchnorrSignature {
            c,
            z: k + c * *sigk,
        }
    }

    fn verify_bytes(
        vk: &Self::VerifyingKey,
        msg: &[u8],
        sig: &Self::Signature,
        meter: &mut CostMeter,
    ) -> bool {
        let commitment = meter.exp(&Element::generator(), &sig.z) * meter.exp(vk, &-sig.c);
        schnorr_challenge(vk, &commitment, msg, meter) == sig.c
    }

    fn encode_verifying_key(vk: &Self::VerifyingKey) -> Vec<u8> {
        vk.to_bytes()
    }

    fn decode_verifying_key(bytes: &[u8]) -> Result<Self::VerifyingKey, GroupError> {
        Element::from_bytes(bytes)
    }

    fn encode_signature(sig: &Self::Signature) -> Vec<u8> {
        let mut out = sig.c.to_bytes();
        out.extend(sig.z.to_bytes());
        out
    }

    fn decode_signature(bytes: &[u8]) -> Result<Self::Signature, GroupError> {
        if bytes.len() != 2 * Self::SCALAR_LEN {
            return Err(GroupError::MalformedEncoding);
        }
        let (c, z) = bytes.split_at(Self::SCALAR_LEN);
        Ok(SchnorrSignature {
            c: Scalar::from_bytes(c)?,
            z: Scalar::from_bytes(z)?,
        })
    }

    fn encode_signing_key(sigk: &Self::SigningKey) -> Vec<u8> {
        sigk.to_bytes()
    }

    fn decode_signing_key(bytes: &[u8]) -> Result<Self::SigningKey, GroupError> {
        Scalar::from_bytes(bytes)
    }
}

impl IndividualScheme for Secp256k1 {
    type SigningKey = k256::ecdsa::SigningKey;
    type VerifyingKey = k256::ecdsa::VerifyingKey;
    type Signature = k256::ecdsa::Signature;

    const SCHEME_NAME: &'static str = "ecdsa-secp256k1";

    fn generate_signing_key<R: RngCore + CryptoRng>(rng: &mut R) -> Self::SigningKey {
        k256::ecdsa::SigningKey::random(rng)
    }

    fn verifying_key(sigk: &Self::SigningKey) -> Self::VerifyingKey {
        *sigk.verifying_key()
    }

    /// RFC 6979 deterministic ECDSA over SHA-256; `rng` is unused.
    fn sign_bytes<R: RngCore + CryptoRng>(
        sigk: &Self::SigningKey,
        msg: &[u8],
        _rng: &mut R,
    ) -> Self::Signature {
        sigk.sign(msg)
    }

    /// Charged as two exponentiations (`u1 * G + u2 * Q`) and one hash.
    fn verify_bytes(
        vk: &Self::VerifyingKey,
        msg: &[u8],
        sig: &Self::Signature,
        meter: &mut CostMeter,
    ) -> bool {
        meter.charge(2, 1);
        vk.verify(msg, sig).is_ok()
    }

    fn encode_verifying_key(vk: &Self::VerifyingKey) -> Vec<u8> {
        vk.to_encoded_point(true).as_bytes().to_vec()
    }

    fn decode_verifying_key(bytes: &[u8]) -> Result<Self::VerifyingKey, GroupError> {
        if bytes.len() != Self::ELEMENT_LEN {
            return Err(GroupError::MalformedEncoding);
        }
        k256::ecdsa::VerifyingKey::from_sec1_bytes(bytes).map_err(|_| GroupError::MalformedEncoding)
    }

    fn encode_signature(sig: &Self::Signature) -> Vec<u8> {
        sig.to_bytes().to_vec()
    }

    fn decode_signature(bytes: &[u8]) -> Result<Self::Signature, GroupError> {
        if bytes.len() != 64 {
            return Err(GroupError::MalformedEncoding);
        }
        k256::ecdsa::Signature::from_slice(bytes).map_err(|_| GroupError::MalformedEncoding)
    }

    fn encode_signing_key(sigk: &Self::SigningKey) -> Vec<u8> {
        sigk.to_bytes().to_vec()
    }

    fn decode_signing_key(bytes: &[u8]) -> Result<Self::SigningKey, GroupError> {
        k256::ecdsa::SigningKey::from_slice(bytes).map_err(|_| GroupError::MalformedEncoding)
    }
}

macro_rules! hex_newtype {
    ($(#[$doc:meta])* $name:ident, $inner:ident, $encode:ident, $decode:ident) => {
        $(#[$doc])*
        pub struct $name<G: IndividualScheme>(pub G::$inner);

        impl<G: IndividualScheme> $name<G> {
            pub fn to_bytes(&self) -> Vec<u8> {
                G::$encode(&self.0)
            }

            pub fn from_bytes(bytes: &[u8]) -> Result<Self, GroupError> {
                G::$decode(bytes).map($name)
            }

            pub fn to_hex(&self) -> String {
                hex::encode(self.to_bytes())
            }

            pub fn from_hex(s: &str) -> Result<Self, GroupError> {
                let bytes = hex::decode(s.strip_prefix("0x").unwrap_or(s))
                    .map_err(|_| GroupError::MalformedEncoding)?;
                Self::from_bytes(&bytes)
            }
        }

        impl<G: IndividualScheme> Clone for $name<G> {
            fn clone(&self) -> Self {
                $name(self.0.clone())
            }
        }

        impl<G: IndividualScheme> Serialize for $name<G> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(&self.to_hex())
            }
        }

        impl<'de, G: IndividualScheme> Deserialize<'de> for $name<G> {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                Self::from_hex(&s).map_err(serde::de::Error::custom)
            }
        }
    };
}

hex_newtype!(
    /// Verification key `vk` of an individual policy member.
    IndividualVk,
    VerifyingKey,
    encode_verifying_key,
    decode_verifying_key
);
hex_newtype!(
    /// Conventional signature `sigma`.
    IndividualSig,
    Signature,
    encode_signature,
    decode_signature
);
hex_newtype!(
    /// Signing key `sigk`.
    IndividualSigningKey,
    SigningKey,
    encode_signing_key,
    decode_signing_key
);

impl<G: IndividualScheme> PartialEq for IndividualVk<G> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<G: IndividualScheme> Eq for IndividualVk<G> {}
impl<G: IndividualScheme> fmt::Debug for IndividualVk<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndividualVk({})", self.to_hex())
    }
}

impl<G: IndividualScheme> PartialEq for IndividualSig<G> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl<G: IndividualScheme> Eq for IndividualSig<G> {}
impl<G: IndividualScheme> fmt::Debug for IndividualSig<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndividualSig({})", self.to_hex())
    }
}

/// Key pair `(vk, sigk)` of an individual policy member.
#[derive(Clone, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct IndividualKeyPair<G: IndividualScheme> {
    pub vk: IndividualVk<G>,
    pub sigk: IndividualSigningKey<G>,
}

impl<G: IndividualScheme> IndividualKeyPair<G> {
    pub fn generate<R: RngCore + CryptoRng>(rng: &mut R) -> Self {
        Self::from_signing_key(G::generate_signing_key(rng))
    }

    pub fn from_signing_key(sigk: G::SigningKey) -> Self {
        IndividualKeyPair {
            vk: IndividualVk(G::verifying_key(&sigk)),
            sigk: IndividualSigningKey(sigk),
        }
    }

    /// Whether `vk` is the key derived from `sigk`.
    pub fn is_consistent(&self) -> bool {
        G::verifying_key(&self.sigk.0) == self.vk.0
    }
}

impl<G: IndividualScheme> fmt::Debug for IndividualKeyPair<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndividualKeyPair")
            .field("vk", &self.vk)
            .finish_non_exhaustive()
    }
}

pub fn individual_sign<G: IndividualScheme, R: RngCore + CryptoRng>(
    sigk: &IndividualSigningKey<G>,
    msg: &crate::ars::Message,
    rng: &mut R,
) -> IndividualSig<G> {
    IndividualSig(G::sign_bytes(&sigk.0, msg.as_bytes(), rng))
}

pub fn individual_verify<G: IndividualScheme>(
    vk: &IndividualVk<G>,
    msg: &crate::ars::Message,
    sig: &IndividualSig<G>,
) -> bool {
    G::verify_bytes(&vk.0, msg.as_bytes(), &sig.0, &mut CostMeter::new())
}

pub fn individual_verify_metered<G: IndividualScheme>(
    vk: &IndividualVk<G>,
    msg: &crate::ars::Message,
    sig: &IndividualSig<G>,
    meter: &mut CostMeter,
) -> bool {
    G::verify_bytes(&vk.0, msg.as_bytes(), &sig.0, meter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ars::Message;
    use rand::rngs::OsRng;

    fn sign_verify_contract<G: IndividualScheme>() {
        let key = IndividualKeyPair::<G>::generate(&mut OsRng);
        let other = IndividualKeyPair::<G>::generate(&mut OsRng);
        assert!(key.is_consistent());
        let msg = Message::from(&b"approve"[..]);
        let sig = individual_sign(&key.sigk, &msg, &mut OsRng);
        assert!(individual_verify(&key.vk, &msg, &sig));
        assert!(!individual_verify(
            &key.vk,
            &Message::from(&b"approve!"[..]),
            &sig
        ));
        assert!(!individual_verify(&other.vk, &msg, &sig));

        let vk = IndividualVk::<G>::from_hex(&key.vk.to_hex()).unwrap();
        assert_eq!(vk, key.vk);
        let sig2 = IndividualSig::<G>::from_bytes(&sig.to_bytes()).unwrap();
        assert_eq!(sig2, sig);
        let json = serde_json::to_string(&key).unwrap();
        let back: IndividualKeyPair<G> = serde_json::from_str(&json).unwrap();
        assert_eq!(back.vk, key.vk);
        assert!(back.is_consistent());
    }

    #[test]
    fn schnorr_contract() {
        sign_verify_contract::<ToyGroup>();
    }

    #[test]
    fn ecdsa_contract() {
        sign_verify_contract::<Secp256k1>();
    }

    #[test]
    fn verification_is_metered() {
        let key = IndividualKeyPair::<ToyGroup>::generate(&mut OsRng);
        let msg = Message::from(&b"m"[..]);
        let sig = individual_sign(&key.sigk, &msg, &mut OsRng);
        let mut meter = CostMeter::new();
        assert!(individual_verify_metered(&key.vk, &msg, &sig, &mut meter));
        assert_eq!(
            meter,
            CostMeter {
                exponentiations: 2,
                hash_calls: 1
            }
        );
    }

    #[test]
    fn malformed_encodings() {
        assert!(IndividualVk::<Secp256k1>::from_bytes(&[0u8; 33]).is_err());
        assert!(IndividualSig::<Secp256k1>::from_bytes(&[0u8; 64]).is_err());
        assert!(IndividualSig::<ToyGroup>::from_bytes(&[0u8; 3]).is_err());
    }
}
