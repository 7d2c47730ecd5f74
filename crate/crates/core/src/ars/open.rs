use rand::{CryptoRng, RngCore};
use thiserror::Error;

use super::{
    rverify_metered, ArsError, Message, PublicParams, Reader, Ring, RingSignature, OPEN_TAG,
};
use crate::group::{Element, Group, Scalar, Transcript};
use crate::meter::CostMeter;

/// Why [`open`] returned no signer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OpenFailure {
    #[error("signature does not verify")]
    InvalidSignature,
    #[error("decrypted key is not a ring member")]
    Untraceable,
}

/// Proof `pi` that `pk_identified` is the plaintext of a signature's
/// ciphertext: a Chaum-Pedersen proof of `log_g opk = log_u (v / pk)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpeningProof<G: Group> {
    pub pk_identified: Element<G>,
    pub a1: Element<G>,
    pub a2: Element<G>,
    pub c: Scalar<G>,
    pub z: Scalar<G>,
}

impl<G: Group> OpeningProof<G> {
    pub fn encoded_len() -> usize {
        3 * G::ELEMENT_LEN + 2 * G::SCALAR_LEN
    }

    /// `pk || A1 || A2 || c || z`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::encoded_len());
        out.extend(self.pk_identified.to_bytes());
        out.extend(self.a1.to_bytes());
        out.extend(self.a2.to_bytes());
        out.extend(self.c.to_bytes());
        out.extend(self.z.to_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ArsError> {
        if bytes.len() != Self::encoded_len() {
            return Err(ArsError::Malformed("opening proof"));
        }
        let mut r = Reader::new(bytes, "opening proof");
        let proof = OpeningProof {
            pk_identified: r.element()?,
            a1: r.element()?,
            a2: r.element()?,
            c: r.scalar()?,
            z: r.scalar()?,
        };
        r.finish()?;
        Ok(proof)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str) -> Result<Self, ArsError> {
        let bytes = hex::decode(s.strip_prefix("0x").unwrap_or(s))
            .map_err(|_| ArsError::Malformed("opening proof"))?;
        Self::from_bytes(&bytes)
    }
}

impl<G: Group> serde::Serialize for OpeningProof<G> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de, G: Group> serde::Deserialize<'de> for OpeningProof<G> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        OpeningProof::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Challenge over `(pp, opk, M, R, sig, pk, A1, A2)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn open_challenge<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    pk: &Element<G>,
    a1: &Element<G>,
    a2: &Element<G>,
    meter: &mut CostMeter,
) -> Scalar<G> {
    let mut t = Transcript::new();
    pp.bind(&mut t);
    t.append_element(opk).append(msg.as_bytes());
    ring.bind(&mut t);
    t.append(&sig.to_bytes())
        .append_element(pk)
        .append_element(a1)
        .append_element(a2);
    meter.hash(OPEN_TAG, t.as_bytes())
}

/// Runs the Chaum-Pedersen prover for the claim "`pk` is the plaintext"
/// with `witness` as the discrete log and `alpha` as the commitment nonce.
/// Produces an accepting proof only when the claim is true and `witness` is
/// the opener secret.
#[allow(clippy::too_many_arguments)]
pub fn prove_opening<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    pk: Element<G>,
    witness: &Scalar<G>,
    alpha: &Scalar<G>,
    meter: &mut CostMeter,
) -> OpeningProof<G> {
    let a1 = meter.exp(&pp.generator(), alpha);
    let a2 = meter.exp(&sig.u, alpha);
    let c = open_challenge(pp, opk, msg, ring, sig, &pk, &a1, &a2, meter);
    OpeningProof {
        pk_identified: pk,
        a1,
        a2,
        c,
        z: *alpha + c * *witness,
    }
}

/// Open: decrypts the signer's key with `osk` and proves the decryption.
pub fn open<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    osk: &Scalar<G>,
    rng: &mut R,
) -> Result<OpeningProof<G>, OpenFailure> {
    open_metered(pp, msg, ring, sig, osk, rng, &mut CostMeter::new())
}

pub fn open_metered<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    osk: &Scalar<G>,
    rng: &mut R,
    meter: &mut CostMeter,
) -> Result<OpeningProof<G>, OpenFailure> {
    let opk = meter.exp(&pp.generator(), osk);
    if !rverify_metered(pp, &opk, msg, ring, sig, meter) {
        return Err(OpenFailure::InvalidSignature);
    }
    let pk = sig.v / meter.exp(&sig.u, osk);
    if !ring.contains(&pk) {
        return Err(OpenFailure::Untraceable);
    }
    let alpha = Scalar::random(rng);
    Ok(prove_opening(
        pp, &opk, msg, ring, sig, pk, osk, &alpha, meter,
    ))
}

/// Judge: accepts iff the signature verifies and `proof` shows that it was
/// produced with the secret key of `pk`.
pub fn judge<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    pk: &Element<G>,
    proof: &OpeningProof<G>,
) -> bool {
    judge_metered(pp, opk, msg, ring, sig, pk, proof, &mut CostMeter::new())
}

#[allow(clippy::too_many_arguments)]
pub fn judge_metered<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    pk: &Element<G>,
    proof: &OpeningProof<G>,
    meter: &mut CostMeter,
) -> bool {
    if !rverify_metered(pp, opk, msg, ring, sig, meter) {
        return false;
    }
    if !ring.contains(pk) || proof.pk_identified != *pk {
        return false;
    }
    let c = open_challenge(pp, opk, msg, ring, sig, pk, &proof.a1, &proof.a2, meter);
    if c != proof.c {
        return false;
    }
    let g = pp.generator();
    let first = meter.exp(&g, &proof.z) == proof.a1 * meter.exp(opk, &c);
    let second = meter.exp(&sig.u, &proof.z) == proof.a2 * meter.exp(&(sig.v / *pk), &c);
    first && second
}
