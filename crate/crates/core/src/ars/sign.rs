use rand::{CryptoRng, RngCore};

use super::{ArsError, Message, PublicParams, Reader, Ring, MAX_RING_SIZE, SIGN_TAG};
use crate::group::{Element, Group, Scalar, Transcript};
use crate::meter::CostMeter;

/// One OR-proof branch: commitments, challenge share and responses for
/// ring member `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch<G: Group> {
    pub a: Element<G>,
    pub b: Element<G>,
    pub d: Element<G>,
    pub c: Scalar<G>,
    pub z_r: Scalar<G>,
    pub z_s: Scalar<G>,
}

impl<G: Group> Branch<G> {
    pub fn encoded_len() -> usize {
        3 * G::ELEMENT_LEN + 3 * G::SCALAR_LEN
    }
}

/// A ring signature: ciphertext `(u, v)` of the signer's key and one proof
/// branch per ring member, in ring order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSignature<G: Group> {
    pub u: Element<G>,
    pub v: Element<G>,
    pub branches: Vec<Branch<G>>,
}

impl<G: Group> RingSignature<G> {
    /// `u || v || N (u32 BE) || N * (a || b || d || c || z_r || z_s)`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(
            2 * G::ELEMENT_LEN + 4 + self.branches.len() * Branch::<G>::encoded_len(),
        );
        out.extend(self.u.to_bytes());
        out.extend(self.v.to_bytes());
        out.extend((self.branches.len() as u32).to_be_bytes());
        for br in &self.branches {
            out.extend(br.a.to_bytes());
            out.extend(br.b.to_bytes());
            out.extend(br.d.to_bytes());
            out.extend(br.c.to_bytes());
            out.extend(br.z_r.to_bytes());
            out.extend(br.z_s.to_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ArsError> {
        let mut r = Reader::new(bytes, "ring signature");
        let u = r.element()?;
        let v = r.element()?;
        let n = r.u32()? as usize;
        if n == 0 || n > MAX_RING_SIZE || r.remaining() != n * Branch::<G>::encoded_len() {
            return Err(ArsError::Malformed("ring signature"));
        }
        let mut branches = Vec::with_capacity(n);
        for _ in 0..n {
            branches.push(Branch {
                a: r.element()?,
                b: r.element()?,
                d: r.element()?,
                c: r.scalar()?,
                z_r: r.scalar()?,
                z_s: r.scalar()?,
            });
        }
        r.finish()?;
        Ok(RingSignature { u, v, branches })
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str) -> Result<Self, ArsError> {
        let bytes = hex::decode(s.strip_prefix("0x").unwrap_or(s))
            .map_err(|_| ArsError::Malformed("ring signature"))?;
        Self::from_bytes(&bytes)
    }
}

impl<G: Group> serde::Serialize for RingSignature<G> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de, G: Group> serde::Deserialize<'de> for RingSignature<G> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        RingSignature::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// All randomness consumed by one signing operation.
///
/// `simulated` holds `(c_i, z_r_i, z_s_i)` for every branch other than the
/// signer's, in ring order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigningNonces<G: Group> {
    pub r: Scalar<G>,
    pub alpha: Scalar<G>,
    pub beta: Scalar<G>,
    pub simulated: Vec<(Scalar<G>, Scalar<G>, Scalar<G>)>,
}

impl<G: Group> SigningNonces<G> {
    pub fn random<R: RngCore + CryptoRng>(ring_size: usize, rng: &mut R) -> Self {
        SigningNonces {
            r: Scalar::random(rng),
            alpha: Scalar::random(rng),
            beta: Scalar::random(rng),
            simulated: (1..ring_size)
                .map(|_| {
                    (
                        Scalar::random(rng),
                        Scalar::random(rng),
                        Scalar::random(rng),
                    )
                })
                .collect(),
        }
    }
}

/// Fiat-Shamir challenge over `(pp, opk, R, M, u, v, a_1, b_1, d_1, ...)`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sign_challenge<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    u: &Element<G>,
    v: &Element<G>,
    commitments: impl Iterator<Item = (Element<G>, Element<G>, Element<G>)>,
    meter: &mut CostMeter,
) -> Scalar<G> {
    let mut t = Transcript::new();
    pp.bind(&mut t);
    t.append_element(opk);
    ring.bind(&mut t);
    t.append(msg.as_bytes()).append_element(u).append_element(v);
    for (a, b, d) in commitments {
        t.append_element(&a).append_element(&b).append_element(&d);
    }
    meter.hash(SIGN_TAG, t.as_bytes())
}

/// Signs with caller-supplied randomness. [`rsign`] draws it from an RNG.
pub fn rsign_with_nonces<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sk: &Scalar<G>,
    nonces: &SigningNonces<G>,
    meter: &mut CostMeter,
) -> Result<RingSignature<G>, ArsError> {
    let g = pp.generator();
    let pk = meter.exp(&g, sk);
    let signer = ring.position(&pk).ok_or(ArsError::SignerNotInRing)?;
    if nonces.simulated.len() + 1 != ring.len() {
        return Err(ArsError::NonceCount {
            expected: ring.len() - 1,
            got: nonces.simulated.len(),
        });
    }

    let u = meter.exp(&g, &nonces.r);
    let v = pk * meter.exp(opk, &nonces.r);

    let mut simulated = nonces.simulated.iter();
    let mut branches = Vec::with_capacity(ring.len());
    for (i, pk_i) in ring.members().iter().enumerate() {
        if i == signer {
            branches.push(Branch {
                a: meter.exp(&g, &nonces.alpha),
                b: meter.exp(opk, &nonces.alpha),
                d: meter.exp(&g, &nonces.beta),
                c: Scalar::zero(),
                z_r: Scalar::zero(),
                z_s: Scalar::zero(),
            });
        } else {
            let &(c, z_r, z_s) = simulated.next().expect("length checked above");
            let neg_c = -c;
            branches.push(Branch {
                a: meter.exp(&g, &z_r) * meter.exp(&u, &neg_c),
                b: meter.exp(opk, &z_r) * meter.exp(&(v / *pk_i), &neg_c),
                d: meter.exp(&g, &z_s) * meter.exp(pk_i, &neg_c),
                c,
                z_r,
                z_s,
            });
        }
    }

    let x = sign_challenge(
        pp,
        opk,
        msg,
        ring,
        &u,
        &v,
        branches.iter().map(|br| (br.a, br.b, br.d)),
        meter,
    );
    let others: Scalar<G> = branches
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != signer)
        .map(|(_, br)| br.c)
        .sum();
    let c = x - others;
    let own = &mut branches[signer];
    own.c = c;
    own.z_r = nonces.alpha + c * nonces.r;
    own.z_s = nonces.beta + c * *sk;

    Ok(RingSignature { u, v, branches })
}

/// RSign: signs `msg` on behalf of `ring`, encrypting the signer's key to
/// `opk`. The key `g^sk` must be a ring member.
pub fn rsign<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sk: &Scalar<G>,
    rng: &mut R,
) -> Result<RingSignature<G>, ArsError> {
    let nonces = SigningNonces::random(ring.len(), rng);
    rsign_with_nonces(pp, opk, msg, ring, sk, &nonces, &mut CostMeter::new())
}

/// RVerify.
pub fn rverify<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
) -> bool {
    rverify_metered(pp, opk, msg, ring, sig, &mut CostMeter::new())
}

/// RVerify, charging `meter`. A structurally well-formed signature always
/// costs exactly `6N` exponentiations and one hash, whether or not it
/// verifies and whichever member signed it.
pub fn rverify_metered<G: Group>(
    pp: &PublicParams<G>,
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
    meter: &mut CostMeter,
) -> bool {
    if sig.branches.len() != ring.len() {
        return false;
    }
    let g = pp.generator();
    let x = sign_challenge(
        pp,
        opk,
        msg,
        ring,
        &sig.u,
        &sig.v,
        sig.branches.iter().map(|br| (br.a, br.b, br.d)),
        meter,
    );
    let challenge_ok = sig.branches.iter().map(|br| br.c).sum::<Scalar<G>>() == x;

    let mut branches_ok = true;
    for (br, pk_i) in sig.branches.iter().zip(ring.members()) {
        let enc_ok = meter.exp(&g, &br.z_r) == br.a * meter.exp(&sig.u, &br.c);
        let dleq_ok = meter.exp(opk, &br.z_r) == br.b * meter.exp(&(sig.v / *pk_i), &br.c);
        let key_ok = meter.exp(&g, &br.z_s) == br.d * meter.exp(pk_i, &br.c);
        branches_ok &= enc_ok & dleq_ok & key_ok;
    }
    challenge_ok && branches_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ars::{OpenerKeyPair, UserKeyPair};
    use crate::group::{Secp256k1, ToyGroup};
    use rand::rngs::OsRng;

    fn fixture<G: Group>(
        n: usize,
    ) -> (
        PublicParams<G>,
        OpenerKeyPair<G>,
        Vec<UserKeyPair<G>>,
        Ring<G>,
    ) {
        let pp = PublicParams::<G>::new().unwrap();
        let opener = OpenerKeyPair::generate(&pp, &mut OsRng);
        let mut users: Vec<UserKeyPair<G>> = Vec::new();
        while users.len() < n {
            let k = UserKeyPair::generate(&pp, &mut OsRng);
            if users.iter().all(|u| u.pk != k.pk) {
                users.push(k);
            }
        }
        let ring = Ring::new(users.iter().map(|u| u.pk).collect()).unwrap();
        (pp, opener, users, ring)
    }

    #[test]
    fn honest_signature_verifies() {
        let (pp, opener, users, ring) = fixture::<Secp256k1>(4);
        let msg = Message::from(&b"transfer"[..]);
        for user in &users {
            let sig = rsign(&pp, &opener.opk, &msg, &ring, &user.sk, &mut OsRng).unwrap();
            assert!(rverify(&pp, &opener.opk, &msg, &ring, &sig));
        }
    }

    #[test]
    fn signer_outside_ring_is_rejected() {
        let (pp, opener, _, ring) = fixture::<ToyGroup>(3);
        let outsider = loop {
            let k = UserKeyPair::generate(&pp, &mut OsRng);
            if !ring.contains(&k.pk) {
                break k;
            }
        };
        let msg = Message::from(&b"m"[..]);
        assert_eq!(
            rsign(&pp, &opener.opk, &msg, &ring, &outsider.sk, &mut OsRng),
            Err(ArsError::SignerNotInRing)
        );
    }

    #[test]
    fn incremented_challenge_share_is_rejected() {
        let (pp, opener, users, ring) = fixture::<Secp256k1>(4);
        let msg = Message::from(&b"m"[..]);
        let mut sig = rsign(&pp, &opener.opk, &msg, &ring, &users[2].sk, &mut OsRng).unwrap();
        sig.branches[1].c = sig.branches[1].c + Scalar::one();
        assert!(!rverify(&pp, &opener.opk, &msg, &ring, &sig));
    }

    #[test]
    fn other_message_is_rejected() {
        let (pp, opener, users, ring) = fixture::<Secp256k1>(4);
        let msg = Message::from(&b"m"[..]);
        let sig = rsign(&pp, &opener.opk, &msg, &ring, &users[0].sk, &mut OsRng).unwrap();
        assert!(!rverify(
            &pp,
            &opener.opk,
            &Message::from(&b"m'"[..]),
            &ring,
            &sig
        ));
    }

    #[test]
    fn wrong_nonce_count_is_rejected() {
        let (pp, opener, users, ring) = fixture::<ToyGroup>(3);
        let nonces = SigningNonces::random(2, &mut OsRng);
        let res = rsign_with_nonces(
            &pp,
            &opener.opk,
            &Message::default(),
            &ring,
            &users[0].sk,
            &nonces,
            &mut CostMeter::new(),
        );
        assert_eq!(
            res,
            Err(ArsError::NonceCount {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn verification_cost_is_six_per_member() {
        for n in [1usize, 4, 10] {
            let (pp, opener, users, ring) = fixture::<Secp256k1>(n);
            let msg = Message::from(&b"m"[..]);
            let sig = rsign(&pp, &opener.opk, &msg, &ring, &users[0].sk, &mut OsRng).unwrap();
            let mut meter = CostMeter::new();
            assert!(rverify_metered(
                &pp,
                &opener.opk,
                &msg,
                &ring,
                &sig,
                &mut meter
            ));
            assert_eq!(meter.exponentiations, 6 * n as u64);
            assert_eq!(meter.hash_calls, 1);
        }
    }

    #[test]
    fn decoding_rejects_truncation_and_trailing_bytes() {
        let (pp, opener, users, ring) = fixture::<ToyGroup>(2);
        let sig = rsign(
            &pp,
            &opener.opk,
            &Message::default(),
            &ring,
            &users[1].sk,
            &mut OsRng,
        )
        .unwrap();
        let bytes = sig.to_bytes();
        assert_eq!(RingSignature::<ToyGroup>::from_bytes(&bytes).unwrap(), sig);
        assert!(RingSignature::<ToyGroup>::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let mut longer = bytes.clone();
        longer.push(0);
        assert!(RingSignature::<ToyGroup>::from_bytes(&longer).is_err());
        let mut zero_branches = bytes[..8].to_vec();
        zero_branches.extend([0, 0, 0, 0]);
        assert!(RingSignature::<ToyGroup>::from_bytes(&zero_branches).is_err());
    }
}
