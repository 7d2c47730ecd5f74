use std::fmt;

use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};

use super::PublicParams;
use crate::group::{Element, Group, Scalar};

/// Opener key pair `(opk, osk)` with `opk = g^osk`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct OpenerKeyPair<G: Group> {
    pub opk: Element<G>,
    pub osk: Scalar<G>,
}

impl<G: Group> OpenerKeyPair<G> {
    pub fn generate<R: RngCore + CryptoRng>(pp: &PublicParams<G>, rng: &mut R) -> Self {
        Self::from_secret(pp, Scalar::random(rng))
    }

    pub fn from_secret(pp: &PublicParams<G>, osk: Scalar<G>) -> Self {
        OpenerKeyPair {
            opk: pp.generator().pow(&osk),
            osk,
        }
    }

    /// Whether `opk = g^osk` holds.
    pub fn is_consistent(&self) -> bool {
        Element::generator().pow(&self.osk) == self.opk
    }
}

impl<G: Group> fmt::Debug for OpenerKeyPair<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpenerKeyPair")
            .field("opk", &self.opk)
            .finish_non_exhaustive()
    }
}

/// User key pair `(pk, sk)` with `pk = g^sk`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct UserKeyPair<G: Group> {
    pub pk: Element<G>,
    pub sk: Scalar<G>,
}

impl<G: Group> UserKeyPair<G> {
    pub fn generate<R: RngCore + CryptoRng>(pp: &PublicParams<G>, rng: &mut R) -> Self {
        Self::from_secret(pp, Scalar::random(rng))
    }

    pub fn from_secret(pp: &PublicParams<G>, sk: Scalar<G>) -> Self {
        UserKeyPair {
            pk: pp.generator().pow(&sk),
            sk,
        }
    }

    pub fn is_consistent(&self) -> bool {
        Element::generator().pow(&self.sk) == self.pk
    }
}

impl<G: Group> fmt::Debug for UserKeyPair<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UserKeyPair")
            .field("pk", &self.pk)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Secp256k1, ToyGroup};
    use rand::rngs::OsRng;

    fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
        (0..e).fold(1, |acc, _| acc * b % m)
    }

    #[test]
    fn forced_secrets_match_modular_exponentiation() {
        let pp = PublicParams::<ToyGroup>::new().unwrap();
        let opener = OpenerKeyPair::from_secret(&pp, Scalar::from_u64(5));
        assert_eq!(*opener.opk.raw() as u64, pow_mod(4, 5, 2027));
        assert_eq!(*opener.opk.raw(), 1024);
        let user = UserKeyPair::from_secret(&pp, Scalar::from_u64(7));
        assert_eq!(*user.pk.raw() as u64, pow_mod(4, 7, 2027));
        assert_eq!(*user.pk.raw(), 16384 % 2027);
    }

    #[test]
    fn generated_keys_are_consistent() {
        let pp = PublicParams::<Secp256k1>::new().unwrap();
        let a = OpenerKeyPair::generate(&pp, &mut OsRng);
        let b = OpenerKeyPair::generate(&pp, &mut OsRng);
        assert!(a.is_consistent() && b.is_consistent());
        assert_ne!(a.osk, b.osk);
        let u = UserKeyPair::generate(&pp, &mut OsRng);
        assert!(u.is_consistent());
    }

    #[test]
    fn production_user_keys_are_distinct() {
        let pp = PublicParams::<Secp256k1>::new().unwrap();
        let keys: std::collections::HashSet<Vec<u8>> = (0..100)
            .map(|_| UserKeyPair::generate(&pp, &mut OsRng).pk.to_bytes())
            .collect();
        assert_eq!(keys.len(), 100);
    }
}
