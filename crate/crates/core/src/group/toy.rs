use num_bigint::BigUint;
use rand::{CryptoRng, Rng, RngCore};

use super::{Group, GroupError, GroupId};

/// Safe prime `p = 2q + 1`.
pub(crate) const P: u32 = 2027;
/// Order of the quadratic-residue subgroup.
pub(crate) const Q: u32 = 1013;
const GENERATOR: u32 = 4;

/// The subgroup of quadratic residues modulo 2027, of prime order 1013.
///
/// Only suitable for tests: every discrete logarithm can be recovered by
/// searching 1013 exponents.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct ToyGroup;

fn mul_mod(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 * b as u64) % m as u64) as u32
}

fn pow_mod(mut base: u32, mut e: u32, m: u32) -> u32 {
    let mut acc = 1u32;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

impl Group for ToyGroup {
    /// Residue in `[1, p)`.
    type Elem = u16;
    /// Integer in `[0, q)`.
    type Scal = u16;

    const ID: GroupId = GroupId::Toy;
    const SCALAR_LEN: usize = 2;
    const ELEMENT_LEN: usize = 2;

    fn order() -> BigUint {
        BigUint::from(Q)
    }

    fn field_modulus() -> BigUint {
        BigUint::from(P)
    }

    fn generator() -> u16 {
        GENERATOR as u16
    }

    fn identity() -> u16 {
        1
    }

    fn combine(a: &u16, b: &u16) -> u16 {
        mul_mod(*a as u32, *b as u32, P) as u16
    }

    fn invert(a: &u16) -> u16 {
        // a^(p-2) by Fermat
        pow_mod(*a as u32, P - 2, P) as u16
    }

    fn exp(base: &u16, e: &u16) -> u16 {
        pow_mod(*base as u32, *e as u32, P) as u16
    }

    fn scalar_from_u64(v: u64) -> u16 {
        (v % Q as u64) as u16
    }

    fn scalar_add(a: &u16, b: &u16) -> u16 {
        ((*a as u32 + *b as u32) % Q) as u16
    }

    fn scalar_mul(a: &u16, b: &u16) -> u16 {
        mul_mod(*a as u32, *b as u32, Q) as u16
    }

    fn scalar_neg(a: &u16) -> u16 {
        ((Q - *a as u32) % Q) as u16
    }

    fn random_scalar<R: RngCore + CryptoRng>(rng: &mut R) -> u16 {
        rng.gen_range(1..Q) as u16
    }

    fn scalar_from_digest(digest: &[u8; 32]) -> u16 {
        digest
            .iter()
            .fold(0u32, |acc, &b| (acc * 256 + b as u32) % Q) as u16
    }

    fn encode_scalar(s: &u16) -> Vec<u8> {
        s.to_be_bytes().to_vec()
    }

    fn decode_scalar(bytes: &[u8]) -> Result<u16, GroupError> {
        let arr: [u8; 2] = bytes
            .try_into()
            .map_err(|_| GroupError::MalformedEncoding)?;
        let v = u16::from_be_bytes(arr);
        if v as u32 >= Q {
            return Err(GroupError::MalformedEncoding);
        }
        Ok(v)
    }

    fn encode_element(e: &u16) -> Vec<u8> {
        e.to_be_bytes().to_vec()
    }

    fn decode_element(bytes: &[u8]) -> Result<u16, GroupError> {
        let arr: [u8; 2] = bytes
            .try_into()
            .map_err(|_| GroupError::MalformedEncoding)?;
        let v = u16::from_be_bytes(arr);
        if v == 0 || v as u32 >= P {
            return Err(GroupError::MalformedEncoding);
        }
        // Euler's criterion: residues satisfy v^q = 1.
        if pow_mod(v as u32, Q, P) != 1 {
            return Err(GroupError::NotInSubgroup);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Element, Scalar};

    #[test]
    fn parameters_by_direct_computation() {
        let is_prime = |n: u32| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        assert!(is_prime(1013));
        assert!(is_prime(2027));
        assert_eq!(2027, 2 * 1013 + 1);
        // 4 has order exactly 1013: 4^1013 = 1 and 1013 is prime, 4 != 1.
        let mut x = 1u32;
        for k in 1..=1013u32 {
            x = x * 4 % 2027;
            if k < 1013 {
                assert_ne!(x, 1, "4^{k} = 1");
            }
        }
        assert_eq!(x, 1);
    }

    #[test]
    fn subgroup_membership_by_direct_computation() {
        let euler = |v: u32| (0..1013).fold(1u32, |acc, _| acc * v % 2027);
        // 3 is a residue (2027 = 11 mod 12); 2 is not (2027 = 3 mod 8), nor is -1.
        assert_eq!(euler(3), 1);
        assert_ne!(euler(2), 1);
        assert_ne!(euler(2026), 1);
        assert!(Element::<ToyGroup>::from_bytes(&[0, 3]).is_ok());
        assert_eq!(
            Element::<ToyGroup>::from_bytes(&[0, 2]),
            Err(GroupError::NotInSubgroup)
        );
        assert_eq!(
            Element::<ToyGroup>::from_bytes(&2026u16.to_be_bytes()),
            Err(GroupError::NotInSubgroup)
        );
        // Exactly half of [1, p) decodes.
        let members = (1..2027u16)
            .filter(|v| Element::<ToyGroup>::from_bytes(&v.to_be_bytes()).is_ok())
            .count();
        assert_eq!(members, 1013);
    }

    #[test]
    fn decode_rejections() {
        let dec = Element::<ToyGroup>::from_bytes;
        assert_eq!(dec(&[0, 0]), Err(GroupError::MalformedEncoding));
        assert_eq!(dec(&[0x07, 0xeb]), Err(GroupError::MalformedEncoding)); // 2027
        assert_eq!(dec(&[0, 4, 0]), Err(GroupError::MalformedEncoding));
        assert_eq!(dec(&[4]), Err(GroupError::MalformedEncoding));
        assert_eq!(
            Scalar::<ToyGroup>::from_bytes(&[0x03, 0xf5]), // 1013
            Err(GroupError::MalformedEncoding)
        );
    }

    #[test]
    fn whole_subgroup_round_trips() {
        let g = Element::<ToyGroup>::generator();
        for e in 0..1013u64 {
            let x = g.pow(&Scalar::from_u64(e));
            assert_eq!(Element::from_bytes(&x.to_bytes()), Ok(x));
        }
    }

    #[test]
    fn inversion() {
        let g = Element::<ToyGroup>::generator();
        for e in 1..50u64 {
            let x = g.pow(&Scalar::from_u64(e));
            assert!((x * x.invert()).is_identity());
        }
    }
}
