use k256::elliptic_curve::ops::{MulByGenerator, Reduce};
use k256::elliptic_curve::sec1::{FromEncodedPoint, ToEncodedPoint};
use k256::elliptic_curve::PrimeField;
use k256::{AffinePoint, EncodedPoint, FieldBytes, NonZeroScalar, ProjectivePoint, U256};
use num_bigint::BigUint;
use rand::{CryptoRng, RngCore};

use super::{Group, GroupError, GroupId};

const ORDER_HEX: &[u8] = b"FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141";
const FIELD_HEX: &[u8] = b"FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F";

/// The group of points on secp256k1 (cofactor 1).
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Secp256k1;

impl Group for Secp256k1 {
    type Elem = ProjectivePoint;
    type Scal = k256::Scalar;

    const ID: GroupId = GroupId::Production;
    const SCALAR_LEN: usize = 32;
    const ELEMENT_LEN: usize = 33;

    fn order() -> BigUint {
        BigUint::parse_bytes(ORDER_HEX, 16).expect("constant")
    }

    fn field_modulus() -> BigUint {
        BigUint::parse_bytes(FIELD_HEX, 16).expect("constant")
    }

    fn generator() -> ProjectivePoint {
        ProjectivePoint::GENERATOR
    }

    fn identity() -> ProjectivePoint {
        ProjectivePoint::IDENTITY
    }

    fn combine(a: &ProjectivePoint, b: &ProjectivePoint) -> ProjectivePoint {
        a + b
    }

    fn invert(a: &ProjectivePoint) -> ProjectivePoint {
        -a
    }

    fn exp(base: &ProjectivePoint, e: &k256::Scalar) -> ProjectivePoint {
        // Fixed-base table for the generator.
        if *base == ProjectivePoint::GENERATOR {
            ProjectivePoint::mul_by_generator(e)
        } else {
            base * e
        }
    }

    fn scalar_from_u64(v: u64) -> k256::Scalar {
        k256::Scalar::from(v)
    }

    fn scalar_add(a: &k256::Scalar, b: &k256::Scalar) -> k256::Scalar {
        a + b
    }

    fn scalar_mul(a: &k256::Scalar, b: &k256::Scalar) -> k256::Scalar {
        a * b
    }

    fn scalar_neg(a: &k256::Scalar) -> k256::Scalar {
        -a
    }

    fn random_scalar<R: RngCore + CryptoRng>(rng: &mut R) -> k256::Scalar {
        *NonZeroScalar::random(rng)
    }

    fn scalar_from_digest(digest: &[u8; 32]) -> k256::Scalar {
        <k256::Scalar as Reduce<U256>>::reduce_bytes(&FieldBytes::from(*digest))
    }

    fn encode_scalar(s: &k256::Scalar) -> Vec<u8> {
        s.to_bytes().to_vec()
    }

    fn decode_scalar(bytes: &[u8]) -> Result<k256::Scalar, GroupError> {
        let arr: [u8; 32] = bytes
            .try_into()
            .map_err(|_| GroupError::MalformedEncoding)?;
        Option::from(k256::Scalar::from_repr(FieldBytes::from(arr)))
            .ok_or(GroupError::MalformedEncoding)
    }

    /// SEC1 compressed. The identity has no compressed form and is written as
    /// 33 zero bytes, which [`decode_element`](Self::decode_element) rejects.
    fn encode_element(e: &ProjectivePoint) -> Vec<u8> {
        let encoded = e.to_affine().to_encoded_point(true);
        let bytes = encoded.as_bytes();
        if bytes.len() == Self::ELEMENT_LEN {
            bytes.to_vec()
        } else {
            vec![0; Self::ELEMENT_LEN]
        }
    }

    fn decode_element(bytes: &[u8]) -> Result<ProjectivePoint, GroupError> {
        if bytes.len() != Self::ELEMENT_LEN {
            return Err(GroupError::MalformedEncoding);
        }
        // Only the compressed form; SEC1 also allows a compact 0x05 form of
        // the same length, which would make encodings malleable.
        if !matches!(bytes[0], 0x02 | 0x03) {
            return Err(GroupError::MalformedEncoding);
        }
        let encoded = EncodedPoint::from_bytes(bytes).map_err(|_| GroupError::MalformedEncoding)?;
        let affine: Option<AffinePoint> = AffinePoint::from_encoded_point(&encoded).into();
        // Cofactor 1: every point on the curve lies in the prime-order group.
        let point = affine
            .map(ProjectivePoint::from)
            .ok_or(GroupError::MalformedEncoding)?;
        if Self::encode_element(&point) != bytes {
            return Err(GroupError::MalformedEncoding);
        }
        Ok(point)
    }
}
