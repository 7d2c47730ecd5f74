//! Anonymous yet accountable contract wallets.
//!
//! The crate has four layers:
//!
//! - [`group`]: prime-order groups (secp256k1 and a brute-forceable toy
//!   group) with canonical encodings and Fiat-Shamir hashing.
//! - [`ars`]: an accountable ring signature scheme. A signature encrypts the
//!   signer's key to an opener and proves in zero knowledge that the
//!   plaintext is a ring member who knows the matching secret key. The
//!   opener can identify the signer and produce a publicly checkable proof.
//! - [`wallet`]: a single-process simulated chain of contract wallets whose
//!   policies require one ring signature per ring and one conventional
//!   signature per named individual.
//! - [`audit`]: off-chain opening of logged transactions and public judging
//!   of the resulting claims.
//!
//! [`harness`] contains executable security games, a brute-force decryption
//! oracle for the toy group, and a benchmark.

pub mod ars;
pub mod audit;
pub mod group;
pub mod harness;
pub mod meter;
pub mod wallet;

pub use group::{Element, Group, GroupId, Scalar, Secp256k1, ToyGroup};
pub use meter::CostMeter;
