//! Simulated account-abstraction chain.
//!
//! Contract wallets are deployed with a [`Policy`] and an [`ActionRule`].
//! A transaction is a [`TransactionRequest`] plus an
//! [`AuthorizationBundle`] carrying one ring signature per policy ring and
//! one conventional signature per policy individual, all over
//! [`canonical_message`] of the request. The wallet verifies the bundle, bumps
//! its nonce and runs its action; no externally owned account issues the
//! transaction.

mod address;
mod chain;
pub(crate) mod hexbytes;
mod individual;
mod policy;
mod tx;

use thiserror::Error;

pub use address::{derive_address, Address};
pub use chain::{ActionRule, Chain, ContractWallet, Ledger, LogEntry};
pub use individual::{
    individual_sign, individual_verify, individual_verify_metered, IndividualKeyPair,
    IndividualScheme, IndividualSig, IndividualSigningKey, IndividualVk, SchnorrSignature,
};
pub use policy::{validate_policy, Policy, PolicyError, PolicyRing};
pub use tx::{
    canonical_message, meter_read, AuthorizationBundle, IndSigEntry, Receipt, RingSigEntry,
    TransactionData, TransactionRequest,
};

use crate::ars::ArsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalletError {
    #[error("invalid policy: {0}")]
    InvalidPolicy(#[from] PolicyError),
    #[error("a wallet already exists at {0}")]
    AddressCollision(Address),
    #[error("no wallet at {0}")]
    UnknownWallet(Address),
    #[error("transaction is for chain {got}, this is chain {expected}")]
    WrongChain { expected: u64, got: u64 },
    #[error("wallet expects nonce {expected}, request has {got}")]
    BadNonce { expected: u64, got: u64 },
    #[error("missing {what} signature {index}")]
    MissingSignature { what: &'static str, index: usize },
    #[error("unexpected {what} signature {index}")]
    ExtraSignature { what: &'static str, index: usize },
    #[error("ring signature for ring {0} does not verify")]
    InvalidRingSignature(usize),
    #[error("signature of individual {0} does not verify")]
    InvalidIndividualSignature(usize),
    #[error("wallet balance {available} is below {required}")]
    InsufficientBalance { available: u64, required: u64 },
    #[error("balance overflow")]
    BalanceOverflow,
    #[error("bad chain state: {0}")]
    State(String),
    #[error(transparent)]
    Scheme(#[from] ArsError),
}

impl WalletError {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            WalletError::InvalidPolicy(_) => "invalid-policy",
            WalletError::AddressCollision(_) => "address-collision",
            WalletError::UnknownWallet(_) => "unknown-wallet",
            WalletError::WrongChain { .. } => "wrong-chain",
            WalletError::BadNonce { .. } => "bad-nonce",
            WalletError::MissingSignature { .. } => "missing-signature",
            WalletError::ExtraSignature { .. } => "extra-signature",
            WalletError::InvalidRingSignature(_) => "invalid-ring-signature",
            WalletError::InvalidIndividualSignature(_) => "invalid-individual-signature",
            WalletError::InsufficientBalance { .. } => "insufficient-balance",
            WalletError::BalanceOverflow => "balance-overflow",
            WalletError::State(_) => "bad-state",
            WalletError::Scheme(_) => "scheme",
        }
    }
}
