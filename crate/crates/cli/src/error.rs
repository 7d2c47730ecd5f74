use std::fmt;

use acwallet_core::ars::ArsError;
use acwallet_core::audit::AuditError;
use acwallet_core::wallet::WalletError;

/// Exit code for every error kind. `audit judge` uses 1 for a rejected
/// claim; clap uses 2 for usage errors.
pub const EXIT_CODES: &[(&str, i32)] = &[
    ("judge-reject", 1),
    ("usage", 2),
    ("io", 3),
    ("malformed-input", 4),
    ("invalid-policy", 5),
    ("address-collision", 6),
    ("unknown-wallet", 7),
    ("wrong-chain", 8),
    ("bad-nonce", 9),
    ("missing-signature", 10),
    ("extra-signature", 11),
    ("invalid-ring-signature", 12),
    ("invalid-individual-signature", 13),
    ("insufficient-balance", 14),
    ("balance-overflow", 15),
    ("bad-state", 16),
    ("scheme", 17),
    ("out-of-range", 18),
    ("invalid-signature", 19),
    ("untraceable", 20),
    ("group-mismatch", 21),
    ("suite-failed", 22),
    ("not-initialized", 23),
    ("request-mismatch", 24),
];

#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub detail: String,
}

impl CliError {
    pub fn new(kind: &'static str, detail: impl Into<String>) -> Self {
        debug_assert!(
            EXIT_CODES.iter().any(|(k, _)| *k == kind),
            "unregistered kind {kind}"
        );
        CliError {
            kind,
            detail: detail.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        EXIT_CODES
            .iter()
            .find(|(k, _)| *k == self.kind)
            .map(|(_, c)| *c)
            .unwrap_or(1)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // One line, whatever the detail contains.
        let detail = self.detail.replace('\n', " ");
        write!(f, "error: {}: {}", self.kind, detail)
    }
}

impl From<WalletError> for CliError {
    fn from(e: WalletError) -> Self {
        CliError::new(e.kind(), e.to_string())
    }
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        CliError::new(e.kind(), e.to_string())
    }
}

impl From<ArsError> for CliError {
    fn from(e: ArsError) -> Self {
        match e {
            ArsError::GroupMismatch { .. } => CliError::new("group-mismatch", e.to_string()),
            ArsError::Malformed(_) | ArsError::Group(_) => {
                CliError::new("malformed-input", e.to_string())
            }
            _ => CliError::new("scheme", e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::new("io", format!("{}: {e}", path.display()))
}

pub fn parse_error(what: impl fmt::Display, e: impl fmt::Display) -> CliError {
    CliError::new("malformed-input", format!("{what}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_distinct() {
        let mut codes: Vec<i32> = EXIT_CODES.iter().map(|(_, c)| *c).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), EXIT_CODES.len());
        assert!(!codes.contains(&0));
    }

    #[test]
    fn one_line() {
        let e = CliError::new("io", "a\nb");
        assert_eq!(e.to_string(), "error: io: a b");
    }
}
