use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::address::Address;
use super::individual::{individual_verify_metered, IndividualScheme};
use super::policy::{validate_policy, Policy};
use super::tx::{canonical_message, AuthorizationBundle, Receipt, TransactionRequest};
use super::WalletError;
use crate::ars::{rverify_metered, PublicParams};
use crate::group::GroupId;
use crate::meter::CostMeter;

/// What a wallet does once a transaction is authorized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ActionRule {
    /// Move `amount` from the wallet's balance to `to`.
    Transfer { to: Address, amount: u64 },
    /// Append the transaction payload to the wallet's records.
    Record,
}

impl fmt::Display for ActionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionRule::Transfer { to, amount } => write!(f, "transfer:{to}:{amount}"),
            ActionRule::Record => f.write_str("record"),
        }
    }
}

/// Parses `record` or `transfer:<address>:<amount>`.
impl FromStr for ActionRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "record" {
            return Ok(ActionRule::Record);
        }
        let mut parts = s.splitn(3, ':');
        match (parts.next(), parts.next(), parts.next()) {
            (Some("transfer"), Some(to), Some(amount)) => Ok(ActionRule::Transfer {
                to: to
                    .parse()
                    .map_err(|_| format!("bad transfer address `{to}`"))?,
                amount: amount
                    .parse()
                    .map_err(|_| format!("bad transfer amount `{amount}`"))?,
            }),
            _ => Err(format!("unrecognized action rule `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ContractWallet<G: IndividualScheme> {
    pub address: Address,
    pub policy: Policy<G>,
    pub nonce: u64,
    pub action_rule: ActionRule,
    /// Payloads stored by `Record` actions, hex encoded.
    #[serde(default)]
    pub records: Vec<String>,
}

/// An executed transaction. There is no issuer field: the wallet itself
/// executes, and the only record is what was signed and the signatures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "", deny_unknown_fields)]
pub struct LogEntry<G: IndividualScheme> {
    pub request: TransactionRequest,
    pub bundle: AuthorizationBundle<G>,
}

/// Read access to public chain data.
pub trait Ledger<G: IndividualScheme> {
    fn params(&self) -> &PublicParams<G>;
    fn log_entry(&self, index: usize) -> Option<&LogEntry<G>>;
    fn wallet(&self, address: &Address) -> Option<&ContractWallet<G>>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
struct ChainState<G: IndividualScheme> {
    group: GroupId,
    chain_id: u64,
    wallets: BTreeMap<Address, ContractWallet<G>>,
    accounts: BTreeMap<Address, u64>,
    log: Vec<LogEntry<G>>,
    /// Cost of the most recent accepted transaction.
    meter: CostMeter,
}

/// A single-writer, in-process chain hosting contract wallets.
///
/// Verification of authorization bundles is the only cryptographic work the
/// chain performs. Every rejected call leaves the state untouched.
#[derive(Debug, Clone)]
pub struct Chain<G: IndividualScheme> {
    state: ChainState<G>,
    pp: PublicParams<G>,
}

impl<G: IndividualScheme> Chain<G> {
    pub fn new(chain_id: u64) -> Result<Self, WalletError> {
        Ok(Chain {
            state: ChainState {
                group: G::ID,
                chain_id,
                wallets: BTreeMap::new(),
                accounts: BTreeMap::new(),
                log: Vec::new(),
                meter: CostMeter::new(),
            },
            pp: PublicParams::new()?,
        })
    }

    pub fn chain_id(&self) -> u64 {
        self.state.chain_id
    }

    pub fn log(&self) -> &[LogEntry<G>] {
        &self.state.log
    }

    pub fn wallets(&self) -> impl Iterator<Item = &ContractWallet<G>> {
        self.state.wallets.values()
    }

    pub fn balance(&self, address: &Address) -> u64 {
        self.state.accounts.get(address).copied().unwrap_or(0)
    }

    pub fn last_meter(&self) -> CostMeter {
        self.state.meter
    }

    /// Credits `amount` to `address` out of thin air (genesis allocation).
    pub fn fund(&mut self, address: Address, amount: u64) -> Result<(), WalletError> {
        let balance = self.balance(&address);
        let updated = balance
            .checked_add(amount)
            .ok_or(WalletError::BalanceOverflow)?;
        self.state.accounts.insert(address, updated);
        Ok(())
    }

    /// DeployContractWallet. The address is the last 20 bytes of
    /// `Keccak-256("WALLET" || salt || canonical policy bytes)`.
    pub fn deploy_contract_wallet(
        &mut self,
        policy: Policy<G>,
        action_rule: ActionRule,
        salt: &[u8],
    ) -> Result<Address, WalletError> {
        validate_policy(&policy)?;
        let mut preimage = b"WALLET".to_vec();
        preimage.extend_from_slice(salt);
        preimage.extend(policy.canonical_bytes());
        let address = Address::from_preimage(&preimage);
        if self.state.wallets.contains_key(&address) {
            return Err(WalletError::AddressCollision(address));
        }
        self.state.wallets.insert(
            address,
            ContractWallet {
                address,
                policy,
                nonce: 0,
                action_rule,
                records: Vec::new(),
            },
        );
        Ok(address)
    }

    /// SendTransaction: verifies `bundle` against the wallet policy and, if
    /// every required signature is present and valid, executes the wallet's
    /// action rule.
    pub fn submit_transaction(
        &mut self,
        req: TransactionRequest,
        bundle: AuthorizationBundle<G>,
    ) -> Result<Receipt, WalletError> {
        if req.chain_id != self.state.chain_id {
            return Err(WalletError::WrongChain {
                expected: self.state.chain_id,
                got: req.chain_id,
            });
        }
        let wallet = self
            .state
            .wallets
            .get(&req.wallet)
            .ok_or(WalletError::UnknownWallet(req.wallet))?;
        if req.nonce != wallet.nonce {
            return Err(WalletError::BadNonce {
                expected: wallet.nonce,
                got: req.nonce,
            });
        }
        let policy = &wallet.policy;
        check_coverage(
            bundle.ring_sigs.iter().map(|e| e.ring),
            policy.rings.len(),
            "ring",
        )?;
        check_coverage(
            bundle.ind_sigs.iter().map(|e| e.vk),
            policy.individuals.len(),
            "individual",
        )?;

        let msg = canonical_message(&req);
        let mut meter = CostMeter::new();
        let mut ring_sigs: Vec<_> = bundle.ring_sigs.iter().collect();
        ring_sigs.sort_by_key(|e| e.ring);
        for entry in ring_sigs {
            let ring = policy
                .ring(entry.ring)
                .ok_or(WalletError::InvalidRingSignature(entry.ring))?;
            let opk = &policy.rings[entry.ring].opk;
            if !rverify_metered(&self.pp, opk, &msg, &ring, &entry.sig, &mut meter) {
                return Err(WalletError::InvalidRingSignature(entry.ring));
            }
        }
        let mut ind_sigs: Vec<_> = bundle.ind_sigs.iter().collect();
        ind_sigs.sort_by_key(|e| e.vk);
        for entry in ind_sigs {
            let vk = &policy.individuals[entry.vk];
            if !individual_verify_metered(vk, &msg, &entry.sig, &mut meter) {
                return Err(WalletError::InvalidIndividualSignature(entry.vk));
            }
        }

        // Everything below is infallible once the action's preconditions hold.
        let effect = self.plan_action(wallet, &req)?;
        let wallet = self
            .state
            .wallets
            .get_mut(&req.wallet)
            .expect("looked up above");
        wallet.nonce += 1;
        match effect {
            Effect::Transfer { from, to, amount } => {
                *self.state.accounts.entry(from).or_insert(0) -= amount;
                *self.state.accounts.entry(to).or_insert(0) += amount;
            }
            Effect::Record(payload) => wallet.records.push(payload),
        }
        self.state.log.push(LogEntry {
            request: req,
            bundle,
        });
        self.state.meter = meter;
        Ok(Receipt {
            tx_index: (self.state.log.len() - 1) as u64,
            exponentiations: meter.exponentiations,
            hash_calls: meter.hash_calls,
        })
    }

    fn plan_action(
        &self,
        wallet: &ContractWallet<G>,
        req: &TransactionRequest,
    ) -> Result<Effect, WalletError> {
        match &wallet.action_rule {
            ActionRule::Transfer { to, amount } => {
                let available = self.balance(&wallet.address);
                if available < *amount {
                    return Err(WalletError::InsufficientBalance {
                        available,
                        required: *amount,
                    });
                }
                if *to != wallet.address && self.balance(to).checked_add(*amount).is_none() {
                    return Err(WalletError::BalanceOverflow);
                }
                Ok(Effect::Transfer {
                    from: wallet.address,
                    to: *to,
                    amount: *amount,
                })
            }
            ActionRule::Record => Ok(Effect::Record(hex::encode(&req.payload))),
        }
    }

    /// Canonical serialization of the full chain state.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.state).expect("chain state serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, WalletError> {
        let state: ChainState<G> =
            serde_json::from_str(s).map_err(|e| WalletError::State(e.to_string()))?;
        if state.group != G::ID {
            return Err(WalletError::State(format!(
                "chain state is for group `{}`, expected `{}`",
                state.group,
                G::ID
            )));
        }
        Ok(Chain {
            state,
            pp: PublicParams::new()?,
        })
    }

    /// Group named in a serialized chain state, without parsing the rest.
    pub fn group_of(json: &str) -> Result<GroupId, WalletError> {
        #[derive(Deserialize)]
        struct Header {
            group: GroupId,
        }
        serde_json::from_str::<Header>(json)
            .map(|h| h.group)
            .map_err(|e| WalletError::State(e.to_string()))
    }
}

enum Effect {
    Transfer {
        from: Address,
        to: Address,
        amount: u64,
    },
    Record(String),
}

/// Requires `indices` to name each of `0..required` exactly once.
fn check_coverage(
    indices: impl Iterator<Item = usize>,
    required: usize,
    what: &'static str,
) -> Result<(), WalletError> {
    let mut seen = vec![false; required];
    for i in indices {
        match seen.get_mut(i) {
            Some(slot) if !*slot => *slot = true,
            _ => return Err(WalletError::ExtraSignature { what, index: i }),
        }
    }
    match seen.iter().position(|s| !s) {
        Some(index) => Err(WalletError::MissingSignature { what, index }),
        None => Ok(()),
    }
}

impl<G: IndividualScheme> Ledger<G> for Chain<G> {
    fn params(&self) -> &PublicParams<G> {
        &self.pp
    }

    fn log_entry(&self, index: usize) -> Option<&LogEntry<G>> {
        self.state.log.get(index)
    }

    fn wallet(&self, address: &Address) -> Option<&ContractWallet<G>> {
        self.state.wallets.get(address)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_rule_syntax() {
        assert_eq!("record".parse::<ActionRule>(), Ok(ActionRule::Record));
        let to = super::super::derive_address(b"x");
        let rule: ActionRule = format!("transfer:{to}:25").parse().unwrap();
        assert_eq!(rule, ActionRule::Transfer { to, amount: 25 });
        assert_eq!(rule.to_string().parse::<ActionRule>(), Ok(rule));
        assert!("transfer:zz:1".parse::<ActionRule>().is_err());
        assert!("burn".parse::<ActionRule>().is_err());
    }

    #[test]
    fn coverage() {
        assert!(check_coverage([0, 1].into_iter(), 2, "ring").is_ok());
        assert!(matches!(
            check_coverage([0].into_iter(), 2, "ring"),
            Err(WalletError::MissingSignature { index: 1, .. })
        ));
        assert!(matches!(
            check_coverage([0, 0, 1].into_iter(), 2, "ring"),
            Err(WalletError::ExtraSignature { index: 0, .. })
        ));
        assert!(matches!(
            check_coverage([0, 1, 2].into_iter(), 2, "ring"),
            Err(WalletError::ExtraSignature { index: 2, .. })
        ));
    }
}
