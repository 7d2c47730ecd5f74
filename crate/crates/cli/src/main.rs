//! `acwallet`: file-based driver for accountable contract wallets.
//!
//! State lives in `chain.json` inside the workspace directory named by
//! `ACWALLET_HOME` (default: the current directory). Keys, policies,
//! transactions and audit claims are plain JSON files passed between
//! parties.

mod commands;
mod error;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use acwallet_core::{GroupId, Secp256k1, ToyGroup};
use clap::{Parser, Subcommand, ValueEnum};

use error::Result;
use workspace::Workspace;

#[derive(Parser)]
#[command(
    name = "acwallet",
    version,
    about = "Accountable contract wallets on a simulated chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Create an empty chain in the workspace.
    Init {
        #[arg(long, value_parser = parse_group)]
        group: GroupId,
        #[arg(long, default_value_t = 1)]
        chain_id: u64,
        /// Replace an existing chain.
        #[arg(long)]
        force: bool,
    },
    /// Generate a key file.
    Keygen {
        #[arg(value_enum)]
        kind: KeyKind,
        #[arg(long, value_parser = parse_group)]
        group: GroupId,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a policy file.
    #[command(subcommand)]
    Policy(PolicyCommand),
    /// Deploy, fund and inspect contract wallets.
    #[command(subcommand)]
    Wallet(WalletCommand),
    /// Build, sign and submit transactions.
    #[command(subcommand)]
    Tx(TxCommand),
    /// Open ring signatures and judge claims.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Run a security game suite.
    #[command(subcommand)]
    Harness(HarnessCommand),
    /// Time rsign and rverify.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum KeyKind {
    User,
    Opener,
    Individual,
}

#[derive(Subcommand)]
pub enum PolicyCommand {
    /// Append a ring. Keys are key files or hex encodings.
    AddRing {
        #[arg(long)]
        policy: PathBuf,
        #[arg(long)]
        opener: String,
        #[arg(long = "member", required = true)]
        members: Vec<String>,
        /// Defaults to the workspace chain's group.
        #[arg(long, value_parser = parse_group)]
        group: Option<GroupId>,
    },
    /// Append an individual verification key.
    AddIndividual {
        #[arg(long)]
        policy: PathBuf,
        #[arg(long)]
        key: String,
        #[arg(long, value_parser = parse_group)]
        group: Option<GroupId>,
    },
}

#[derive(Subcommand)]
pub enum WalletCommand {
    /// DeployContractWallet; prints the wallet address.
    Deploy {
        #[arg(long)]
        policy: PathBuf,
        #[arg(long, default_value = "")]
        salt: String,
        /// `record` or `transfer:<address>:<amount>`.
        #[arg(long, default_value = "record")]
        rule: String,
    },
    /// Credit an address.
    Fund {
        #[arg(long)]
        address: String,
        #[arg(long)]
        amount: u64,
    },
    /// Print a wallet and its balance.
    Show {
        #[arg(long)]
        address: String,
    },
}

#[derive(Subcommand)]
pub enum TxCommand {
    /// Write a transaction request for the wallet's current nonce.
    Build {
        #[arg(long)]
        wallet: String,
        #[arg(long, default_value = "")]
        payload: String,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a ring signature to a bundle file.
    SignRing {
        #[arg(long)]
        req: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        ring: usize,
        /// Defaults to the request file itself.
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Add an individual signature to a bundle file.
    SignInd {
        #[arg(long)]
        req: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// SendTransaction; prints the receipt.
    Submit {
        #[arg(long)]
        req: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum AuditCommand {
    /// Open one ring signature of a logged transaction.
    Open {
        #[arg(long)]
        tx: usize,
        #[arg(long)]
        ring: usize,
        /// Opener key file.
        #[arg(long)]
        osk: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints 1 and exits 0 if the claim holds, prints 0 and exits 1 if not.
    Judge {
        #[arg(long)]
        claim: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Unforgeability,
    Anonymity,
    Traceability,
    TracingSoundness,
    All,
}

#[derive(Subcommand)]
pub enum HarnessCommand {
    Run {
        #[arg(value_enum)]
        suite: Suite,
        /// Defaults to production for unforgeability and tracing-soundness,
        /// toy otherwise.
        #[arg(long, value_parser = parse_group)]
        group: Option<GroupId>,
        /// Defaults to 1000 for anonymity, 100 otherwise.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
pub enum BenchCommand {
    Run {
        #[arg(long, value_parser = parse_group, default_value = "production")]
        group: GroupId,
        #[arg(long = "size", default_values_t = [4usize, 10])]
        sizes: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_group(s: &str) -> std::result::Result<GroupId, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Which group a command runs over: given on the command line or taken
/// from the workspace chain.
fn group_for(command: &Command, ws: &Workspace) -> Result<GroupId> {
    let explicit = match command {
        Command::Init { group, .. } | Command::Keygen { group, .. } => Some(*group),
        Command::Bench(BenchCommand::Run { group, .. }) => Some(*group),
        Command::Policy(PolicyCommand::AddRing { group, .. })
        | Command::Policy(PolicyCommand::AddIndividual { group, .. }) => *group,
        _ => None,
    };
    match explicit {
        Some(g) => Ok(g),
        None => ws.group(),
    }
}

fn run(cli: Cli) -> Result<i32> {
    if let Command::Harness(HarnessCommand::Run {
        suite,
        group,
        trials,
        seed,
        json,
    }) = cli.command
    {
        return commands::harness(suite, group, trials, seed, json);
    }
    let ws = Workspace::from_env();
    match group_for(&cli.command, &ws)? {
        GroupId::Toy => commands::execute::<ToyGroup>(cli.command, &ws),
        GroupId::Production => commands::execute::<Secp256k1>(cli.command, &ws),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
