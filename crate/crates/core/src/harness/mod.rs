//! Executable security games, the toy-group decryption oracle and the
//! benchmark.
//!
//! The games run fixed lists of concrete adversary strategies; they are
//! regression oracles, not proofs. Every shipped suite is expected to report
//! zero adversary wins.

mod bench;
mod games;
pub mod oracle;
mod tamper;

use std::fmt;

use rand::{CryptoRng, RngCore};
use serde::{Deserialize, Serialize};

use crate::ars::{OpenerKeyPair, PublicParams, Ring, UserKeyPair};
use crate::group::{Group, GroupId};

pub use bench::{run_bench, run_bench_with_runs, BenchReport, BenchRow, BENCH_RUNS};
pub use games::{
    run_anonymity_suite, run_full_unforgeability_suite, run_traceability_suite,
    run_tracing_soundness_suite, simulate_transcript,
};
pub use tamper::{tamper_mutations, Mutant};

/// Empirical result of one distinguisher in the anonymity game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinguisherStat {
    pub name: String,
    pub uses_osk: bool,
    pub trials: u64,
    pub correct: u64,
    /// `2 * correct / trials - 1`.
    pub advantage: f64,
    /// Standard deviation of the advantage of a blind guesser, `1 / sqrt(trials)`.
    pub sigma: f64,
}

impl DistinguisherStat {
    pub fn new(name: &str, uses_osk: bool, trials: u64, correct: u64) -> Self {
        let n = trials.max(1) as f64;
        DistinguisherStat {
            name: name.to_owned(),
            uses_osk,
            trials,
            correct,
            advantage: 2.0 * correct as f64 / n - 1.0,
            sigma: 1.0 / n.sqrt(),
        }
    }

    pub fn within_three_sigma(&self) -> bool {
        self.advantage.abs() <= 3.0 * self.sigma
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub game: String,
    pub group: GroupId,
    pub trials: u64,
    pub adversary_wins: u64,
    /// Failures of side properties checked alongside the game (simulator
    /// transcripts, oracle agreement, opener sanity checks).
    pub property_failures: u64,
    pub details: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub distinguishers: Vec<DistinguisherStat>,
}

impl GameReport {
    fn new(game: &str, group: GroupId, trials: u64) -> Self {
        GameReport {
            game: game.to_owned(),
            group,
            trials,
            adversary_wins: 0,
            property_failures: 0,
            details: Vec::new(),
            distinguishers: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.adversary_wins == 0 && self.property_failures == 0
    }
}

impl fmt::Display for GameReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [{}]: {} trials, {} adversary wins, {} property failures",
            self.game, self.group, self.trials, self.adversary_wins, self.property_failures
        )?;
        for line in &self.details {
            writeln!(f, "  {line}")?;
        }
        if !self.distinguishers.is_empty() {
            writeln!(
                f,
                "  {:<20} {:>8} {:>8} {:>10} {:>8}",
                "distinguisher", "trials", "correct", "advantage", "3 sigma"
            )?;
            for d in &self.distinguishers {
                writeln!(
                    f,
                    "  {:<20} {:>8} {:>8} {:>10.4} {:>8.4}",
                    d.name,
                    d.trials,
                    d.correct,
                    d.advantage,
                    3.0 * d.sigma
                )?;
            }
        }
        Ok(())
    }
}

/// `n` user key pairs with pairwise distinct public keys.
pub fn distinct_users<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    n: usize,
    rng: &mut R,
) -> Vec<UserKeyPair<G>> {
    let mut users: Vec<UserKeyPair<G>> = Vec::with_capacity(n);
    while users.len() < n {
        let k = UserKeyPair::generate(pp, rng);
        if users.iter().all(|u| u.pk != k.pk) {
            users.push(k);
        }
    }
    users
}

/// A ring of fresh users and an opener.
pub struct Fixture<G: Group> {
    pub opener: OpenerKeyPair<G>,
    pub users: Vec<UserKeyPair<G>>,
    pub ring: Ring<G>,
}

impl<G: Group> Fixture<G> {
    pub fn new<R: RngCore + CryptoRng>(pp: &PublicParams<G>, n: usize, rng: &mut R) -> Self {
        let users = distinct_users(pp, n, rng);
        let ring = Ring::new(users.iter().map(|u| u.pk).collect()).expect("distinct keys");
        Fixture {
            opener: OpenerKeyPair::generate(pp, rng),
            users,
            ring,
        }
    }
}
