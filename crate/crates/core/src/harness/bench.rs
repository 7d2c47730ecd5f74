use std::fmt;
use std::time::Instant;

use rand::{CryptoRng, Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::Fixture;
use crate::ars::{
    judge_metered, open_metered, rsign_with_nonces, rverify_metered, Message, PublicParams,
    SigningNonces,
};
use crate::group::{Group, GroupId};
use crate::meter::CostMeter;

/// Executions averaged per cell.
pub const BENCH_RUNS: u32 = 100;

pub const ALGORITHMS: [&str; 4] = ["rsign", "rverify", "open", "judge"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub ring_size: usize,
    pub mean_ms: f64,
    pub exponentiations: u64,
    pub hash_calls: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub group: GroupId,
    pub runs: u32,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, algorithm: &str, ring_size: usize) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.ring_size == ring_size)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sizes: Vec<usize> = self.rows.iter().map(|r| r.ring_size).collect();
        sizes.dedup();
        writeln!(f, "group {}, mean over {} runs", self.group, self.runs)?;
        write!(f, "{:<10}", "algorithm")?;
        for n in &sizes {
            write!(f, "{:>24}", format!("|R|={n} ms (exps)"))?;
        }
        writeln!(f)?;
        for alg in ALGORITHMS {
            write!(f, "{alg:<10}")?;
            for &n in &sizes {
                match self.row(alg, n) {
                    Some(r) => write!(
                        f,
                        "{:>24}",
                        format!("{:.3} ({})", r.mean_ms, r.exponentiations)
                    )?,
                    None => write!(f, "{:>24}", "-")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Times the four algorithms over [`BENCH_RUNS`] executions per ring size.
pub fn run_bench<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    ring_sizes: &[usize],
    rng: &mut R,
) -> BenchReport {
    run_bench_with_runs(pp, ring_sizes, BENCH_RUNS, rng)
}

pub fn run_bench_with_runs<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    ring_sizes: &[usize],
    runs: u32,
    rng: &mut R,
) -> BenchReport {
    let mut rows = Vec::new();
    for &n in ring_sizes {
        let fx = Fixture::new(pp, n, rng);
        let opk = fx.opener.opk;
        let mut elapsed = [0f64; 4];
        let mut meters = [CostMeter::new(); 4];
        for run in 0..runs {
            let mut msg = vec![0u8; 32];
            rng.fill_bytes(&mut msg);
            let msg = Message(msg);
            let sk = fx.users[rng.gen_range(0..n)].sk;
            let nonces = SigningNonces::random(n, rng);
            let mut m = [CostMeter::new(); 4];

            let t = Instant::now();
            let sig = rsign_with_nonces(pp, &opk, &msg, &fx.ring, &sk, &nonces, &mut m[0]).unwrap();
            elapsed[0] += t.elapsed().as_secs_f64();

            let t = Instant::now();
            let ok = rverify_metered(pp, &opk, &msg, &fx.ring, &sig, &mut m[1]);
            elapsed[1] += t.elapsed().as_secs_f64();
            assert!(ok, "honest signature rejected during benchmark");

            let t = Instant::now();
            let proof =
                open_metered(pp, &msg, &fx.ring, &sig, &fx.opener.osk, rng, &mut m[2]).unwrap();
            elapsed[2] += t.elapsed().as_secs_f64();

            let t = Instant::now();
            let ok = judge_metered(
                pp,
                &opk,
                &msg,
                &fx.ring,
                &sig,
                &proof.pk_identified,
                &proof,
                &mut m[3],
            );
            elapsed[3] += t.elapsed().as_secs_f64();
            assert!(ok, "honest opening rejected during benchmark");

            if run == 0 {
                meters = m;
            }
        }
        for (i, alg) in ALGORITHMS.iter().enumerate() {
            rows.push(BenchRow {
                algorithm: alg.to_string(),
                ring_size: n,
                mean_ms: elapsed[i] * 1000.0 / runs.max(1) as f64,
                exponentiations: meters[i].exponentiations,
                hash_calls: meters[i].hash_calls,
            });
        }
    }
    BenchReport {
        group: G::ID,
        runs,
        rows,
    }
}
