use std::time::Instant;

use pals::drivers::{run_timed, RunRecord, Timings};
use pals::problems::BenchmarkProblem;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::BenchError;

/// Seed of one replication. Depends only on its own coordinates, so adding
/// problems, methods or replications leaves existing runs unchanged.
pub fn run_seed(master: u64, problem: &str, method: &str, replication: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    for part in [problem.as_bytes(), method.as_bytes()] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    h.update((replication as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("32-byte digest"))
}

#[derive(Debug)]
pub struct RunOutcome {
    pub problem: usize,
    pub method: usize,
    pub replication: usize,
    pub seed: u64,
    /// The error message when the run failed.
    pub record: Result<RunRecord, String>,
    pub timings: Timings,
}

#[derive(Debug)]
pub struct ExperimentResult {
    /// Sorted by problem, method, replication in config order.
    pub runs: Vec<RunOutcome>,
    pub wall_seconds: f64,
}

impl ExperimentResult {
    pub fn failures(&self) -> usize {
        self.runs.iter().filter(|r| r.record.is_err()).count()
    }
}

pub(crate) fn build_problems(cfg: &ExperimentConfig) -> Result<Vec<BenchmarkProblem>, BenchError> {
    cfg.problems
        .iter()
        .map(|p| {
            let b = BenchmarkProblem::new(p.id)?;
            match p.noise_variances {
                Some(v) => b.with_noise_variances(v).map_err(BenchError::from),
                None => Ok(b),
            }
        })
        .collect()
}

/// Runs every (problem, method, replication) on a pool of `cfg.jobs` threads.
/// A failing run is recorded and the others continue. `progress` is called
/// from worker threads as runs finish.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    progress: &(dyn Fn(&RunOutcome, &ExperimentConfig) + Sync),
) -> Result<ExperimentResult, BenchError> {
    let problems = build_problems(cfg)?;
    let mut jobs = Vec::new();
    for (pi, p) in cfg.problems.iter().enumerate() {
        for (mi, m) in cfg.methods.iter().enumerate() {
            for r in 0..cfg.replications {
                jobs.push((pi, mi, r, run_seed(cfg.master_seed, &p.id.to_string(), &m.label, r)));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| BenchError::Input(e.to_string()))?;
    let started = Instant::now();
    let runs = pool.install(|| {
        jobs.par_iter()
            .map(|&(pi, mi, r, seed)| {
                let (record, timings) = match run_timed(&problems[pi], &cfg.methods[mi].run, seed) {
                    Ok((rec, t)) => (Ok(rec), t),
                    Err(e) => (Err(e.to_string()), Vec::new()),
                };
                let outcome = RunOutcome { problem: pi, method: mi, replication: r, seed, record, timings };
                progress(&outcome, cfg);
                outcome
            })
            .collect::<Vec<_>>()
    });
    Ok(ExperimentResult { runs, wall_seconds: started.elapsed().as_secs_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_separate_every_coordinate() {
        let base = run_seed(1, "g1", "PALS", 0);
        assert_eq!(base, run_seed(1, "g1", "PALS", 0));
        assert_ne!(base, run_seed(2, "g1", "PALS", 0));
        assert_ne!(base, run_seed(1, "g2", "PALS", 0));
        assert_ne!(base, run_seed(1, "g1", "PRS", 0));
        assert_ne!(base, run_seed(1, "g1", "PALS", 1));
        // Length prefixes keep field boundaries apart.
        assert_ne!(run_seed(0, "ab", "c", 0), run_seed(0, "a", "bc", 0));
    }
}
