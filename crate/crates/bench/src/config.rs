//! Experiment configuration.
//!
//! The file is flat TOML. Top-level keys set the experiment shape and any
//! run setting shared by all methods; `[method.<label>]` sections define or
//! adjust one method entry and `[problem.<id>]` sections adjust a problem.
//!
//! ```toml
//! problems = ["g2", "g5"]          # default: g1..g9
//! methods = ["PRS", "PALS", "pals-inc"]
//! replications = 50
//! seed = 1
//! budget = 10000
//! batch_size = 200
//!
//! [method.pals-inc]
//! algorithm = "PALS"
//! beta = "increasing"
//!
//! [problem.g1]
//! noise_variances = [1e-12, 1e-12]
//! ```
//!
//! Run settings: `beta` (coverage in (0,1), `"increasing"` or
//! `"increasing:<delta>"`), `epsilon` (number or list), `batch_size`,
//! `budget`, `intersection` (`none`, `intersect`, `corrected`), `n0`,
//! `initial_replicates`, `design_candidates`, `refit_every`, `sample_paths`,
//! `rho`, `reml_starts`, `reml_max_iters`, `noise_estimation` (`reml` or
//! `pooled`).
//!
//! Precedence, lowest first: profile, top-level keys, method section, command
//! line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use pals::drivers::{Algorithm, RunConfig};
use pals::gp::NoiseEstimation;
use pals::pareto::MarginVector;
use pals::problems::ProblemId;
use toml::{Table, Value};

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// 50 replications, budget 10000, k = 200.
    #[default]
    Desk,
    /// 200 replications, budget 50000, k = 200.
    Paper,
}

impl Profile {
    pub fn replications(self) -> usize {
        match self {
            Profile::Desk => 50,
            Profile::Paper => 200,
        }
    }

    pub fn budget(self) -> usize {
        match self {
            Profile::Desk => 10_000,
            Profile::Paper => 50_000,
        }
    }

    pub fn batch_size(self) -> usize {
        200
    }
}

impl FromStr for Profile {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "desk" => Ok(Profile::Desk),
            "paper" => Ok(Profile::Paper),
            _ => Err(BenchError::Config(format!("unknown profile {s:?} (expected desk or paper)"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Desk => "desk",
            Profile::Paper => "paper",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    /// Name used in output files; a method name unless a section renames it.
    pub label: String,
    pub run: RunConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    /// Raw-unit noise variances replacing the published ones.
    pub noise_variances: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problems: Vec<ProblemSpec>,
    pub methods: Vec<MethodSpec>,
    pub replications: usize,
    pub master_seed: u64,
    pub out: PathBuf,
    pub jobs: usize,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct CliOverrides {
    pub profile: Option<Profile>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

const RUN_KEYS: [&str; 14] = [
    "beta",
    "epsilon",
    "batch_size",
    "budget",
    "intersection",
    "n0",
    "initial_replicates",
    "design_candidates",
    "refit_every",
    "sample_paths",
    "rho",
    "reml_starts",
    "reml_max_iters",
    "noise_estimation",
];

fn bad(msg: impl Into<String>) -> BenchError {
    BenchError::Config(msg.into())
}

fn as_usize(key: &str, v: &Value) -> Result<usize, BenchError> {
    v.as_integer()
        .and_then(|i| usize::try_from(i).ok())
        .ok_or_else(|| bad(format!("{key}: expected a nonnegative integer, got {v}")))
}

fn as_f64(key: &str, v: &Value) -> Result<f64, BenchError> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(bad(format!("{key}: expected a number, got {v}"))),
    }
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str, BenchError> {
    v.as_str().ok_or_else(|| bad(format!("{key}: expected a string, got {v}")))
}

fn as_str_list(key: &str, v: &Value) -> Result<Vec<String>, BenchError> {
    let arr = v.as_array().ok_or_else(|| bad(format!("{key}: expected a list of strings")))?;
    arr.iter().map(|x| as_str(key, x).map(str::to_string)).collect()
}

fn apply_run_key(run: &mut RunConfig, key: &str, v: &Value) -> Result<(), BenchError> {
    let wrap = |e: pals::Error| bad(format!("{key}: {e}"));
    match key {
        "beta" => {
            let s = match v {
                Value::String(s) => s.clone(),
                _ => as_f64(key, v)?.to_string(),
            };
            run.beta = s.parse().map_err(wrap)?;
        }
        "epsilon" => {
            let eps = match v {
                Value::Array(a) => a.iter().map(|x| as_f64(key, x)).collect::<Result<Vec<_>, _>>()?,
                _ => vec![as_f64(key, v)?; 2],
            };
            run.epsilon = MarginVector::new(eps).map_err(wrap)?;
        }
        "batch_size" => run.batch_size = as_usize(key, v)?,
        "budget" => run.budget = as_usize(key, v)?,
        "intersection" => run.intersection = as_str(key, v)?.parse().map_err(wrap)?,
        "n0" => run.n0 = as_usize(key, v)?,
        "initial_replicates" => run.initial_replicates = as_usize(key, v)?,
        "design_candidates" => run.design_candidates = as_usize(key, v)?,
        "refit_every" => run.refit_every = as_usize(key, v)?,
        "sample_paths" => run.sample_paths = as_usize(key, v)?,
        "rho" => run.rho = as_f64(key, v)?,
        "reml_starts" => run.reml.starts = as_usize(key, v)?,
        "reml_max_iters" => run.reml.max_iters = as_usize(key, v)? as u64,
        "noise_estimation" => {
            run.reml.noise = match as_str(key, v)? {
                "reml" => NoiseEstimation::Reml,
                "pooled" => NoiseEstimation::Pooled,
                s => return Err(bad(format!("noise_estimation: unknown value {s:?}"))),
            }
        }
        _ => return Err(bad(format!("unknown key {key:?}"))),
    }
    Ok(())
}

impl ExperimentConfig {
    /// All nine problems and all five methods under `profile`.
    pub fn default_for(profile: Profile) -> Self {
        Self::from_table(&Table::new(), &CliOverrides { profile: Some(profile), ..Default::default() })
            .expect("the empty config is valid")
    }

    pub fn from_file(path: &Path, cli: &CliOverrides) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::from_str_with(&text, cli)
    }

    pub fn from_str_with(text: &str, cli: &CliOverrides) -> Result<Self, BenchError> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| bad(e.to_string()))?;
        Self::from_table(&table, cli)
    }

    fn from_table(table: &Table, cli: &CliOverrides) -> Result<Self, BenchError> {
        let file_profile = table.get("profile").map(|v| as_str("profile", v)?.parse()).transpose()?;
        let profile = cli.profile.or(file_profile).unwrap_or_default();

        let mut shared = RunConfig::new(Algorithm::Pals);
        shared.budget = profile.budget();
        shared.batch_size = profile.batch_size();
        let mut replications = profile.replications();
        let mut master_seed = 0u64;
        let mut out = PathBuf::from("results");
        let mut jobs = 1usize;
        let mut problem_names: Option<Vec<String>> = None;
        let mut method_labels: Option<Vec<String>> = None;
        let mut method_sections = Table::new();
        let mut problem_sections = Table::new();

        for (key, v) in table {
            match key.as_str() {
                "profile" => {}
                "problems" => problem_names = Some(as_str_list(key, v)?),
                "methods" => method_labels = Some(as_str_list(key, v)?),
                "replications" => replications = as_usize(key, v)?,
                "seed" => {
                    master_seed = v
                        .as_integer()
                        .and_then(|i| u64::try_from(i).ok())
                        .ok_or_else(|| bad("seed: expected a nonnegative integer"))?
                }
                "out" => out = PathBuf::from(as_str(key, v)?),
                "jobs" => jobs = as_usize(key, v)?,
                "method" => method_sections = v.as_table().cloned().ok_or_else(|| bad("method: expected sections"))?,
                "problem" => problem_sections = v.as_table().cloned().ok_or_else(|| bad("problem: expected sections"))?,
                k if RUN_KEYS.contains(&k) => apply_run_key(&mut shared, k, v)?,
                k => return Err(bad(format!("unknown key {k:?}"))),
            }
        }

        let problem_names = problem_names.unwrap_or_else(|| ProblemId::all().map(|p| p.to_string()).collect());
        let mut problems = Vec::new();
        for name in &problem_names {
            let id: ProblemId = name.parse().map_err(|_| bad(format!("unknown problem {name:?}")))?;
            if problems.iter().any(|p: &ProblemSpec| p.id == id) {
                return Err(bad(format!("problem {name} listed twice")));
            }
            problems.push(ProblemSpec { id, noise_variances: None });
        }
        for (name, section) in &problem_sections {
            let spec = problems
                .iter_mut()
                .find(|p| p.id.to_string() == *name)
                .ok_or_else(|| bad(format!("[problem.{name}] does not name a listed problem")))?;
            let section = section.as_table().ok_or_else(|| bad(format!("problem.{name}: expected a section")))?;
            for (key, v) in section {
                match key.as_str() {
                    "noise_variances" => {
                        let vals = v
                            .as_array()
                            .filter(|a| a.len() == 2)
                            .ok_or_else(|| bad("noise_variances: expected two numbers"))?;
                        let a = as_f64(key, &vals[0])?;
                        let b = as_f64(key, &vals[1])?;
                        if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
                            return Err(bad("noise_variances must be finite and >= 0"));
                        }
                        spec.noise_variances = Some([a, b]);
                    }
                    k => return Err(bad(format!("problem.{name}: unknown key {k:?}"))),
                }
            }
        }

        let labels = method_labels.unwrap_or_else(|| Algorithm::ALL.iter().map(|a| a.to_string()).collect());
        let mut methods: Vec<MethodSpec> = Vec::new();
        for label in &labels {
            if methods.iter().any(|m| m.label == *label) {
                return Err(bad(format!("method {label} listed twice")));
            }
            let section = match method_sections.get(label) {
                Some(s) => Some(s.as_table().ok_or_else(|| bad(format!("method.{label}: expected a section")))?),
                None => None,
            };
            let algorithm = match section.and_then(|s| s.get("algorithm")) {
                Some(v) => as_str("algorithm", v)?.parse(),
                None => label.parse(),
            }
            .map_err(|_| bad(format!("method {label:?}: unknown algorithm (give `algorithm` in [method.{label}])")))?;
            let mut run = shared.clone();
            run.algorithm = algorithm;
            for (key, v) in section.into_iter().flatten() {
                if key != "algorithm" {
                    apply_run_key(&mut run, key, v).map_err(|e| bad(format!("method.{label}: {e}")))?;
                }
            }
            run.validate().map_err(|e| bad(format!("method {label}: {e}")))?;
            methods.push(MethodSpec { label: label.clone(), run });
        }
        for name in method_sections.keys() {
            if !labels.contains(name) {
                return Err(bad(format!("[method.{name}] is not in the methods list")));
            }
        }

        if let Some(s) = cli.seed {
            master_seed = s;
        }
        if let Some(o) = &cli.out {
            out = o.clone();
        }
        if let Some(j) = cli.jobs {
            jobs = j;
        }
        if replications == 0 {
            return Err(bad("replications must be >= 1"));
        }
        if jobs == 0 {
            return Err(bad("jobs must be >= 1"));
        }
        if problems.is_empty() || methods.is_empty() {
            return Err(bad("at least one problem and one method are needed"));
        }
        Ok(Self { problems, methods, replications, master_seed, out, jobs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pals::drivers::BetaMode;

    fn parse(s: &str) -> Result<ExperimentConfig, BenchError> {
        ExperimentConfig::from_str_with(s, &CliOverrides::default())
    }

    #[test]
    fn empty_file_is_the_desk_profile() {
        let c = parse("").unwrap();
        assert_eq!(c.problems.len(), 9);
        assert_eq!(c.methods.len(), 5);
        assert_eq!(c.replications, 50);
        assert!(c.methods.iter().all(|m| m.run.budget == 10_000 && m.run.batch_size == 200));
    }

    #[test]
    fn sections_and_precedence() {
        let cli = CliOverrides { profile: Some(Profile::Paper), seed: Some(9), ..Default::default() };
        let c = ExperimentConfig::from_str_with(
            "profile = \"desk\"\nseed = 3\nmethods = [\"PRS\", \"inc\"]\nbudget = 400\n\
             [method.inc]\nalgorithm = \"pals\"\nbeta = \"increasing\"\nbudget = 800\n\
             [problem.g1]\nnoise_variances = [1e-12, 1e-12]\n",
            &cli,
        )
        .unwrap();
        assert_eq!(c.replications, 200);
        assert_eq!(c.master_seed, 9);
        assert_eq!(c.methods[0].run.budget, 400);
        assert_eq!(c.methods[1].run.budget, 800);
        assert_eq!(c.methods[1].run.algorithm, Algorithm::Pals);
        assert_eq!(c.methods[1].run.beta, BetaMode::Increasing { delta: 0.05 });
        assert_eq!(c.problems[0].noise_variances, Some([1e-12, 1e-12]));
    }

    #[test]
    fn numeric_beta() {
        let c = parse("methods = [\"PALS\"]\nbeta = 0.9\n").unwrap();
        assert_eq!(c.methods[0].run.beta, BetaMode::Fixed { coverage: 0.9 });
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "replications = 0",
            "problems = [\"g10\"]",
            "methods = [\"PALX\"]",
            "bogus = 1",
            "beta = 1.5",
            "batch_size = 0",
            "methods = [\"PRS\"]\n[method.PALS]\nbudget = 3",
            "[problem.g1]\nnoise_variances = [1.0]",
            "budget = -4",
            "not toml at all [",
        ] {
            assert!(matches!(parse(text), Err(BenchError::Config(_))), "{text}");
        }
    }
}
