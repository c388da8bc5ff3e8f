//! CSV emission. Floats carry 9 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use pals::drivers::{IterationRecord, RunRecord};

use crate::config::ExperimentConfig;
use crate::experiment::{ExperimentResult, RunOutcome};
use crate::BenchError;

/// Shortest rendering of `x` rounded to 9 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    // Round once in scientific form, then choose the layout from the rounded exponent.
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

/// Aggregated columns; trace files append `wall_time`.
pub const RESULT_COLUMNS: [&str; 13] = [
    "problem",
    "method",
    "replication",
    "iteration",
    "evaluations_used",
    "v_d",
    "v_d_pct",
    "m",
    "m_pct",
    "pareto",
    "dominated",
    "unclassified",
    "selected",
];

pub const RUN_COLUMNS: [&str; 15] = [
    "problem",
    "method",
    "replication",
    "seed",
    "status",
    "termination",
    "evaluations",
    "iterations",
    "v_d",
    "m",
    "predicted",
    "intersection_fallbacks",
    "reml_failures",
    "reml_unconverged",
    "error",
];

fn result_fields(problem: &str, method: &str, replication: usize, row: &IterationRecord) -> Vec<String> {
    vec![
        problem.to_string(),
        method.to_string(),
        replication.to_string(),
        row.iteration.to_string(),
        row.evaluations.to_string(),
        fmt_sig(row.v_d),
        fmt_sig(100.0 * row.v_d),
        fmt_sig(row.misclassification),
        fmt_sig(100.0 * row.misclassification),
        opt(row.pareto),
        opt(row.dominated),
        opt(row.unclassified),
        opt(row.selected),
    ]
}

fn run_fields(cfg: &ExperimentConfig, run: &RunOutcome) -> Vec<String> {
    let head = vec![
        cfg.problems[run.problem].id.to_string(),
        cfg.methods[run.method].label.clone(),
        run.replication.to_string(),
        run.seed.to_string(),
    ];
    let tail = match &run.record {
        Ok(r) => {
            let last = r.last();
            vec![
                "ok".into(),
                r.termination.to_string(),
                r.evaluations.to_string(),
                r.iterations.len().to_string(),
                fmt_sig(last.v_d),
                fmt_sig(last.misclassification),
                r.predicted_set.len().to_string(),
                r.intersection_fallbacks.to_string(),
                r.reml_failures.to_string(),
                r.reml_unconverged.to_string(),
                String::new(),
            ]
        }
        Err(e) => {
            let mut v = vec!["failed".to_string()];
            v.extend(std::iter::repeat_n(String::new(), 9));
            v.push(e.clone());
            v
        }
    };
    head.into_iter().chain(tail).collect()
}

/// Directory holding one run's trace and prediction snapshots.
pub fn run_dir(out: &Path, problem: &str, method: &str) -> PathBuf {
    out.join("runs").join(problem).join(method)
}

fn write_trace(dir: &Path, stem: &str, problem: &str, method: &str, rep: usize, record: &RunRecord, timings: &[f64]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(dir.join(format!("{stem}.csv")))?;
    w.write_record(RESULT_COLUMNS.iter().chain(&["wall_time"]))?;
    for (row, t) in record.iterations.iter().zip(timings) {
        let mut f = result_fields(problem, method, rep, row);
        f.push(fmt_sig(*t));
        w.write_record(&f)?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(dir.join(format!("{stem}_predictions.csv")))?;
    w.write_record(["iteration", "index", "z1", "z2"])?;
    for row in &record.iterations {
        for (i, z) in row.predicted_set.iter().zip(&row.predicted_front) {
            w.write_record([row.iteration.to_string(), i.to_string(), format!("{:e}", z[0]), format!("{:e}", z[1])])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `results.csv` (all iterations of all runs), `runs.csv` (one line
/// per run) and per-run traces under `runs/`. The first two depend only on
/// the config and master seed.
pub fn write_experiment(cfg: &ExperimentConfig, result: &ExperimentResult) -> Result<(), BenchError> {
    fs::create_dir_all(&cfg.out)?;
    let mut results = csv::Writer::from_path(cfg.out.join("results.csv"))?;
    results.write_record(RESULT_COLUMNS)?;
    let mut runs = csv::Writer::from_path(cfg.out.join("runs.csv"))?;
    runs.write_record(RUN_COLUMNS)?;
    for run in &result.runs {
        runs.write_record(run_fields(cfg, run))?;
        let Ok(record) = &run.record else { continue };
        let problem = cfg.problems[run.problem].id.to_string();
        let method = &cfg.methods[run.method].label;
        for row in &record.iterations {
            results.write_record(result_fields(&problem, method, run.replication, row))?;
        }
        let dir = run_dir(&cfg.out, &problem, method);
        fs::create_dir_all(&dir)?;
        write_trace(&dir, &format!("rep{:04}", run.replication), &problem, method, run.replication, record, &run.timings)?;
    }
    results.flush()?;
    runs.flush()?;
    Ok(())
}

/// One parsed line of `results.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub problem: String,
    pub method: String,
    pub replication: usize,
    pub iteration: usize,
    pub evaluations_used: usize,
    pub v_d: f64,
    pub m: f64,
    pub pareto: Option<usize>,
    pub dominated: Option<usize>,
    pub unclassified: Option<usize>,
    pub selected: Option<usize>,
}

/// Reads `results.csv` from an experiment directory.
pub fn read_results(dir: &Path) -> Result<Vec<ResultRow>, BenchError> {
    let path = dir.join("results.csv");
    if !path.exists() {
        return Err(BenchError::Input(format!("no results.csv in {}", dir.display())));
    }
    let mut r = csv::Reader::from_path(&path)?;
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != RESULT_COLUMNS {
        return Err(BenchError::Input(format!("{}: unexpected columns", path.display())));
    }
    let bad = |line: usize| BenchError::Input(format!("{}: malformed line {line}", path.display()));
    let mut rows = Vec::new();
    for (n, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = n + 2;
        let num = |i: usize| rec[i].parse::<usize>().map_err(|_| bad(line));
        let opt = |i: usize| if rec[i].is_empty() { Ok(None) } else { num(i).map(Some) };
        let real = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(line));
        rows.push(ResultRow {
            problem: rec[0].to_string(),
            method: rec[1].to_string(),
            replication: num(2)?,
            iteration: num(3)?,
            evaluations_used: num(4)?,
            v_d: real(5)?,
            m: real(7)?,
            pareto: opt(9)?,
            dominated: opt(10)?,
            unclassified: opt(11)?,
            selected: opt(12)?,
        });
    }
    if rows.is_empty() {
        return Err(BenchError::Input(format!("{}: no rows", path.display())));
    }
    Ok(rows)
}

/// Reads a run's prediction snapshots: per iteration, the predicted indices
/// and front.
pub fn read_predictions(path: &Path) -> Result<Vec<(Vec<usize>, Vec<Vec<f64>>)>, BenchError> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out: Vec<(Vec<usize>, Vec<Vec<f64>>)> = Vec::new();
    let bad = || BenchError::Input(format!("{}: malformed", path.display()));
    for rec in r.records() {
        let rec = rec?;
        let it: usize = rec[0].parse().map_err(|_| bad())?;
        while out.len() <= it {
            out.push((Vec::new(), Vec::new()));
        }
        out[it].0.push(rec[1].parse().map_err(|_| bad())?);
        out[it].1.push(vec![rec[2].parse().map_err(|_| bad())?, rec[3].parse().map_err(|_| bad())?]);
    }
    Ok(out)
}
