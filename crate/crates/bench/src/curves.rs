//! Per-iteration averages of one metric, one curve per method.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::output::{fmt_sig, ResultRow};
use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    VdPct,
    MPct,
    Pareto,
    Dominated,
    Unclassified,
}

impl FromStr for Metric {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "v_d" | "vd" => Ok(Metric::VdPct),
            "m" => Ok(Metric::MPct),
            "pareto" => Ok(Metric::Pareto),
            "dominated" => Ok(Metric::Dominated),
            "unclassified" => Ok(Metric::Unclassified),
            _ => Err(BenchError::Input(format!(
                "unknown metric {s:?} (expected v_d, m, pareto, dominated or unclassified)"
            ))),
        }
    }
}

impl Metric {
    fn value(self, r: &ResultRow) -> Option<f64> {
        match self {
            Metric::VdPct => Some(100.0 * r.v_d),
            Metric::MPct => Some(100.0 * r.m),
            Metric::Pareto => r.pareto.map(|v| v as f64),
            Metric::Dominated => r.dominated.map(|v| v as f64),
            Metric::Unclassified => r.unclassified.map(|v| v as f64),
        }
    }
}

/// CSV `method,iteration,mean,runs`. A run that stopped early keeps
/// contributing its final value, so every point averages the same runs.
/// An empty `methods` filter keeps all methods.
pub fn curves_csv(rows: &[ResultRow], problem: &str, metric: Metric, methods: &[String]) -> Result<String, BenchError> {
    let mut order: Vec<String> = Vec::new();
    // method -> replication -> values by iteration
    let mut series: BTreeMap<String, BTreeMap<usize, Vec<(usize, f64)>>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.problem == problem) {
        if !methods.is_empty() && !methods.contains(&r.method) {
            continue;
        }
        let Some(v) = metric.value(r) else { continue };
        if !order.contains(&r.method) {
            order.push(r.method.clone());
        }
        series.entry(r.method.clone()).or_default().entry(r.replication).or_default().push((r.iteration, v));
    }
    if order.is_empty() {
        return Err(BenchError::Input(format!("no {problem} rows for the requested methods and metric")));
    }
    let mut s = String::from("method,iteration,mean,runs\n");
    for method in order {
        let runs = &series[&method];
        let mut runs: Vec<Vec<(usize, f64)>> = runs.values().cloned().collect();
        for r in &mut runs {
            r.sort_by_key(|(it, _)| *it);
        }
        let horizon = runs.iter().map(|r| r.last().map_or(0, |x| x.0)).max().unwrap_or(0);
        for it in 0..=horizon {
            let vals: Vec<f64> = runs
                .iter()
                .filter_map(|r| r.iter().take_while(|(i, _)| *i <= it).last().or(r.first()).map(|x| x.1))
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let _ = writeln!(s, "{},{},{},{}", method, it, fmt_sig(mean), vals.len());
        }
    }
    Ok(s)
}
