//! Final-iteration averages per (problem, method), in percent.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::output::{fmt_sig, read_results, ResultRow};
use crate::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub problem: String,
    pub method: String,
    pub runs: usize,
    pub v_d_pct: f64,
    pub m_pct: f64,
    pub v_d_best: bool,
    pub v_d_within_10: bool,
    pub m_best: bool,
    pub m_within_10: bool,
}

/// Last row of each run, keyed by (problem, method) in order of first appearance.
fn final_rows(rows: &[ResultRow]) -> Vec<((String, String), Vec<&ResultRow>)> {
    let mut order: Vec<(String, String)> = Vec::new();
    let mut last: BTreeMap<(String, String, usize), &ResultRow> = BTreeMap::new();
    for r in rows {
        let key = (r.problem.clone(), r.method.clone());
        if !order.contains(&key) {
            order.push(key);
        }
        let slot = last.entry((r.problem.clone(), r.method.clone(), r.replication)).or_insert(r);
        if r.iteration >= slot.iteration {
            *slot = r;
        }
    }
    order
        .into_iter()
        .map(|(p, m)| {
            let runs = last
                .iter()
                .filter(|((lp, lm, _), _)| *lp == p && *lm == m)
                .map(|(_, r)| *r)
                .collect();
            ((p, m), runs)
        })
        .collect()
}

/// Index of the smallest value, ties to the first.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

pub fn summarize(rows: &[ResultRow]) -> Vec<TableRow> {
    let mut out: Vec<TableRow> = final_rows(rows)
        .into_iter()
        .map(|((problem, method), runs)| {
            let n = runs.len() as f64;
            TableRow {
                problem,
                method,
                runs: runs.len(),
                v_d_pct: 100.0 * runs.iter().map(|r| r.v_d).sum::<f64>() / n,
                m_pct: 100.0 * runs.iter().map(|r| r.m).sum::<f64>() / n,
                v_d_best: false,
                v_d_within_10: false,
                m_best: false,
                m_within_10: false,
            }
        })
        .collect();
    let mut problems: Vec<String> = Vec::new();
    for r in &out {
        if !problems.contains(&r.problem) {
            problems.push(r.problem.clone());
        }
    }
    for p in problems {
        let idx: Vec<usize> = (0..out.len()).filter(|&i| out[i].problem == p).collect();
        let vd: Vec<f64> = idx.iter().map(|&i| out[i].v_d_pct).collect();
        let m: Vec<f64> = idx.iter().map(|&i| out[i].m_pct).collect();
        let (bv, bm) = (argmin(&vd), argmin(&m));
        for (k, &i) in idx.iter().enumerate() {
            out[i].v_d_best = k == bv;
            out[i].m_best = k == bm;
            out[i].v_d_within_10 = vd[k] <= 1.1 * vd[bv];
            out[i].m_within_10 = m[k] <= 1.1 * m[bm];
        }
    }
    out
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("problem,method,runs,v_d_pct,m_pct,v_d_best,v_d_within_10,m_best,m_within_10\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.problem,
            r.method,
            r.runs,
            fmt_sig(r.v_d_pct),
            fmt_sig(r.m_pct),
            r.v_d_best,
            r.v_d_within_10,
            r.m_best,
            r.m_within_10
        );
    }
    s
}

/// Aligned text; `*` marks the best value of a problem, `+` values within 10% of it.
pub fn table_text(rows: &[TableRow]) -> String {
    let mark = |best: bool, near: bool| if best { "*" } else if near { "+" } else { " " };
    let w = rows.iter().map(|r| r.method.len()).max().unwrap_or(6).max(6);
    let mut s = format!("{:<7} {:<w$} {:>5} {:>11} {:>11}\n", "problem", "method", "runs", "V_d %", "M %");
    for r in rows {
        let _ = writeln!(
            s,
            "{:<7} {:<w$} {:>5} {:>10.3}{} {:>10.3}{}",
            r.problem,
            r.method,
            r.runs,
            r.v_d_pct,
            mark(r.v_d_best, r.v_d_within_10),
            r.m_pct,
            mark(r.m_best, r.m_within_10)
        );
    }
    s
}

/// Reads `results.csv` under `dir`, writes `table.csv` next to it and returns
/// the text rendering.
pub fn cmd_table(dir: &Path) -> Result<String, BenchError> {
    let rows = summarize(&read_results(dir)?);
    std::fs::write(dir.join("table.csv"), table_csv(&rows))?;
    Ok(table_text(&rows))
}
