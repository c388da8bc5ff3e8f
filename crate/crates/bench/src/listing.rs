//! CSV views of the benchmark problems.

use std::fmt::Write as _;

use pals::problems::{BenchmarkProblem, Problem, ProblemId};

use crate::output::fmt_sig;
use crate::BenchError;

pub fn problems_csv() -> Result<String, BenchError> {
    let mut s = String::from(
        "problem,f1,f2,shift1_x1,shift1_x2,shift2_x1,shift2_x2,noise_var1,noise_var2,scaled_noise_sd1,scaled_noise_sd2,pareto_size,published_pareto_size\n",
    );
    for id in ProblemId::all() {
        let p = BenchmarkProblem::new(id)?;
        let [a, b] = p.objectives();
        let nv = p.noise_variances();
        let sd = p.scaled_noise_sd();
        let _ = writeln!(
            s,
            "{id},{},{},{},{},{},{},{},{},{},{},{},{}",
            a.function,
            b.function,
            fmt_sig(a.shift[0]),
            fmt_sig(a.shift[1]),
            fmt_sig(b.shift[0]),
            fmt_sig(b.shift[1]),
            fmt_sig(nv[0]),
            fmt_sig(nv[1]),
            fmt_sig(sd[0]),
            fmt_sig(sd[1]),
            p.truth().pareto_set.len(),
            id.published_pareto_size()
        );
    }
    Ok(s)
}

/// Grid, scaled noiseless values and Pareto membership of one problem.
pub fn truth_csv(name: &str) -> Result<String, BenchError> {
    let p = BenchmarkProblem::by_name(name).map_err(|e| BenchError::Input(e.to_string()))?;
    let truth = p.truth();
    let mut s = String::from("index,x1,x2,g1,g2,pareto\n");
    for (i, x) in p.grid().points().iter().enumerate() {
        let _ = writeln!(
            s,
            "{i},{},{},{},{},{}",
            fmt_sig(x[0]),
            fmt_sig(x[1]),
            fmt_sig(truth.values[i][0]),
            fmt_sig(truth.values[i][1]),
            u8::from(truth.pareto_set.binary_search(&i).is_ok())
        );
    }
    Ok(s)
}
