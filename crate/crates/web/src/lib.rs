//! Browser bindings: benchmark ground truths, single optimizer runs, and the
//! β coverage mapping.
//!
//! The logic lives in plain functions so it can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use pals::drivers::{beta_fixed, run, Algorithm, RunConfig};
use pals::pareto::Class;
use pals::problems::{BenchmarkProblem, Problem};
use wasm_bindgen::prelude::*;

/// Scaled noiseless objectives of a problem and its Pareto set.
#[wasm_bindgen]
pub struct Truth {
    g1: Vec<f64>,
    g2: Vec<f64>,
    pareto: Vec<u32>,
    noise_sd: Vec<f64>,
}

#[wasm_bindgen]
impl Truth {
    #[wasm_bindgen(getter)]
    pub fn g1(&self) -> Vec<f64> {
        self.g1.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn g2(&self) -> Vec<f64> {
        self.g2.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn pareto(&self) -> Vec<u32> {
        self.pareto.clone()
    }

    /// Noise standard deviation per objective, in scaled units.
    #[wasm_bindgen(getter)]
    pub fn noise_sd(&self) -> Vec<f64> {
        self.noise_sd.clone()
    }
}

pub fn truth_of(problem: &str) -> Result<Truth, String> {
    let p = BenchmarkProblem::by_name(problem).map_err(|e| e.to_string())?;
    let t = p.truth();
    Ok(Truth {
        g1: t.values.iter().map(|v| v[0]).collect(),
        g2: t.values.iter().map(|v| v[1]).collect(),
        pareto: t.pareto_set.iter().map(|&i| i as u32).collect(),
        noise_sd: p.scaled_noise_sd().to_vec(),
    })
}

#[wasm_bindgen]
pub fn truth(problem: &str) -> Result<Truth, JsError> {
    truth_of(problem).map_err(|e| JsError::new(&e))
}

/// Trace and final state of one optimizer run.
#[wasm_bindgen]
pub struct RunSummary {
    v_d: Vec<f64>,
    misclassification: Vec<f64>,
    evaluations: Vec<u32>,
    selected: Vec<i32>,
    predicted: Vec<u32>,
    predicted_g1: Vec<f64>,
    predicted_g2: Vec<f64>,
    labels: Vec<u8>,
    termination: String,
}

#[wasm_bindgen]
impl RunSummary {
    /// Per iteration, as fractions.
    #[wasm_bindgen(getter)]
    pub fn v_d(&self) -> Vec<f64> {
        self.v_d.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn misclassification(&self) -> Vec<f64> {
        self.misclassification.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn evaluations(&self) -> Vec<u32> {
        self.evaluations.clone()
    }

    /// Selected grid index per iteration, -1 on the last.
    #[wasm_bindgen(getter)]
    pub fn selected(&self) -> Vec<i32> {
        self.selected.clone()
    }

    /// Final plug-in Pareto set.
    #[wasm_bindgen(getter)]
    pub fn predicted(&self) -> Vec<u32> {
        self.predicted.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn predicted_g1(&self) -> Vec<f64> {
        self.predicted_g1.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn predicted_g2(&self) -> Vec<f64> {
        self.predicted_g2.clone()
    }

    /// Final class per grid point for PAL and PALS: 0 Pareto, 1 dominated,
    /// 2 unclassified. Empty for the other methods.
    #[wasm_bindgen(getter)]
    pub fn labels(&self) -> Vec<u8> {
        self.labels.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn termination(&self) -> String {
        self.termination.clone()
    }
}

pub fn run_once(problem: &str, method: &str, budget: u32, batch: u32, coverage: f64, seed: u32) -> Result<RunSummary, String> {
    let p = BenchmarkProblem::by_name(problem).map_err(|e| e.to_string())?;
    let alg: Algorithm = method.parse().map_err(|e: pals::Error| e.to_string())?;
    let mut c = RunConfig::new(alg);
    c.budget = budget as usize;
    c.batch_size = batch as usize;
    c.beta = pals::drivers::BetaMode::Fixed { coverage };
    // Fewer restarts keep the page responsive.
    c.reml.starts = 2;
    let r = run(&p, &c, seed as u64).map_err(|e| e.to_string())?;
    let n = p.grid().len();
    let labels = r.final_classification.as_ref().map_or(Vec::new(), |c| {
        c.labels(n)
            .into_iter()
            .map(|l| match l {
                Class::Pareto => 0,
                Class::Dominated => 1,
                Class::Unclassified => 2,
            })
            .collect()
    });
    Ok(RunSummary {
        v_d: r.iterations.iter().map(|x| x.v_d).collect(),
        misclassification: r.iterations.iter().map(|x| x.misclassification).collect(),
        evaluations: r.iterations.iter().map(|x| x.evaluations as u32).collect(),
        selected: r.iterations.iter().map(|x| x.selected.map_or(-1, |i| i as i32)).collect(),
        predicted: r.predicted_set.iter().map(|&i| i as u32).collect(),
        predicted_g1: r.predicted_front.iter().map(|z| z[0]).collect(),
        predicted_g2: r.predicted_front.iter().map(|z| z[1]).collect(),
        labels,
        termination: r.termination.to_string(),
    })
}

/// Runs `method` (PRS, CoRS, ParEGO-EIm, PALS or PAL) on `problem`.
#[wasm_bindgen]
pub fn run_method(problem: &str, method: &str, budget: u32, batch: u32, coverage: f64, seed: u32) -> Result<RunSummary, JsError> {
    run_once(problem, method, budget, batch, coverage, seed).map_err(|e| JsError::new(&e))
}

/// β whose rectangles have marginal coverage `p`.
#[wasm_bindgen]
pub fn beta_for_coverage(p: f64) -> Result<f64, JsError> {
    beta_fixed(p).map_err(|e| JsError::new(&e.to_string()))
}
