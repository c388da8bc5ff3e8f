use std::path::Path;
use std::process::Command;

use pals::metrics::{clipped_symmetric_difference_volume, misclassification_rate, DEFAULT_REFERENCE};
use pals::problems::{BenchmarkProblem, Problem};
use pals_bench::output::{read_predictions, read_results, run_dir};

const SMALL: &str = r#"
problems = ["g5", "g6"]
methods = ["PRS", "PALS", "pals-wide"]
replications = 2
seed = 7
budget = 400
reml_starts = 2

[method.pals-wide]
algorithm = "PALS"
beta = 0.9
"#;

fn bench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pals-bench"))
}

fn run_with(dir: &Path, config: &str, extra: &[&str]) -> std::process::Output {
    let cfg = dir.join("exp.toml");
    std::fs::write(&cfg, config).unwrap();
    bench()
        .args(["run", "--quiet", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn run_table_curves_and_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let out = run_with(a.path(), SMALL, &["--jobs", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_with(b.path(), SMALL, &["--jobs", "3"]);
    assert!(out.status.success());
    for f in ["results.csv", "runs.csv"] {
        let x = std::fs::read(a.path().join("out").join(f)).unwrap();
        let y = std::fs::read(b.path().join("out").join(f)).unwrap();
        assert_eq!(x, y, "{f} depends on --jobs");
    }

    let dir = a.path().join("out");
    let rows = read_results(&dir).unwrap();
    // 2 problems x 3 methods x 2 replications, 3 iterations each.
    assert_eq!(rows.len(), 36);
    let header = std::fs::read_to_string(dir.join("results.csv")).unwrap();
    assert!(header.starts_with(
        "problem,method,replication,iteration,evaluations_used,v_d,v_d_pct,m,m_pct,pareto,dominated,unclassified,selected\n"
    ));
    let trace = std::fs::read_to_string(run_dir(&dir, "g5", "PALS").join("rep0001.csv")).unwrap();
    assert!(trace.lines().next().unwrap().ends_with(",selected,wall_time"));

    let out = bench().arg("table").arg(&dir).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    let table = std::fs::read_to_string(dir.join("table.csv")).unwrap();
    for p in ["g5", "g6"] {
        let best = table.lines().filter(|l| l.starts_with(p)).filter(|l| l.split(',').nth(5) == Some("true")).count();
        assert_eq!(best, 1);
    }

    let out = bench().arg("curves").arg(&dir).args(["--problem", "g6", "--metric", "m"]).output().unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 3);
    let out = bench().arg("curves").arg(&dir).args(["--problem", "g6", "--metric", "hv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stored_predictions_reproduce_the_metrics() {
    let t = tempfile::tempdir().unwrap();
    let out = run_with(t.path(), "problems = [\"g7\"]\nmethods = [\"CoRS\", \"PALS\"]\nreplications = 1\nbudget = 600\nreml_starts = 2\n", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = t.path().join("out");
    let problem = BenchmarkProblem::by_name("g7").unwrap();
    let truth = problem.truth();
    let rows = read_results(&dir).unwrap();
    for method in ["CoRS", "PALS"] {
        let snaps = read_predictions(&run_dir(&dir, "g7", method).join("rep0000_predictions.csv")).unwrap();
        let mine: Vec<_> = rows.iter().filter(|r| r.method == method).collect();
        assert_eq!(snaps.len(), mine.len());
        for (row, (set, front)) in mine.iter().zip(&snaps) {
            let v_d = clipped_symmetric_difference_volume(&truth.front, front, DEFAULT_REFERENCE);
            let m = misclassification_rate(&truth.pareto_set, set, 441).unwrap();
            assert!((v_d - row.v_d).abs() <= 5e-9 * v_d.max(1e-300), "{v_d} vs {}", row.v_d);
            assert!((m - row.m).abs() <= 5e-9 * m.max(1e-300));
        }
    }
}

#[test]
fn zero_budget_emits_the_initial_design_only() {
    let t = tempfile::tempdir().unwrap();
    let out = run_with(t.path(), "problems = [\"g2\"]\nmethods = [\"PALS\"]\nreplications = 1\nbudget = 0\n", &[]);
    assert!(out.status.success());
    let rows = read_results(&t.path().join("out")).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].evaluations_used, 200);
    assert_eq!(rows[0].selected, None);
}

#[test]
fn invalid_configs_exit_with_2() {
    let t = tempfile::tempdir().unwrap();
    for bad in ["replications = 0", "methods = [\"ParEGO-KG\"]", "budget = \"lots\"", "[problem.g12]\n"] {
        let out = run_with(t.path(), bad, &[]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("invalid config"));
    }
    let out = bench().args(["run", "--profile", "huge"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bench().args(["run", "--config", "/nonexistent/exp.toml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_runs_are_recorded_and_exit_with_1() {
    // More initial points than the grid holds fails every run at design time.
    let t = tempfile::tempdir().unwrap();
    let out = run_with(t.path(), "problems = [\"g3\"]\nmethods = [\"PRS\"]\nreplications = 2\nn0 = 500\n", &[]);
    assert_eq!(out.status.code(), Some(1));
    let runs = std::fs::read_to_string(t.path().join("out/runs.csv")).unwrap();
    assert_eq!(runs.lines().filter(|l| l.contains(",failed,")).count(), 2);
}

#[test]
fn table_of_an_empty_directory_fails() {
    let t = tempfile::tempdir().unwrap();
    let out = bench().arg("table").arg(t.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn problems_subcommands() {
    let out = bench().args(["problems", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("\ng5,f6,f7,0.5,0.5,0.5,0.5,700,5600,"));

    let out = bench().args(["problems", "truth", "g2"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 442);
    assert_eq!(text.lines().skip(1).filter(|l| l.ends_with(",1")).count(), 10);
    assert!(text.lines().nth(1).unwrap().starts_with("0,0,0,"));

    let out = bench().args(["problems", "truth", "g0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validate_reports_each_check() {
    let out = bench().arg("validate").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["cardinality g5", "replicate folding", "single-point V_d", "beta coverage 0.5"] {
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{name}");
    }
    // g1's printed definition gives 19 Pareto points, not 136.
    assert!(text.contains("FAIL cardinality g1: 19 Pareto points, expected 136"));
    assert_eq!(out.status.code(), Some(1));
}
