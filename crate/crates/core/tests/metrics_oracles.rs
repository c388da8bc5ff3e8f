use pals::metrics::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const R: [f64; 2] = DEFAULT_REFERENCE;

fn random_front(rng: &mut ChaCha8Rng, max: usize) -> Vec<Vec<f64>> {
    let n = rng.gen_range(1..=max);
    (0..n).map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect()
}

fn dominated_by(front: &[Vec<f64>], y: [f64; 2]) -> bool {
    front.iter().any(|z| z[0] <= y[0] && z[1] <= y[1])
}

/// Monte-Carlo estimates of V(A), V(B) and |D(A) Δ D(B)| with standard errors,
/// sampling uniformly over `[lo, R]`.
fn monte_carlo(a: &[Vec<f64>], b: &[Vec<f64>], samples: usize, seed: u64) -> [(f64, f64); 3] {
    let lo = [0.0, 0.0];
    let area = (R[0] - lo[0]) * (R[1] - lo[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = [0usize; 3];
    for _ in 0..samples {
        let y = [rng.gen_range(lo[0]..R[0]), rng.gen_range(lo[1]..R[1])];
        let (ia, ib) = (dominated_by(a, y), dominated_by(b, y));
        hits[0] += ia as usize;
        hits[1] += ib as usize;
        hits[2] += (ia != ib) as usize;
    }
    hits.map(|h| {
        let p = h as f64 / samples as f64;
        (p * area, area * (p * (1.0 - p) / samples as f64).sqrt())
    })
}

#[test]
fn volumes_agree_with_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for pair in 0..25 {
        let a = random_front(&mut rng, 50);
        let b = random_front(&mut rng, 50);
        let mc = monte_carlo(&a, &b, 1_000_000, pair);
        let exact = [
            dominated_volume_2d(&a, R).unwrap(),
            dominated_volume_2d(&b, R).unwrap(),
            symmetric_difference_volume(&a, &b, R).unwrap(),
        ];
        for (e, (m, se)) in exact.iter().zip(mc) {
            assert!((e - m).abs() <= 3.0 * se + 1e-12, "pair {pair}: exact {e}, mc {m} ± {se}");
        }
    }
}

#[test]
fn hand_derived_cases() {
    let v = symmetric_difference_volume(&[vec![0.0, 0.0]], &[vec![0.1, 0.1]], R).unwrap();
    assert!((v - 0.21).abs() < 1e-12);
    let f = vec![vec![0.2, 0.4], vec![0.5, 0.1]];
    assert_eq!(symmetric_difference_volume(&f, &f, R).unwrap(), 0.0);
    assert!((misclassification_rate(&[1, 2, 3], &[2, 3, 4, 5], 441).unwrap() - 3.0 / 441.0).abs() < 1e-15);
}

fn front_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 0..30)
}

proptest! {
    #[test]
    fn symmetric_difference_is_a_pseudometric(a in front_strategy(), b in front_strategy(), c in front_strategy()) {
        let d = |x: &[Vec<f64>], y: &[Vec<f64>]| symmetric_difference_volume(x, y, R).unwrap();
        let (ab, ba, bc, ac) = (d(&a, &b), d(&b, &a), d(&b, &c), d(&a, &c));
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert_eq!(d(&a, &a), 0.0);
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn dominated_points_change_no_metric(a in front_strategy(), b in front_strategy(), dx in 0.0f64..0.05, dy in 0.0f64..0.05) {
        prop_assume!(!b.is_empty());
        let mut b2 = b.clone();
        b2.push(vec![(b[0][0] + dx + 1e-3).min(1.05), (b[0][1] + dy).min(1.05)]);
        let v = dominated_volume_2d(&b, R).unwrap();
        let v2 = dominated_volume_2d(&b2, R).unwrap();
        prop_assert!((v - v2).abs() < 1e-12);
        let s = symmetric_difference_volume(&a, &b, R).unwrap();
        let s2 = symmetric_difference_volume(&a, &b2, R).unwrap();
        prop_assert!((s - s2).abs() < 1e-12);
    }

    #[test]
    fn misclassification_is_relabeling_invariant(
        truth in prop::collection::btree_set(0usize..441, 0..100),
        pred in prop::collection::btree_set(0usize..441, 0..100),
        shift in 0usize..441,
    ) {
        let t: Vec<usize> = truth.iter().copied().collect();
        let p: Vec<usize> = pred.iter().copied().collect();
        let relabel = |v: &[usize]| v.iter().map(|i| (i * 13 + shift) % 441).collect::<Vec<_>>();
        let m = misclassification_rate(&t, &p, 441).unwrap();
        prop_assert_eq!(m, misclassification_rate(&relabel(&t), &relabel(&p), 441).unwrap());
        prop_assert!((0.0..=1.0).contains(&m));
    }

    #[test]
    fn coverage_sums_to_mean_front_size(values in prop::collection::vec(prop::collection::vec(prop::collection::vec(0u8..5, 2), 8), 1..6)) {
        let paths: Vec<SamplePath> = values
            .iter()
            .map(|p| p.iter().map(|z| z.iter().map(|v| *v as f64).collect()).collect())
            .collect();
        let cov = coverage_map(&paths).unwrap();
        let mean_size = paths.iter().map(|p| pals::pareto::pareto_indices(p).unwrap().len()).sum::<usize>() as f64 / paths.len() as f64;
        prop_assert!((cov.iter().sum::<f64>() - mean_size).abs() < 1e-12);
        prop_assert!(cov.iter().all(|c| (0.0..=1.0).contains(c)));
    }
}
