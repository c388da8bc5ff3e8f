//! Error metrics for Pareto set/front predictions, and the attainment and
//! coverage maps estimated from posterior sample paths.

use crate::error::{Error, Result};
use crate::pareto::{dominates, pareto_indices};

/// Default reference point for objectives scaled to `[0, 1]`.
pub const DEFAULT_REFERENCE: [f64; 2] = [1.1, 1.1];

/// Pareto-filtered copy of `front`, sorted by the first objective.
fn canonical_staircase(front: &[Vec<f64>]) -> Vec<[f64; 2]> {
    if front.is_empty() {
        return Vec::new();
    }
    let keep = pareto_indices(front).expect("nonempty");
    let mut pts: Vec<[f64; 2]> = keep.iter().map(|&i| [front[i][0], front[i][1]]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    pts
}

fn staircase_area(stairs: &[[f64; 2]], reference: [f64; 2]) -> f64 {
    let mut area = 0.0;
    for (i, p) in stairs.iter().enumerate() {
        let next_x = stairs.get(i + 1).map_or(reference[0], |n| n[0]);
        area += (next_x - p[0]) * (reference[1] - p[1]);
    }
    area
}

fn check_front(front: &[Vec<f64>], reference: [f64; 2]) -> Result<()> {
    for p in front {
        if p.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: p.len() });
        }
        if !dominates(p, &reference) {
            return Err(Error::ReferencePointViolated);
        }
    }
    Ok(())
}

// Points that do not dominate the reference point bound no area.
fn clip_front(front: &[Vec<f64>], reference: [f64; 2]) -> Vec<Vec<f64>> {
    front
        .iter()
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .cloned()
        .collect()
}

/// Exact area of the region dominated by `front` and bounded by `reference`.
///
/// Every front point must dominate the reference point.
pub fn dominated_volume_2d(front: &[Vec<f64>], reference: [f64; 2]) -> Result<f64> {
    check_front(front, reference)?;
    Ok(staircase_area(&canonical_staircase(front), reference))
}

/// As [`dominated_volume_2d`], but points outside the reference box are
/// dropped instead of rejected (they bound an empty region).
pub fn clipped_dominated_volume_2d(front: &[Vec<f64>], reference: [f64; 2]) -> f64 {
    staircase_area(&canonical_staircase(&clip_front(front, reference)), reference)
}

fn union_front(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter().chain(b).cloned().collect()
}

/// Area of the symmetric difference of the regions dominated by the two fronts.
pub fn symmetric_difference_volume(truth: &[Vec<f64>], predicted: &[Vec<f64>], reference: [f64; 2]) -> Result<f64> {
    check_front(truth, reference)?;
    check_front(predicted, reference)?;
    Ok(symmetric_difference_unchecked(truth, predicted, reference))
}

/// Clipped variant of [`symmetric_difference_volume`], used for run traces
/// where predicted means may fall outside the reference box.
pub fn clipped_symmetric_difference_volume(truth: &[Vec<f64>], predicted: &[Vec<f64>], reference: [f64; 2]) -> f64 {
    symmetric_difference_unchecked(&clip_front(truth, reference), &clip_front(predicted, reference), reference)
}

fn symmetric_difference_unchecked(a: &[Vec<f64>], b: &[Vec<f64>], reference: [f64; 2]) -> f64 {
    // D(A ∪ B) = D(A) ∪ D(B), so |D(A) Δ D(B)| = 2 V(A ∪ B) - V(A) - V(B).
    let va = staircase_area(&canonical_staircase(a), reference);
    let vb = staircase_area(&canonical_staircase(b), reference);
    let vu = staircase_area(&canonical_staircase(&union_front(a, b)), reference);
    (2.0 * vu - va - vb).max(0.0)
}

/// Fraction of the grid on which the two index sets disagree.
pub fn misclassification_rate(truth: &[usize], predicted: &[usize], grid_size: usize) -> Result<f64> {
    let mut in_truth = vec![false; grid_size];
    let mut in_pred = vec![false; grid_size];
    for (set, mask) in [(truth, &mut in_truth), (predicted, &mut in_pred)] {
        for &i in set {
            if i >= grid_size {
                return Err(Error::IndexOutOfRange { index: i, size: grid_size });
            }
            mask[i] = true;
        }
    }
    let differ = in_truth.iter().zip(&in_pred).filter(|(a, b)| a != b).count();
    Ok(differ as f64 / grid_size as f64)
}

/// Objective values of one joint posterior draw: `values[i]` is the vector at grid index `i`.
pub type SamplePath = Vec<Vec<f64>>;

/// For each query point, the fraction of paths whose Pareto front dominates it.
pub fn attainment_map(paths: &[SamplePath], queries: &[Vec<f64>]) -> Result<Vec<f64>> {
    if paths.is_empty() {
        return Err(Error::InvalidArgument("at least one sample path is required".into()));
    }
    let fronts: Vec<Vec<&Vec<f64>>> = paths
        .iter()
        .map(|path| Ok(pareto_indices(path)?.into_iter().map(|i| &path[i]).collect()))
        .collect::<Result<_>>()?;
    Ok(queries
        .iter()
        .map(|y| {
            let hits = fronts.iter().filter(|f| f.iter().any(|z| dominates(z, y))).count();
            hits as f64 / paths.len() as f64
        })
        .collect())
}

/// For each grid point, the fraction of paths in which it is Pareto-optimal.
pub fn coverage_map(paths: &[SamplePath]) -> Result<Vec<f64>> {
    let first = paths
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one sample path is required".into()))?;
    let mut counts = vec![0usize; first.len()];
    for path in paths {
        for i in pareto_indices(path)? {
            counts[i] += 1;
        }
    }
    Ok(counts.into_iter().map(|c| c as f64 / paths.len() as f64).collect())
}
