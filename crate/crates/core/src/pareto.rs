//! Pareto domination, uncertainty rectangles and the three-way
//! classification used by the active-learning drivers.
//!
//! All objectives are minimized. A vector `a` dominates `b` (`a ≺ b`) when it
//! is no worse in every coordinate and strictly better in at least one.

use crate::error::{Error, Result};

/// Returns `true` when `a` Pareto-dominates `b`.
///
/// # Panics
///
/// Panics if the two vectors have different lengths.
#[inline]
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors differ in length");
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// Indices of the non-dominated points, in increasing order.
///
/// Identical vectors never dominate each other, so duplicates on the front
/// are all kept.
pub fn pareto_indices<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let q = points[0].as_ref().len();
    if q == 2 {
        return Ok(pareto_indices_2d(points));
    }
    Ok((0..points.len())
        .filter(|&i| {
            let pi = points[i].as_ref();
            !points.iter().any(|p| dominates(p.as_ref(), pi))
        })
        .collect())
}

// Sort-based sweep for the bi-objective case: O(n log n).
fn pareto_indices_2d<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (points[i].as_ref(), points[j].as_ref());
        a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
    });
    let mut keep = Vec::new();
    // Smallest second objective among points with strictly smaller first objective.
    let mut best_prev = f64::INFINITY;
    let mut g = 0;
    while g < order.len() {
        let x0 = points[order[g]].as_ref()[0];
        let mut end = g;
        while end < order.len() && points[order[end]].as_ref()[0] == x0 {
            end += 1;
        }
        // Within a group sharing the first objective only the minimal second
        // objective survives (ties included).
        let group_min = points[order[g]].as_ref()[1];
        for &i in &order[g..end] {
            let y = points[i].as_ref()[1];
            if y == group_min && y < best_prev {
                keep.push(i);
            }
        }
        best_prev = best_prev.min(group_min);
        g = end;
    }
    keep.sort_unstable();
    keep
}

/// Axis-aligned box in objective space. `lower` is the optimistic corner,
/// `upper` the pessimistic one.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyRegion {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl UncertaintyRegion {
    /// Builds a region, checking `lower <= upper` componentwise.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(Error::InvalidArgument(
                "region lower corner exceeds upper corner".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    /// Zero-width region at `point`.
    pub fn degenerate(point: &[f64]) -> Self {
        Self {
            lower: point.to_vec(),
            upper: point.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Euclidean distance between the optimistic and pessimistic corners.
    pub fn diameter(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l) * (u - l))
            .sum::<f64>()
            .sqrt()
    }

    pub fn contains(&self, other: &UncertaintyRegion) -> bool {
        self.lower.iter().zip(&other.lower).all(|(a, b)| a <= b)
            && self.upper.iter().zip(&other.upper).all(|(a, b)| a >= b)
    }

    pub fn contains_point(&self, z: &[f64]) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .zip(z)
            .all(|((l, u), v)| l <= v && v <= u)
    }
}

/// `mu ± sqrt(beta) * sigma`, componentwise.
pub fn rectangle_from_posterior(mu: &[f64], sigma: &[f64], beta: f64) -> Result<UncertaintyRegion> {
    if mu.len() != sigma.len() {
        return Err(Error::DimensionMismatch {
            expected: mu.len(),
            found: sigma.len(),
        });
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!("beta must be >= 0, got {beta}")));
    }
    if sigma.iter().any(|s| !(*s >= 0.0)) {
        return Err(Error::InvalidArgument("negative posterior sd".into()));
    }
    let scale = beta.sqrt();
    Ok(UncertaintyRegion {
        lower: mu.iter().zip(sigma).map(|(m, s)| m - scale * s).collect(),
        upper: mu.iter().zip(sigma).map(|(m, s)| m + scale * s).collect(),
    })
}

/// Componentwise intersection. `None` when the boxes do not overlap.
pub fn intersect_regions(prev: &UncertaintyRegion, q: &UncertaintyRegion) -> Option<UncertaintyRegion> {
    let lower: Vec<f64> = prev.lower.iter().zip(&q.lower).map(|(a, b)| a.max(*b)).collect();
    let upper: Vec<f64> = prev.upper.iter().zip(&q.upper).map(|(a, b)| a.min(*b)).collect();
    if lower.iter().zip(&upper).any(|(l, u)| l > u) {
        None
    } else {
        Some(UncertaintyRegion { lower, upper })
    }
}

/// Smallest box containing both `prev ∩ q` and the point `mu`. Collapses to
/// `mu` when the intersection is empty.
pub fn corrected_intersect(prev: &UncertaintyRegion, q: &UncertaintyRegion, mu: &[f64]) -> UncertaintyRegion {
    match intersect_regions(prev, q) {
        None => UncertaintyRegion::degenerate(mu),
        Some(r) => UncertaintyRegion {
            lower: r.lower.iter().zip(mu).map(|(a, m)| a.min(*m)).collect(),
            upper: r.upper.iter().zip(mu).map(|(a, m)| a.max(*m)).collect(),
        },
    }
}

/// Nonnegative per-objective margins applied inside the domination tests.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginVector(Vec<f64>);

impl MarginVector {
    pub fn new(epsilon: Vec<f64>) -> Result<Self> {
        if epsilon.iter().any(|e| !(*e >= 0.0) || !e.is_finite()) {
            return Err(Error::InvalidArgument("margins must be finite and >= 0".into()));
        }
        Ok(Self(epsilon))
    }

    pub fn zeros(q: usize) -> Self {
        Self(vec![0.0; q])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Pareto,
    Dominated,
    Unclassified,
}

/// Partition of the grid into predicted Pareto (`P`), dominated (`N`) and
/// unclassified (`U`) points. Each index set is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    pub pareto: Vec<usize>,
    pub dominated: Vec<usize>,
    pub unclassified: Vec<usize>,
}

impl Classification {
    pub fn len(&self) -> usize {
        self.pareto.len() + self.dominated.len() + self.unclassified.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn all_classified(&self) -> bool {
        self.unclassified.is_empty()
    }

    /// Per-index labels, length `n`.
    pub fn labels(&self, n: usize) -> Vec<Class> {
        let mut out = vec![Class::Unclassified; n];
        for &i in &self.pareto {
            out[i] = Class::Pareto;
        }
        for &i in &self.dominated {
            out[i] = Class::Dominated;
        }
        out
    }

    fn from_labels(labels: &[Class]) -> Self {
        let mut c = Self::default();
        for (i, l) in labels.iter().enumerate() {
            match l {
                Class::Pareto => c.pareto.push(i),
                Class::Dominated => c.dominated.push(i),
                Class::Unclassified => c.unclassified.push(i),
            }
        }
        c
    }
}

/// Classifies every region.
///
/// `x` is Pareto when no other point's optimistic corner (plus `ε`) dominates
/// its pessimistic corner (minus `ε`); dominated when some other point's
/// pessimistic corner (minus `ε`) dominates its optimistic corner (plus `ε`).
pub fn classify(regions: &[UncertaintyRegion], epsilon: &MarginVector) -> Result<Classification> {
    let all: Vec<usize> = (0..regions.len()).collect();
    classify_subset(regions, epsilon, &all, None)
}

/// Classifies only the indices in `candidates`; every other index keeps the
/// label given by `previous` (or is reported unclassified when `previous` is
/// `None`). Comparisons still range over all regions.
pub fn classify_subset(
    regions: &[UncertaintyRegion],
    epsilon: &MarginVector,
    candidates: &[usize],
    previous: Option<&Classification>,
) -> Result<Classification> {
    if regions.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let q = regions[0].dim();
    let eps = epsilon.as_slice();
    if eps.len() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: eps.len(),
        });
    }
    let n = regions.len();
    // Shifted corners: optimistic + ε and pessimistic − ε.
    let lo_eps: Vec<Vec<f64>> = regions
        .iter()
        .map(|r| r.lower.iter().zip(eps).map(|(l, e)| l + e).collect())
        .collect();
    let hi_eps: Vec<Vec<f64>> = regions
        .iter()
        .map(|r| r.upper.iter().zip(eps).map(|(u, e)| u - e).collect())
        .collect();

    let mut labels = match previous {
        Some(p) => p.labels(n),
        None => vec![Class::Unclassified; n],
    };
    for &x in candidates {
        let pareto = !(0..n).any(|o| o != x && dominates(&lo_eps[o], &hi_eps[x]));
        labels[x] = if pareto {
            Class::Pareto
        } else if (0..n).any(|o| o != x && dominates(&hi_eps[o], &lo_eps[x])) {
            Class::Dominated
        } else {
            Class::Unclassified
        };
    }
    Ok(Classification::from_labels(&labels))
}

/// Picks the candidate in `P ∪ U` with the largest region diameter, ties to
/// the smallest index. Visited indices are skipped when `exclude_visited`.
pub fn select_next(
    classification: &Classification,
    regions: &[UncertaintyRegion],
    exclude_visited: bool,
    visited: &[bool],
) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    let mut candidates: Vec<usize> = classification
        .pareto
        .iter()
        .chain(&classification.unclassified)
        .copied()
        .collect();
    candidates.sort_unstable();
    for i in candidates {
        if exclude_visited && visited.get(i).copied().unwrap_or(false) {
            continue;
        }
        let d = regions[i].diameter();
        match best {
            Some((_, bd)) if d <= bd => {}
            _ => best = Some((i, d)),
        }
    }
    best.map(|(i, _)| i).ok_or(Error::NoSelectablePoint)
}
