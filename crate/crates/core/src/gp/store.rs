use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
struct PointStats {
    count: usize,
    mean: Vec<f64>,
    /// Sum of squared deviations from the mean, per objective.
    m2: Vec<f64>,
}

/// Replicate-folded noisy observations on a finite grid.
///
/// Each visited grid point keeps only its replicate count and, per
/// objective, the running mean and sum of squared deviations. The visit log
/// records every fold in order.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationStore {
    num_objectives: usize,
    points: Vec<PointStats>,
    visits: Vec<(usize, usize)>,
}

/// Sufficient statistics for one objective, restricted to visited points.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldedData {
    /// Distinct visited grid indices, ascending.
    pub indices: Vec<usize>,
    pub counts: Vec<usize>,
    pub means: Vec<f64>,
    /// Total within-point sum of squared deviations, when the replicates are
    /// available. `None` for derived data such as scalarized means.
    pub within_ss: Option<f64>,
    /// Total number of individual observations.
    pub total: usize,
}

impl FoldedData {
    /// Builds data from per-point means with no within-point information.
    pub fn from_means(indices: Vec<usize>, counts: Vec<usize>, means: Vec<f64>) -> Result<Self> {
        if indices.len() != counts.len() || indices.len() != means.len() {
            return Err(Error::InvalidArgument("folded data columns differ in length".into()));
        }
        let total = counts.iter().sum();
        Ok(Self { indices, counts, means, within_ss: None, total })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Applies `y -> a * y + b` to every observation.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        Self {
            indices: self.indices.clone(),
            counts: self.counts.clone(),
            means: self.means.iter().map(|m| a * m + b).collect(),
            within_ss: self.within_ss.map(|s| a * a * s),
            total: self.total,
        }
    }
}

impl ObservationStore {
    pub fn new(grid_size: usize, num_objectives: usize) -> Self {
        Self {
            num_objectives,
            points: vec![PointStats::default(); grid_size],
            visits: Vec::new(),
        }
    }

    pub fn grid_size(&self) -> usize {
        self.points.len()
    }

    pub fn num_objectives(&self) -> usize {
        self.num_objectives
    }

    /// Folds a batch of `k` observations (each of length `q`) at `index`.
    pub fn fold(&mut self, index: usize, values: &[Vec<f64>]) -> Result<()> {
        if index >= self.points.len() {
            return Err(Error::IndexOutOfRange { index, size: self.points.len() });
        }
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty observation batch".into()));
        }
        let q = self.num_objectives;
        if let Some(row) = values.iter().find(|r| r.len() != q) {
            return Err(Error::DimensionMismatch { expected: q, found: row.len() });
        }
        let k = values.len();
        // Batch statistics, shifted by the first row to limit cancellation.
        let mut b_mean = vec![0.0; q];
        let mut b_m2 = vec![0.0; q];
        for j in 0..q {
            let shift = values[0][j];
            let mut s = 0.0;
            let mut s2 = 0.0;
            for row in values {
                let d = row[j] - shift;
                s += d;
                s2 += d * d;
            }
            let mean_d = s / k as f64;
            b_mean[j] = shift + mean_d;
            b_m2[j] = (s2 - s * mean_d).max(0.0);
        }

        let p = &mut self.points[index];
        if p.count == 0 {
            p.count = k;
            p.mean = b_mean;
            p.m2 = b_m2;
        } else {
            let (na, nb) = (p.count as f64, k as f64);
            let n = na + nb;
            for j in 0..q {
                let delta = b_mean[j] - p.mean[j];
                p.mean[j] += delta * nb / n;
                p.m2[j] += b_m2[j] + delta * delta * na * nb / n;
            }
            p.count += k;
        }
        self.visits.push((index, k));
        Ok(())
    }

    pub fn count(&self, index: usize) -> usize {
        self.points[index].count
    }

    /// Empirical mean vector at `index`, if visited.
    pub fn mean(&self, index: usize) -> Option<&[f64]> {
        let p = &self.points[index];
        (p.count > 0).then_some(p.mean.as_slice())
    }

    /// Unbiased sample variance at `index` for `objective` (needs ≥ 2 replicates).
    pub fn sample_variance(&self, index: usize, objective: usize) -> Option<f64> {
        let p = &self.points[index];
        (p.count > 1).then(|| p.m2[objective] / (p.count - 1) as f64)
    }

    pub fn total_evaluations(&self) -> usize {
        self.points.iter().map(|p| p.count).sum()
    }

    /// Ordered `(index, batch size)` log of every fold.
    pub fn visits(&self) -> &[(usize, usize)] {
        &self.visits
    }

    pub fn visited_mask(&self) -> Vec<bool> {
        self.points.iter().map(|p| p.count > 0).collect()
    }

    pub fn distinct_visited(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].count > 0).collect()
    }

    pub fn folded(&self, objective: usize) -> FoldedData {
        let indices = self.distinct_visited();
        let counts = indices.iter().map(|&i| self.points[i].count).collect();
        let means = indices.iter().map(|&i| self.points[i].mean[objective]).collect();
        let within_ss = indices.iter().map(|&i| self.points[i].m2[objective]).sum();
        FoldedData {
            indices,
            counts,
            means,
            within_ss: Some(within_ss),
            total: self.total_evaluations(),
        }
    }
}
