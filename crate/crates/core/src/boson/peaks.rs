use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub index: usize,
    pub prominence: f64,
}

/// Sparse table for range minima.
struct MinTable {
    levels: Vec<Vec<f64>>,
}

impl MinTable {
    fn new(x: &[f64]) -> Self {
        let mut levels = vec![x.to_vec()];
        let mut width = 1;
        while 2 * width <= x.len() {
            let prev = levels.last().unwrap();
            let next = (0..=x.len() - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            levels.push(next);
            width *= 2;
        }
        Self { levels }
    }

    /// Minimum over `lo..=hi`.
    fn min(&self, lo: usize, hi: usize) -> f64 {
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi + 1 - (1 << level)])
    }
}

/// For each index, the nearest index on one side holding a strictly larger value.
fn nearest_higher(x: &[f64], indices: impl Iterator<Item = usize>) -> Vec<Option<usize>> {
    let mut out = vec![None; x.len()];
    let mut stack: Vec<usize> = Vec::new();
    for i in indices {
        while stack.last().is_some_and(|&j| x[j] <= x[i]) {
            stack.pop();
        }
        out[i] = stack.last().copied();
        stack.push(i);
    }
    out
}

/// Local maxima (plateaus reported at their middle sample) with their
/// topographic prominence: height above the higher of the two lowest points
/// reached before climbing to a strictly higher sample on either side.
pub fn peak_prominences(x: &[f64]) -> Vec<Peak> {
    let n = x.len();
    if n < 3 {
        return Vec::new();
    }
    let table = MinTable::new(x);
    let left = nearest_higher(x, 0..n);
    let right = nearest_higher(x, (0..n).rev());
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if x[i - 1] < x[i] {
            let mut end = i;
            while end + 1 < n && x[end + 1] == x[i] {
                end += 1;
            }
            if end + 1 < n && x[end + 1] < x[i] {
                let mid = (i + end) / 2;
                let lo = left[i].map_or(0, |j| j + 1);
                let hi = right[end].map_or(n - 1, |j| j - 1);
                let base = table.min(lo, i).max(table.min(end, hi));
                peaks.push(Peak { index: mid, prominence: x[i] - base });
            }
            i = end + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

/// Mean spacing of peaks whose prominence is at least `min_fraction` of the
/// series range. `None` with fewer than two such peaks.
pub fn dominant_period(times: &[f64], x: &[f64], min_fraction: f64) -> Option<f64> {
    let (lo, hi) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let threshold = min_fraction * (hi - lo);
    let idx: Vec<usize> = peak_prominences(x)
        .into_iter()
        .filter(|p| p.prominence >= threshold)
        .map(|p| p.index)
        .collect();
    if idx.len() < 2 {
        return None;
    }
    Some((times[*idx.last().unwrap()] - times[idx[0]]) / (idx.len() - 1) as f64)
}
