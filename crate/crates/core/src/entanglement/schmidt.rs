use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{invalid, Result};
use crate::linalg::neg_xlog2x;

use super::spectrum::BlockSpectrum;

/// Largest eigenvalues `Λ_η` of a Gaussian reduced density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSpectrum {
    /// Descending.
    pub weights: Vec<f64>,
    /// `patterns[i][k]` is `n_k` for `weights[i]`; `n_k = 0` selects `λ_k`.
    pub patterns: Vec<Vec<bool>>,
    pub truncation_mass: f64,
}

impl SchmidtSpectrum {
    /// `-Σ Λ log2 Λ` over the retained weights only.
    pub fn entropy(&self) -> f64 {
        self.weights.iter().map(|&w| neg_xlog2x(w)).sum()
    }

    /// Entropy of the retained weights after rescaling them to unit sum.
    pub fn renormalized_entropy(&self) -> f64 {
        let total: f64 = self.weights.iter().sum();
        if total <= 0.0 {
            return 0.0;
        }
        self.weights.iter().map(|&w| neg_xlog2x(w / total)).sum()
    }
}

struct Node {
    weight: f64,
    // Indices into the ratio-sorted mode order, ascending; last is the frontier.
    flipped: Vec<usize>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| other.flipped.cmp(&self.flipped))
    }
}

/// The `k` largest product weights, found best-first. Each mode has a
/// dominant factor `max(λ, 1-λ)`; flipping it multiplies by the ratio
/// `r = min/max ≤ 1`. Modes are sorted by descending ratio and a subset of
/// flipped modes `{i_1 < … < i_m}` has the children "append `i_m + 1`" and
/// "replace `i_m` by `i_m + 1`", so every subset is reached exactly once and
/// children never outweigh their parent.
pub fn schmidt_spectrum(b: &BlockSpectrum, k: usize) -> Result<SchmidtSpectrum> {
    if k == 0 {
        return Err(invalid("Schmidt spectrum needs K >= 1"));
    }
    let n = b.lambdas.len();
    let k = if n < 63 { k.min(1usize << n) } else { k };

    let dominant: Vec<f64> = b.lambdas.iter().map(|&l| l.max(1.0 - l)).collect();
    let base_pattern: Vec<bool> = b.lambdas.iter().map(|&l| l < 0.5).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let ratio = |m: usize| {
        let l = b.lambdas[m];
        l.min(1.0 - l) / dominant[m]
    };
    order.sort_by(|&x, &y| ratio(y).total_cmp(&ratio(x)).then(x.cmp(&y)));
    let r: Vec<f64> = order.iter().map(|&m| ratio(m)).collect();

    let top: f64 = dominant.iter().product();
    let mut heap = BinaryHeap::new();
    heap.push(Node { weight: top, flipped: Vec::new() });
    let mut weights = Vec::with_capacity(k);
    let mut patterns = Vec::with_capacity(k);
    while weights.len() < k {
        let Some(node) = heap.pop() else { break };
        let mut pattern = base_pattern.clone();
        for &i in &node.flipped {
            pattern[order[i]] = !pattern[order[i]];
        }
        let next = node.flipped.last().map_or(0, |&i| i + 1);
        if next < n {
            let mut add = node.flipped.clone();
            add.push(next);
            heap.push(Node { weight: node.weight * r[next], flipped: add });
            if let Some(&last) = node.flipped.last() {
                let mut rep = node.flipped.clone();
                *rep.last_mut().unwrap() = next;
                // r[last] may be zero; recompute the product directly then.
                let w = if r[last] > 0.0 {
                    node.weight / r[last] * r[next]
                } else {
                    top * rep.iter().map(|&i| r[i]).product::<f64>()
                };
                heap.push(Node { weight: w, flipped: rep });
            }
        }
        weights.push(node.weight);
        patterns.push(pattern);
    }
    let truncation_mass = (1.0 - weights.iter().sum::<f64>()).max(0.0);
    Ok(SchmidtSpectrum { weights, patterns, truncation_mass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn weight_of(ls: &[f64], pattern: &[bool]) -> f64 {
        ls.iter().zip(pattern).map(|(&l, &n)| if n { 1.0 - l } else { l }).product()
    }

    #[test]
    fn small_examples() {
        let b = BlockSpectrum::new(vec![1.0, 1.0, 1.0]).unwrap();
        let s = schmidt_spectrum(&b, 1).unwrap();
        assert_eq!(s.weights, vec![1.0]);
        assert_eq!(s.truncation_mass, 0.0);

        let b = BlockSpectrum::new(vec![0.9, 0.8]).unwrap();
        let s = schmidt_spectrum(&b, 4).unwrap();
        let expect = [0.72, 0.18, 0.08, 0.02];
        for (w, e) in s.weights.iter().zip(expect) {
            assert!((w - e).abs() < 1e-14);
        }
        assert!(schmidt_spectrum(&b, 0).is_err());
        assert_eq!(schmidt_spectrum(&b, 100).unwrap().weights.len(), 4);
    }

    proptest! {
        #[test]
        fn matches_brute_force(ls in prop::collection::vec(0.0f64..=1.0, 1..9), k in 1usize..40) {
            let b = BlockSpectrum::new(ls.clone()).unwrap();
            let s = schmidt_spectrum(&b, k).unwrap();
            let all = b.product_weights();
            prop_assert_eq!(s.weights.len(), k.min(all.len()));
            for (i, (&w, p)) in s.weights.iter().zip(&s.patterns).enumerate() {
                prop_assert!((w - all[i]).abs() < 1e-12);
                prop_assert!((w - weight_of(&ls, p)).abs() < 1e-12);
                if i > 0 {
                    prop_assert!(w <= s.weights[i - 1]);
                }
            }
            let full = schmidt_spectrum(&b, all.len()).unwrap();
            prop_assert!((full.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!((full.entropy() - super::super::von_neumann_entropy(&b)).abs() < 1e-10);
        }
    }
}
