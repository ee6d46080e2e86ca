use rayon::prelude::*;

use super::basis::binomial;
use super::hamiltonian::fqhe_ground_multiplet;
use super::interaction::{FqheSpec, InteractionTensor};
use super::trace::{partial_trace_pure, reduced_entropy, TraceConvention};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct FqheEntropyPoint {
    pub aspect_ratio: f64,
    pub energy: f64,
    pub degeneracy: usize,
    /// Mean entropy in bits over the ground multiplet.
    pub entropy: f64,
    /// `entropy - log2 C(N_e, n_keep)`, the excess over a Slater determinant.
    pub excess: f64,
    pub error: Option<String>,
}

/// Ground multiplet entropy of `n_keep` particles at the spec's aspect ratio.
pub fn fqhe_entropy_at(spec: &FqheSpec, n_keep: usize, conv: TraceConvention) -> Result<FqheEntropyPoint> {
    let tensor = InteractionTensor::new(spec)?;
    let g = fqhe_ground_multiplet(spec, &tensor, false)?;
    let entropies = if n_keep == spec.n_electrons {
        vec![0.0; g.degeneracy()]
    } else {
        g.states
            .iter()
            .map(|psi| partial_trace_pure(psi, &g.basis, n_keep, conv).map(|(r, _)| reduced_entropy(&r)))
            .collect::<Result<Vec<_>>>()?
    };
    let entropy = entropies.iter().sum::<f64>() / entropies.len() as f64;
    Ok(FqheEntropyPoint {
        aspect_ratio: spec.aspect_ratio,
        energy: g.energy,
        degeneracy: g.degeneracy(),
        entropy,
        excess: entropy - (binomial(spec.n_electrons, n_keep) as f64).log2(),
        error: None,
    })
}

/// One point per ratio, solved concurrently. A failing ratio is kept with
/// `error` set and NaN values.
pub fn fqhe_entropy_scan(spec: &FqheSpec, n_keep: usize, ratios: &[f64], conv: TraceConvention) -> Vec<FqheEntropyPoint> {
    ratios
        .par_iter()
        .map(|&r| match spec.with_aspect_ratio(r).and_then(|s| fqhe_entropy_at(&s, n_keep, conv)) {
            Ok(p) => p,
            Err(e) => FqheEntropyPoint {
                aspect_ratio: r,
                energy: f64::NAN,
                degeneracy: 0,
                entropy: f64::NAN,
                excess: f64::NAN,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// Largest increase of entropy between consecutive successful points:
/// `(ratio before, ratio after, increase)`.
pub fn largest_jump(points: &[FqheEntropyPoint]) -> Option<(f64, f64, f64)> {
    let ok: Vec<&FqheEntropyPoint> = points.iter().filter(|p| p.error.is_none()).collect();
    ok.windows(2)
        .map(|w| (w[0].aspect_ratio, w[1].aspect_ratio, w[1].entropy - w[0].entropy))
        .max_by(|a, b| a.2.total_cmp(&b.2))
}
