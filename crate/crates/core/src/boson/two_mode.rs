use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

use super::state::{zeta, GaussianChainState};

/// Two-mode correlation matrix after local squeezing, vacuum-normalized so
/// that a product of vacua has `n = 1`, `k_q = k_p = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoModeStandardForm {
    pub n_a: f64,
    pub n_b: f64,
    pub k_q: f64,
    pub k_p: f64,
}

impl TwoModeStandardForm {
    pub fn symmetric(n: f64, k_q: f64, k_p: f64) -> Self {
        Self { n_a: n, n_b: n, k_q, k_p }
    }

    /// `(n - k_q)(n + k_p)`; the state is entangled iff this is below 1.
    pub fn separability_product(&self) -> f64 {
        (self.n_a - self.k_q) * (self.n_a + self.k_p)
    }
}

/// Standard form of sites `i`, `j` of a translation-invariant state:
/// `n = 2 sqrt(q₀p₀)`, `k_q = 2 q₁ sqrt(p₀/q₀)`, `k_p = 2 p₁ sqrt(q₀/p₀)`.
pub fn two_mode_matrix(state: &GaussianChainState, i: usize, j: usize) -> Result<TwoModeStandardForm> {
    let n = state.n_modes();
    if i == j || i >= n || j >= n {
        return Err(invalid(format!("two-mode matrix needs distinct sites in range, got ({i}, {j})")));
    }
    let (q0, p0) = (state.q[(0, 0)], state.p[(0, 0)]);
    let uniform = (0..n).all(|k| {
        (state.q[(k, k)] - q0).abs() <= 1e-10 * q0.abs() && (state.p[(k, k)] - p0).abs() <= 1e-10 * p0.abs()
    });
    if !uniform {
        return Err(invalid("two-mode standard form needs a translation-invariant state"));
    }
    if state.s[(i, j)].abs() > 1e-12 || state.s[(i, i)].abs() > 1e-12 || state.s[(j, j)].abs() > 1e-12 {
        return Err(invalid("two-mode standard form needs vanishing q-p correlations"));
    }
    let eta = (p0 / q0).sqrt();
    Ok(TwoModeStandardForm::symmetric(
        2.0 * (q0 * p0).sqrt(),
        2.0 * state.q[(i, j)] * eta,
        2.0 * state.p[(i, j)] / eta,
    ))
}

/// Gaussian entanglement of formation in bits, `ζ(½ ln[(n - k_q)(n + k_p)])`
/// below the separability threshold and 0 above it. With the vacuum-normalized
/// form this evaluates to `ζ(2r)` on a two-mode squeezed vacuum of squeezing `r`.
pub fn symmetric_gaussian_eof(form: &TwoModeStandardForm) -> Result<f64> {
    let TwoModeStandardForm { n_a, n_b, k_q, k_p } = *form;
    if (n_a - n_b).abs() > 1e-12 * n_a.abs().max(1.0) {
        return Err(invalid("entanglement of formation needs a symmetric state"));
    }
    let n = n_a;
    let tol = 1e-9;
    if (n - k_q) * (n - k_p) < 1.0 - tol || (n + k_q) * (n + k_p) < 1.0 - tol {
        return Err(Error::InvalidState(format!("({n}, {k_q}, {k_p}) violates the uncertainty relation")));
    }
    let prod = form.separability_product();
    if prod >= 1.0 {
        return Ok(0.0);
    }
    if prod <= 0.0 {
        return Err(Error::InvalidState(format!("separability product {prod} is not positive")));
    }
    Ok(zeta(0.5 * prod.ln()))
}
