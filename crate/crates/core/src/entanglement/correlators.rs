use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fermion::fermionic_ground_state;
use crate::linalg::{CMatrix, C64};
use crate::model::{ground_state, Boundary, SpinModelSpec};

/// `⟨σ^z_k⟩ = 2i Γ_{2k,2k+1}`.
pub fn sigma_z(gamma: &CMatrix, k: usize) -> f64 {
    (C64::new(0.0, 2.0) * gamma[(2 * k, 2 * k + 1)]).re
}

/// Connected `s(k,l) = ⟨σ^z_k σ^z_l⟩ - ⟨σ^z_k⟩⟨σ^z_l⟩` by Wick's theorem. With
/// `a, b = 2k, 2k+1` and `c, d = 2l, 2l+1` it reduces to
/// `4 (Γ_ac Γ_bd - Γ_ad Γ_bc)`.
pub fn zz_connected(gamma: &CMatrix, k: usize, l: usize) -> f64 {
    if k == l {
        let z = sigma_z(gamma, k);
        return 1.0 - z * z;
    }
    let (a, b, c, d) = (2 * k, 2 * k + 1, 2 * l, 2 * l + 1);
    let det = gamma[(a, c)] * gamma[(b, d)] - gamma[(a, d)] * gamma[(b, c)];
    4.0 * det.re
}

fn z_sign(x: usize, k: usize) -> f64 {
    if (x >> k) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `⟨σ^z_k⟩` of a full state vector.
pub fn sigma_z_dense(psi: &[C64], k: usize) -> f64 {
    psi.iter().enumerate().map(|(x, a)| a.norm_sqr() * z_sign(x, k)).sum()
}

pub fn zz_connected_dense(psi: &[C64], k: usize, l: usize) -> f64 {
    let zz: f64 = psi
        .iter()
        .enumerate()
        .map(|(x, a)| a.norm_sqr() * z_sign(x, k) * z_sign(x, l))
        .sum();
    zz - sigma_z_dense(psi, k) * sigma_z_dense(psi, l)
}

/// Connected `σ^z σ^z` correlator in the ground state, via free fermions when
/// possible and exact diagonalization otherwise.
pub fn zz_correlation(spec: &SpinModelSpec, k: usize, l: usize) -> Result<f64> {
    spec.validate()?;
    if k >= spec.n_sites || l >= spec.n_sites {
        return Err(invalid(format!("sites ({k}, {l}) out of range")));
    }
    if spec.is_fermionizable() {
        let gamma = fermionic_ground_state(spec)?.correlation();
        Ok(zz_connected(&gamma, k, l))
    } else {
        let psi = ground_state(spec)?.full_amplitudes();
        Ok(zz_connected_dense(&psi, k, l))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationLength {
    /// `None` when fewer than four distances are usable or the fit does not decay.
    pub xi: Option<f64>,
    /// RMS deviation of `log |s|` from the fitted line.
    pub residual: f64,
    pub n_points: usize,
}

/// Fits `log |s(0, d)| = a - d/ξ` over distances `d ≥ 2` up to `N/2`
/// (periodic) or `N-1` (open), keeping points with `|s| > 1e-12`.
pub fn correlation_length(spec: &SpinModelSpec) -> Result<CorrelationLength> {
    spec.validate()?;
    let n = spec.n_sites;
    let max_d = match spec.boundary {
        Boundary::Periodic => n / 2,
        Boundary::Open => n - 1,
    };
    let s: Vec<(f64, f64)> = if spec.is_fermionizable() {
        let gamma = fermionic_ground_state(spec)?.correlation();
        (2..=max_d).map(|d| (d as f64, zz_connected(&gamma, 0, d))).collect()
    } else {
        let psi = ground_state(spec)?.full_amplitudes();
        (2..=max_d).map(|d| (d as f64, zz_connected_dense(&psi, 0, d))).collect()
    };
    let pts: Vec<(f64, f64)> = s.into_iter().filter(|&(_, v)| v.abs() > 1e-12).map(|(d, v)| (d, v.abs().ln())).collect();
    let n_points = pts.len();
    if n_points < 4 {
        return Ok(CorrelationLength { xi: None, residual: f64::NAN, n_points });
    }
    let m = n_points as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let residual = (pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>() / m).sqrt();
    let xi = (slope < 0.0).then(|| -1.0 / slope);
    Ok(CorrelationLength { xi, residual, n_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelFamily;

    #[test]
    fn product_limit() {
        let spec = SpinModelSpec::ising(12, 100.0);
        for d in 2..6 {
            assert!(zz_correlation(&spec, 0, d).unwrap().abs() < 1e-6);
        }
    }

    #[test]
    fn wick_matches_dense() {
        for (g, lam) in [(1.0, 1.0), (0.4, 0.7), (0.7, 1.6), (0.0, 0.5)] {
            let spec = ModelFamily::Xy.spec(8, g, 0.0, lam);
            let gamma = fermionic_ground_state(&spec).unwrap().correlation();
            let psi = ground_state(&spec).unwrap().full_amplitudes();
            for k in 0..8 {
                assert!((sigma_z(&gamma, k) - sigma_z_dense(&psi, k)).abs() < 1e-8);
                for l in 0..8 {
                    let a = zz_connected(&gamma, k, l);
                    let b = zz_connected_dense(&psi, k, l);
                    assert!((a - b).abs() < 1e-8, "γ={g} λ={lam} ({k},{l}): {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn length_grows_towards_criticality() {
        let xi: Vec<f64> = [1.5, 1.3, 1.15]
            .iter()
            .map(|&l| correlation_length(&SpinModelSpec::ising(100, l)).unwrap().xi.unwrap())
            .collect();
        assert!(xi[0] < xi[1] && xi[1] < xi[2], "{xi:?}");
    }
}
