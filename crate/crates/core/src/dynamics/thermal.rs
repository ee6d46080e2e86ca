use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fermion::{diagonalize_majorana, jordan_wigner, majorana_form, ParitySector};
use crate::linalg::eigh;
use crate::model::{build_full_hamiltonian, Boundary, SpinModelSpec};

/// Largest block handled by dense exponentiation.
const DENSE_THERMAL_CAP: usize = 12;
/// Largest block whose `2^N` product spectrum is materialized.
const PRODUCT_CAP: usize = 20;

/// `(log10 β_min, log10 β_max, points)` of the temperature search grid.
pub const BETA_GRID: (f64, f64, usize) = (-3.0, 3.0, 121);

/// Eigenvalues of `e^{-βH}/𝒵`, descending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalSpectrum {
    pub beta: f64,
    pub weights: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThermalMethod {
    Auto,
    Fermionic,
    Dense,
}

/// What a thermal spectrum is built from; computed once per block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ThermalReference {
    /// Quasi-particle energies `ω̄_k` of an open free-fermion block.
    Modes(Vec<f64>),
    /// Every eigenvalue of the block Hamiltonian.
    Levels(Vec<f64>),
}

impl ThermalReference {
    pub fn from_spec(spec: &SpinModelSpec, method: ThermalMethod) -> Result<Self> {
        spec.validate()?;
        let fermionic = match method {
            ThermalMethod::Auto => spec.is_fermionizable() && spec.boundary == Boundary::Open,
            ThermalMethod::Fermionic => true,
            ThermalMethod::Dense => false,
        };
        if fermionic {
            // A periodic block mixes both parity sectors with different
            // boundary conditions; only the open chain is a single Gaussian state.
            if spec.boundary != Boundary::Open {
                return Err(invalid("fermionic thermal spectra need an open block"));
            }
            if spec.n_sites > PRODUCT_CAP {
                return Err(Error::SizeCap { what: "thermal product spectrum sites", size: spec.n_sites, cap: PRODUCT_CAP });
            }
            let chain = diagonalize_majorana(&majorana_form(&jordan_wigner(spec, ParitySector::Open)?))?;
            Ok(Self::Modes(chain.omega_bar))
        } else {
            if spec.n_sites > DENSE_THERMAL_CAP {
                return Err(Error::SizeCap { what: "dense thermal sites", size: spec.n_sites, cap: DENSE_THERMAL_CAP });
            }
            let (levels, _) = eigh(&build_full_hamiltonian(spec)?.to_dense());
            Ok(Self::Levels(levels))
        }
    }

    pub fn spectrum(&self, beta: f64) -> Result<ThermalSpectrum> {
        if !(beta >= 0.0) {
            return Err(invalid(format!("inverse temperature must be non-negative, got {beta}")));
        }
        let mut weights = match self {
            ThermalReference::Modes(omega) => {
                let mut w = vec![1.0];
                for &om in omega {
                    // Occupation 1/(1 + e^{2βω}), written to stay finite for large βω.
                    let f = 0.5 * (1.0 - (beta * om).tanh());
                    w = w.iter().flat_map(|&x| [x * (1.0 - f), x * f]).collect();
                }
                w
            }
            ThermalReference::Levels(levels) => {
                let e0 = levels.iter().copied().fold(f64::INFINITY, f64::min);
                let w: Vec<f64> = levels.iter().map(|&e| (-beta * (e - e0)).exp()).collect();
                let z: f64 = w.iter().sum();
                w.into_iter().map(|x| x / z).collect()
            }
        };
        weights.sort_by(|a, b| b.total_cmp(a));
        Ok(ThermalSpectrum { beta, weights })
    }
}

pub fn thermal_block_spectrum(block: &SpinModelSpec, beta: f64) -> Result<ThermalSpectrum> {
    thermal_block_spectrum_with(block, beta, ThermalMethod::Auto)
}

pub fn thermal_block_spectrum_with(block: &SpinModelSpec, beta: f64, method: ThermalMethod) -> Result<ThermalSpectrum> {
    if !(beta >= 0.0) {
        return Err(invalid(format!("inverse temperature must be non-negative, got {beta}")));
    }
    ThermalReference::from_spec(block, method)?.spectrum(beta)
}

/// `Σ_k sqrt(p_k q_k)` with the shorter distribution padded with zeros.
/// Entries are paired as given; spectrum comparisons sort first.
pub fn classical_fidelity(p: &[f64], q: &[f64]) -> Result<f64> {
    let prep = |x: &[f64]| -> Result<Vec<f64>> {
        if let Some(&bad) = x.iter().find(|&&v| v < -1e-12 || !v.is_finite()) {
            return Err(invalid(format!("spectrum has weight {bad}")));
        }
        let total: f64 = x.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(invalid(format!("spectrum sums to {total}")));
        }
        Ok(x.iter().map(|&v| v.max(0.0)).collect::<Vec<f64>>())
    };
    let (p, q) = (prep(p)?, prep(q)?);
    Ok(p.iter().zip(&q).map(|(a, b)| (a * b).sqrt()).sum())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemperatureFit {
    pub beta: f64,
    pub fidelity: f64,
    /// The best grid point was the largest β; the ground state may fit better still.
    pub at_upper_edge: bool,
    pub at_lower_edge: bool,
}

/// Maximizes the classical fidelity between `spectrum` and the reference's
/// thermal spectra over a logarithmic β grid, then refines by golden-section
/// search in `ln β` between the neighbours of the best grid point.
pub fn fit_temperature(spectrum: &[f64], reference: &ThermalReference) -> Result<TemperatureFit> {
    let mut spectrum = spectrum.to_vec();
    spectrum.sort_by(|a, b| b.total_cmp(a));
    let spectrum = &spectrum[..];
    let (lo, hi, n) = BETA_GRID;
    let grid: Vec<f64> = (0..n).map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64)).collect();
    let fid = |beta: f64| -> Result<f64> { classical_fidelity(spectrum, &reference.spectrum(beta)?.weights) };
    let scores: Vec<f64> = grid.iter().map(|&b| fid(b)).collect::<Result<_>>()?;
    // Near-ties at rounding level (a pure target matched by every cold β) go to
    // the colder end.
    let top = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let best = (0..n).rev().find(|&i| scores[i] >= top - 1e-14).unwrap();
    let (mut a, mut b) = (grid[best.saturating_sub(1)].ln(), grid[(best + 1).min(n - 1)].ln());
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (fid(x1.exp())?, fid(x2.exp())?);
    while b - a > 1e-4 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = fid(x1.exp())?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = fid(x2.exp())?;
        }
    }
    let mut beta = (0.5 * (a + b)).exp();
    let mut fidelity = fid(beta)?;
    if scores[best] > fidelity {
        beta = grid[best];
        fidelity = scores[best];
    }
    Ok(TemperatureFit { beta, fidelity, at_upper_edge: best == n - 1, at_lower_edge: best == 0 })
}
