use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::RMatrix;

use super::state::GaussianChainState;

/// Point source `ε δ_{n,l}` added to the field equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Impurity {
    pub site: usize,
    pub strength: f64,
}

/// Periodic lattice Klein-Gordon chain with mass `κ` and spacing `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KgSpec {
    pub n_sites: usize,
    pub kappa: f64,
    pub lattice_const: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub impurity: Option<Impurity>,
}

impl KgSpec {
    pub fn new(n_sites: usize, kappa: f64) -> Self {
        Self { n_sites, kappa, lattice_const: 1.0, impurity: None }
    }

    pub fn with_impurity(mut self, site: usize, strength: f64) -> Self {
        self.impurity = Some(Impurity { site, strength });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 {
            return Err(invalid("Klein-Gordon chain needs at least one site"));
        }
        // The k = 0 mode has ω = κ, so κ = 0 makes Q diverge.
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return Err(invalid(format!("mass κ must be positive and finite, got {}", self.kappa)));
        }
        if !(self.lattice_const > 0.0) || !self.lattice_const.is_finite() {
            return Err(invalid(format!("lattice constant must be positive, got {}", self.lattice_const)));
        }
        if let Some(imp) = self.impurity {
            if imp.site >= self.n_sites || !imp.strength.is_finite() {
                return Err(invalid(format!("impurity {imp:?} invalid for {} sites", self.n_sites)));
            }
        }
        Ok(())
    }

    pub fn momenta(&self) -> Vec<f64> {
        (0..self.n_sites).map(|j| 2.0 * PI * j as f64 / self.n_sites as f64).collect()
    }
}

/// `ω_k = sqrt((4/a²) sin²(k/2) + κ²)` for `k = 2πj/N`.
pub fn dispersion(spec: &KgSpec) -> Vec<f64> {
    let a = spec.lattice_const;
    spec.momenta()
        .iter()
        .map(|&k| (4.0 / (a * a) * (k / 2.0).sin().powi(2) + spec.kappa * spec.kappa).sqrt())
        .collect()
}

/// Vacuum moments `Q_mn = (1/2N) Σ_k ω_k^{-1} cos k(m-n)` and
/// `P_mn = (1/2N) Σ_k ω_k cos k(m-n)`.
pub fn kg_ground_state(spec: &KgSpec) -> Result<GaussianChainState> {
    spec.validate()?;
    let n = spec.n_sites;
    let ks = spec.momenta();
    let w = dispersion(spec);
    // Both matrices are circulant; build the first row and wrap it.
    let row: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|d| {
            ks.iter().zip(&w).fold((0.0, 0.0), |(q, p), (&k, &om)| {
                let c = (k * d as f64).cos();
                (q + c / om, p + c * om)
            })
        })
        .collect();
    let norm = 1.0 / (2.0 * n as f64);
    let q = RMatrix::from_fn(n, n, |i, j| row[(n + j - i) % n].0 * norm);
    let p = RMatrix::from_fn(n, n, |i, j| row[(n + j - i) % n].1 * norm);
    let q = (&q + q.transpose()).scale(0.5);
    let p = (&p + p.transpose()).scale(0.5);
    GaussianChainState::new(q, p, RMatrix::zeros(n, n), vec![0.0; n], vec![0.0; n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigh_real;

    #[test]
    fn rejects_massless() {
        assert!(kg_ground_state(&KgSpec::new(10, 0.0)).is_err());
        assert!(kg_ground_state(&KgSpec::new(10, -1.0)).is_err());
        assert!(KgSpec::new(10, 1.0).with_impurity(10, 1.0).validate().is_err());
    }

    #[test]
    fn single_oscillator() {
        let s = kg_ground_state(&KgSpec::new(1, 2.5)).unwrap();
        assert!((s.q[(0, 0)] - 0.2).abs() < 1e-15);
        assert!((s.p[(0, 0)] - 1.25).abs() < 1e-15);
    }

    #[test]
    fn circulant_spectra() {
        let spec = KgSpec::new(12, 0.3);
        let s = kg_ground_state(&spec).unwrap();
        let mut w = dispersion(&spec);
        w.sort_by(f64::total_cmp);
        let (qe, _) = eigh_real(&s.q);
        let (pe, _) = eigh_real(&s.p);
        let mut qw: Vec<f64> = w.iter().map(|x| 0.5 / x).collect();
        qw.sort_by(f64::total_cmp);
        for i in 0..12 {
            assert!((qe[i] - qw[i]).abs() < 1e-12);
            assert!((pe[i] - w[i] / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn heavy_mass_limit() {
        let s = kg_ground_state(&KgSpec::new(8, 100.0)).unwrap();
        assert!((s.q[(0, 0)] - 0.005).abs() < 1e-5);
        assert!((s.p[(0, 0)] - 50.0).abs() < 0.05);
    }
}
