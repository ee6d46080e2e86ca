use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

use super::kg::{dispersion, KgSpec};

/// `⟨φ_n(t)⟩` and `⟨π_n(t)⟩`, indexed `[time][site]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldEvolution {
    pub times: Vec<f64>,
    pub phi: Vec<Vec<f64>>,
    pub pi: Vec<Vec<f64>>,
}

fn impurity_of(spec: &KgSpec) -> Result<(usize, f64)> {
    spec.validate()?;
    let imp = spec.impurity.ok_or_else(|| invalid("spec has no impurity"))?;
    Ok((imp.site, imp.strength))
}

/// Field expectations at one site after the impurity is switched on at
/// `t = 0`:
/// `φ = (ε/N) Σ_k ω_k^{-2} [cos kx - cos(ω_k t - kx)]`,
/// `π = (ε/N) Σ_k ω_k^{-1} sin(ω_k t - kx)` with `x = n - l`.
pub fn impurity_field_at(spec: &KgSpec, site: usize, times: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (l, eps) = impurity_of(spec)?;
    if site >= spec.n_sites {
        return Err(invalid(format!("site {site} out of range")));
    }
    let w = dispersion(spec);
    let x = site as f64 - l as f64;
    let modes: Vec<(f64, f64)> = spec.momenta().iter().zip(&w).map(|(&k, &om)| (k * x, om)).collect();
    let scale = eps / spec.n_sites as f64;
    Ok(times
        .par_iter()
        .map(|&t| {
            modes.iter().fold((0.0, 0.0), |(phi, pi), &(kx, om)| {
                let arg = om * t - kx;
                (phi + (kx.cos() - arg.cos()) / (om * om), pi + arg.sin() / om)
            })
        })
        .map(|(phi, pi)| (phi * scale, pi * scale))
        .unzip())
}

pub fn impurity_field_evolution(spec: &KgSpec, times: &[f64]) -> Result<FieldEvolution> {
    impurity_of(spec)?;
    let per_site: Vec<(Vec<f64>, Vec<f64>)> = (0..spec.n_sites)
        .map(|n| impurity_field_at(spec, n, times))
        .collect::<Result<_>>()?;
    let phi = (0..times.len()).map(|t| per_site.iter().map(|s| s.0[t]).collect()).collect();
    let pi = (0..times.len()).map(|t| per_site.iter().map(|s| s.1[t]).collect()).collect();
    Ok(FieldEvolution { times: times.to_vec(), phi, pi })
}

/// Time-independent part of `⟨φ_l(t)⟩` at the impurity site, `(ε/N) Σ_k ω_k^{-2}`.
pub fn impurity_constant_sum(spec: &KgSpec) -> Result<f64> {
    let (_, eps) = impurity_of(spec)?;
    let s: f64 = dispersion(spec).iter().map(|w| 1.0 / (w * w)).sum();
    Ok(eps * s / spec.n_sites as f64)
}

/// `N → ∞` limit of [`impurity_constant_sum`]: `ε a / (κ sqrt(4 + κ²a²))`.
pub fn impurity_constant_closed_form(spec: &KgSpec) -> Result<f64> {
    let (_, eps) = impurity_of(spec)?;
    let (k, a) = (spec.kappa, spec.lattice_const);
    Ok(eps * a / (k * (4.0 + k * k * a * a).sqrt()))
}
