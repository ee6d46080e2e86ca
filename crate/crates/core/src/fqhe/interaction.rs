use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::linalg::C64;

/// Electrons on a torus with `L_x L_y = 2π N_s` in units of the magnetic
/// length. Interaction energies are in units of `e²/ε₀ l₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct FqheSpec {
    pub n_electrons: usize,
    pub n_orbitals: usize,
    /// `L_y / L_x`.
    pub aspect_ratio: f64,
    /// Overrides the geometry-based default when set.
    pub q_cutoff: Option<usize>,
}

impl FqheSpec {
    pub fn new(n_electrons: usize, n_orbitals: usize, aspect_ratio: f64) -> Result<Self> {
        let s = FqheSpec { n_electrons, n_orbitals, aspect_ratio, q_cutoff: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_aspect_ratio(&self, aspect_ratio: f64) -> Result<Self> {
        let s = FqheSpec { aspect_ratio, ..self.clone() };
        s.validate()?;
        Ok(s)
    }

    pub fn with_cutoff(mut self, q_cutoff: usize) -> Self {
        self.q_cutoff = Some(q_cutoff);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_orbitals == 0 || self.n_orbitals > 63 {
            return Err(invalid(format!("need 1..=63 orbitals, got {}", self.n_orbitals)));
        }
        if self.n_electrons == 0 || self.n_electrons > self.n_orbitals {
            return Err(invalid(format!("{} electrons in {} orbitals", self.n_electrons, self.n_orbitals)));
        }
        if !(self.aspect_ratio.is_finite() && self.aspect_ratio > 0.0) {
            return Err(invalid(format!("aspect ratio must be positive, got {}", self.aspect_ratio)));
        }
        if let Some(q) = self.q_cutoff {
            if q == 0 {
                return Err(invalid("q_cutoff must be positive"));
            }
        }
        Ok(())
    }

    pub fn filling(&self) -> f64 {
        self.n_electrons as f64 / self.n_orbitals as f64
    }

    /// `(L_x, L_y)`.
    pub fn lengths(&self) -> (f64, f64) {
        let lx = (2.0 * PI * self.n_orbitals as f64 / self.aspect_ratio).sqrt();
        (lx, self.aspect_ratio * lx)
    }

    /// Smallest cutoff whose largest |q| component reaches 9.1, where the
    /// Gaussian factor is below 1e-18, and never below 20.
    pub fn default_cutoff(&self) -> usize {
        let (lx, ly) = self.lengths();
        let l = lx.max(ly);
        ((l * 9.1 / (2.0 * PI)).ceil() as usize).max(20)
    }

    pub fn cutoff(&self) -> usize {
        self.q_cutoff.unwrap_or_else(|| self.default_cutoff())
    }
}

/// Coupling `𝒜(j₁,j₂,j₃,j₄)`. On momentum-conserving tuples it depends only on
/// `(j₁ - j₃) mod N_s` and `(j₁ - j₄) mod N_s`, so it is stored as an
/// `N_s × N_s` table.
#[derive(Debug, Clone)]
pub struct InteractionTensor {
    pub n_orbitals: usize,
    pub cutoff: usize,
    table: Vec<C64>,
}

impl InteractionTensor {
    /// Evaluates the table at the spec's cutoff and again at twice that;
    /// fails if any entry moves by 1e-10 or more.
    pub fn new(spec: &FqheSpec) -> Result<Self> {
        spec.validate()?;
        let cutoff = spec.cutoff();
        let table = raw_table(spec, cutoff);
        let doubled = raw_table(spec, 2 * cutoff);
        let change = table.iter().zip(&doubled).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if change >= 1e-10 {
            return Err(Error::CutoffTooSmall { cutoff, change });
        }
        Ok(InteractionTensor { n_orbitals: spec.n_orbitals, cutoff, table })
    }

    /// Zero unless `j₁ + j₂ ≡ j₃ + j₄ (mod N_s)`.
    pub fn get(&self, j1: usize, j2: usize, j3: usize, j4: usize) -> C64 {
        let ns = self.n_orbitals;
        if (j1 + j2) % ns != (j3 + j4) % ns {
            return C64::new(0.0, 0.0);
        }
        self.table[self.slot(j1, j3, j4)]
    }

    fn slot(&self, j1: usize, j3: usize, j4: usize) -> usize {
        let ns = self.n_orbitals;
        ((j1 + ns - j3 % ns) % ns) * ns + (j1 + ns - j4 % ns) % ns
    }
}

/// Single coupling at the spec's cutoff, with the same doubling check as
/// [`InteractionTensor::new`].
pub fn matrix_element(spec: &FqheSpec, j1: usize, j2: usize, j3: usize, j4: usize) -> Result<C64> {
    spec.validate()?;
    let ns = spec.n_orbitals;
    if [j1, j2, j3, j4].iter().any(|&j| j >= ns) {
        return Err(invalid(format!("orbital index outside 0..{ns}")));
    }
    if (j1 + j2) % ns != (j3 + j4) % ns {
        return Ok(C64::new(0.0, 0.0));
    }
    let a = (j1 + ns - j3) % ns;
    let b = (j1 + ns - j4) % ns;
    let cutoff = spec.cutoff();
    let v = q_sum(spec, a, b, cutoff);
    let change = (v - q_sum(spec, a, b, 2 * cutoff)).norm();
    if change >= 1e-10 {
        return Err(Error::CutoffTooSmall { cutoff, change });
    }
    Ok(v)
}

fn raw_table(spec: &FqheSpec, cutoff: usize) -> Vec<C64> {
    let ns = spec.n_orbitals;
    let mut out = Vec::with_capacity(ns * ns);
    for a in 0..ns {
        for b in 0..ns {
            out.push(q_sum(spec, a, b, cutoff));
        }
    }
    out
}

/// `π/(L_x L_y) Σ_{q≠0} q⁻¹ exp(-q²/2 - 2πi s a/N_s)` over
/// `q = (2πs/L_x, 2πt/L_y)` with `|s|, |t| ≤ cutoff` and `t ≡ b (mod N_s)`.
fn q_sum(spec: &FqheSpec, a: usize, b: usize, cutoff: usize) -> C64 {
    let ns = spec.n_orbitals as i64;
    let (lx, ly) = spec.lengths();
    let c = cutoff as i64;
    // Smallest t ≥ -cutoff in the residue class of b.
    let t0 = -c + (b as i64 + c).rem_euclid(ns);
    let mut acc = C64::new(0.0, 0.0);
    let mut t = t0;
    while t <= c {
        let qy = 2.0 * PI * t as f64 / ly;
        for s in -c..=c {
            if s == 0 && t == 0 {
                continue;
            }
            let qx = 2.0 * PI * s as f64 / lx;
            let q2 = qx * qx + qy * qy;
            let phase = -2.0 * PI * (s * a as i64) as f64 / ns as f64;
            acc += C64::from_polar((-0.5 * q2).exp() / q2.sqrt(), phase);
        }
        t += ns;
    }
    acc * (PI / (lx * ly))
}
