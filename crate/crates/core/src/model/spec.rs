use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// Named model families with the usual normalization `f_x + f_y = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelFamily {
    Ising,
    Xx,
    Xy,
    Xyz,
}

impl ModelFamily {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ising" => Some(Self::Ising),
            "xx" => Some(Self::Xx),
            "xy" => Some(Self::Xy),
            "xyz" => Some(Self::Xyz),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Ising => "ising",
            Self::Xx => "xx",
            Self::Xy => "xy",
            Self::Xyz => "xyz",
        }
    }

    /// Builds a periodic chain. Parameters a family does not use are ignored
    /// (`gamma` for Ising and XX, `delta` for everything except XYZ).
    pub fn spec(self, n_sites: usize, gamma: f64, delta: f64, lambda: f64) -> SpinModelSpec {
        match self {
            Self::Ising => SpinModelSpec::ising(n_sites, lambda),
            Self::Xx => SpinModelSpec::xy(n_sites, 0.0, lambda),
            Self::Xy => SpinModelSpec::xy(n_sites, gamma, lambda),
            Self::Xyz => SpinModelSpec::xyz(n_sites, gamma, delta, lambda),
        }
    }
}

/// Parameters of
/// `H = -Σ_n [Σ_α f_α σ^α_n σ^α_{n+1} + g·(σ_n × σ_{n+1}) + h·σ_n]`.
///
/// `site_fields` overrides the z-field per site, `bond_anisotropy` overrides
/// `γ = f_x - f_y` per bond (bond `n` joins `n` and `n+1`) keeping
/// `f_x + f_y` fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinModelSpec {
    pub n_sites: usize,
    pub couplings: [f64; 3],
    pub dm: [f64; 3],
    pub field: [f64; 3],
    pub boundary: Boundary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site_fields: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bond_anisotropy: Option<Vec<f64>>,
}

impl SpinModelSpec {
    pub fn new(n_sites: usize, couplings: [f64; 3], field: [f64; 3]) -> Self {
        Self {
            n_sites,
            couplings,
            dm: [0.0; 3],
            field,
            boundary: Boundary::Periodic,
            site_fields: None,
            bond_anisotropy: None,
        }
    }

    pub fn ising(n_sites: usize, lambda: f64) -> Self {
        Self::new(n_sites, [1.0, 0.0, 0.0], [0.0, 0.0, lambda])
    }

    pub fn xy(n_sites: usize, gamma: f64, lambda: f64) -> Self {
        Self::xyz(n_sites, gamma, 0.0, lambda)
    }

    pub fn xyz(n_sites: usize, gamma: f64, delta: f64, lambda: f64) -> Self {
        Self::new(n_sites, [(1.0 + gamma) / 2.0, (1.0 - gamma) / 2.0, delta], [0.0, 0.0, lambda])
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_dm(mut self, dm: [f64; 3]) -> Self {
        self.dm = dm;
        self
    }

    pub fn with_site_fields(mut self, fields: Vec<f64>) -> Self {
        self.site_fields = Some(fields);
        self
    }

    pub fn with_bond_anisotropy(mut self, gammas: Vec<f64>) -> Self {
        self.bond_anisotropy = Some(gammas);
        self
    }

    pub fn gamma(&self) -> f64 {
        self.couplings[0] - self.couplings[1]
    }

    pub fn delta(&self) -> f64 {
        self.couplings[2]
    }

    pub fn lambda(&self) -> f64 {
        self.field[2]
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(invalid(format!("a chain needs at least 2 sites, got {}", self.n_sites)));
        }
        if let Some(f) = &self.site_fields {
            if f.len() != self.n_sites {
                return Err(invalid(format!(
                    "site_fields has length {} but the chain has {} sites",
                    f.len(),
                    self.n_sites
                )));
            }
        }
        if let Some(g) = &self.bond_anisotropy {
            if g.len() != self.n_sites {
                return Err(invalid(format!(
                    "bond_anisotropy has length {} but the chain has {} sites",
                    g.len(),
                    self.n_sites
                )));
            }
        }
        let all = self
            .couplings
            .iter()
            .chain(&self.dm)
            .chain(&self.field)
            .chain(self.site_fields.iter().flatten())
            .chain(self.bond_anisotropy.iter().flatten());
        if all.into_iter().any(|x| !x.is_finite()) {
            return Err(invalid("model parameters must be finite"));
        }
        Ok(())
    }

    /// z-field on site `n`.
    pub fn site_field(&self, n: usize) -> f64 {
        self.site_fields.as_ref().map_or(self.field[2], |f| f[n])
    }

    /// Couplings `(f_x, f_y, f_z)` on bond `n`.
    pub fn bond_couplings(&self, n: usize) -> [f64; 3] {
        match &self.bond_anisotropy {
            None => self.couplings,
            Some(g) => {
                let total = self.couplings[0] + self.couplings[1];
                [(total + g[n]) / 2.0, (total - g[n]) / 2.0, self.couplings[2]]
            }
        }
    }

    /// Bonds as ordered site pairs. A periodic two-site ring has the bond
    /// counted twice, (0,1) and (1,0).
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_sites;
        let count = match self.boundary {
            Boundary::Periodic => n,
            Boundary::Open => n - 1,
        };
        (0..count).map(|b| (b, (b + 1) % n)).collect()
    }

    /// True when the model maps to a quadratic fermion form.
    pub fn is_fermionizable(&self) -> bool {
        self.couplings[2] == 0.0 && self.dm.iter().all(|&g| g == 0.0) && self.field[0] == 0.0 && self.field[1] == 0.0
    }

    /// True when the model commutes with `⊗σ^z`.
    pub fn conserves_parity(&self) -> bool {
        self.field[0] == 0.0 && self.field[1] == 0.0 && self.dm[0] == 0.0 && self.dm[1] == 0.0
    }

    /// True when the model commutes with the cyclic translation.
    pub fn is_translation_invariant(&self) -> bool {
        let uniform = |v: &Option<Vec<f64>>| v.as_ref().is_none_or(|x| x.iter().all(|&y| y == x[0]));
        self.boundary == Boundary::Periodic && uniform(&self.site_fields) && uniform(&self.bond_anisotropy)
    }

    /// Same couplings on `sites` sites with the given boundary and no per-site
    /// overrides.
    pub fn restricted(&self, sites: usize, boundary: Boundary) -> Self {
        let mut out = self.clone();
        out.n_sites = sites;
        out.boundary = boundary;
        out.site_fields = None;
        out.bond_anisotropy = None;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_normalization() {
        let s = SpinModelSpec::xyz(6, 0.4, -0.5, 1.2);
        assert!((s.couplings[0] + s.couplings[1] - 1.0).abs() < 1e-15);
        assert!((s.gamma() - 0.4).abs() < 1e-15);
        assert_eq!(s.delta(), -0.5);
        assert_eq!(s.lambda(), 1.2);
        assert!(!s.is_fermionizable());
        assert!(SpinModelSpec::xy(6, 0.4, 1.2).is_fermionizable());
    }

    #[test]
    fn two_site_ring_counts_bond_twice() {
        assert_eq!(SpinModelSpec::ising(2, 0.0).bonds(), vec![(0, 1), (1, 0)]);
        let open = SpinModelSpec::ising(3, 0.0).with_boundary(Boundary::Open);
        assert_eq!(open.bonds(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn override_lengths_checked() {
        let s = SpinModelSpec::ising(4, 1.0).with_site_fields(vec![1.0; 3]);
        assert!(s.validate().is_err());
        let s = SpinModelSpec::ising(1, 1.0);
        assert!(s.validate().is_err());
    }

    #[test]
    fn bond_override_keeps_total() {
        let s = SpinModelSpec::xy(4, 1.0, 0.0).with_bond_anisotropy(vec![0.2; 4]);
        let f = s.bond_couplings(1);
        assert!((f[0] - 0.6).abs() < 1e-15 && (f[1] - 0.4).abs() < 1e-15);
        assert!(s.is_translation_invariant());
    }
}
