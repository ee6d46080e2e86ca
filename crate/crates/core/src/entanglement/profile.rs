use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fermion::fermionic_ground_state;
use crate::linalg::CMatrix;
use crate::model::{block_entropy_dense, ground_state, SpinModelSpec};

use super::spectrum::{block_occupations, von_neumann_entropy};

/// Contiguous-block entropies `ŝ_ℓ` (bits) of one ground state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyProfile {
    pub n_sites: usize,
    pub values: BTreeMap<usize, f64>,
}

impl EntropyProfile {
    pub fn new(n_sites: usize, values: BTreeMap<usize, f64>) -> Self {
        Self { n_sites, values }
    }

    /// Profile over `1..N` from a function of `ℓ`.
    pub fn from_fn(n_sites: usize, f: impl Fn(usize) -> f64) -> Self {
        Self::new(n_sites, (1..n_sites).map(|l| (l, f(l))).collect())
    }

    pub fn get(&self, ell: usize) -> Option<f64> {
        self.values.get(&ell).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntropyMethod {
    /// Free fermions when the model allows it, otherwise exact diagonalization.
    Auto,
    Fermionic,
    Dense,
}

/// Rows and columns `2s, 2s+1` of `Γ` for each listed site, in list order.
pub fn block_correlation(gamma: &CMatrix, sites: &[usize]) -> Result<CMatrix> {
    let n = gamma.nrows() / 2;
    let mut seen = vec![false; n];
    for &s in sites {
        if s >= n {
            return Err(invalid(format!("site {s} out of range for {n} sites")));
        }
        if std::mem::replace(&mut seen[s], true) {
            return Err(invalid(format!("site {s} listed twice")));
        }
    }
    let idx: Vec<usize> = sites.iter().flat_map(|&s| [2 * s, 2 * s + 1]).collect();
    Ok(CMatrix::from_fn(idx.len(), idx.len(), |i, j| gamma[(idx[i], idx[j])]))
}

/// Von Neumann entropy of `sites` from a Majorana correlation matrix.
pub fn block_entropy_fermionic(gamma: &CMatrix, sites: &[usize]) -> Result<f64> {
    Ok(von_neumann_entropy(&block_occupations(&block_correlation(gamma, sites)?)?))
}

pub fn entropy_profile(spec: &SpinModelSpec, ells: &[usize]) -> Result<EntropyProfile> {
    entropy_profile_with(spec, ells, EntropyMethod::Auto)
}

/// Entropies of the blocks `{0, …, ℓ-1}` for each requested `ℓ`.
pub fn entropy_profile_with(spec: &SpinModelSpec, ells: &[usize], method: EntropyMethod) -> Result<EntropyProfile> {
    spec.validate()?;
    let n = spec.n_sites;
    if let Some(&bad) = ells.iter().find(|&&l| l == 0 || l >= n) {
        return Err(invalid(format!("block length {bad} outside 1..{n}")));
    }
    let fermionic = match method {
        EntropyMethod::Auto => spec.is_fermionizable(),
        EntropyMethod::Fermionic => true,
        EntropyMethod::Dense => false,
    };
    let blocks: Vec<Vec<usize>> = ells.iter().map(|&l| (0..l).collect()).collect();
    let values: Vec<f64> = if fermionic {
        if !spec.is_fermionizable() {
            return Err(Error::NotFermionizable(
                "entropy profile requested on the fermionic path".into(),
            ));
        }
        let gamma = fermionic_ground_state(spec)?.correlation();
        blocks
            .par_iter()
            .map(|b| block_entropy_fermionic(&gamma, b))
            .collect::<Result<_>>()?
    } else {
        let psi = ground_state(spec)?.full_amplitudes();
        blocks
            .par_iter()
            .map(|b| block_entropy_dense(&psi, n, b))
            .collect::<Result<_>>()?
    };
    Ok(EntropyProfile::new(n, ells.iter().copied().zip(values).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelFamily;

    #[test]
    fn product_limit() {
        let spec = SpinModelSpec::ising(20, 100.0);
        let ells: Vec<usize> = (1..20).collect();
        let p = entropy_profile(&spec, &ells).unwrap();
        assert!(p.values.values().all(|&s| (0.0..1e-3).contains(&s)));
    }

    #[test]
    fn cat_state_at_zero_field() {
        let spec = SpinModelSpec::ising(10, 0.0);
        let p = entropy_profile_with(&spec, &[5], EntropyMethod::Dense).unwrap();
        assert!((p.get(5).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn paths_agree() {
        for (g, l) in [(1.0, 1.0), (0.5, 0.4), (0.8, 1.7)] {
            let spec = ModelFamily::Xy.spec(8, g, 0.0, l);
            let ells: Vec<usize> = (1..8).collect();
            let a = entropy_profile_with(&spec, &ells, EntropyMethod::Fermionic).unwrap();
            let b = entropy_profile_with(&spec, &ells, EntropyMethod::Dense).unwrap();
            for l in ells {
                assert!((a.get(l).unwrap() - b.get(l).unwrap()).abs() < 1e-8, "g={g} λ={l}");
            }
        }
    }

    #[test]
    fn block_selection_errors() {
        let g = CMatrix::zeros(8, 8);
        assert!(block_correlation(&g, &[0, 0]).is_err());
        assert!(block_correlation(&g, &[4]).is_err());
        assert_eq!(block_correlation(&g, &[1, 3]).unwrap().nrows(), 4);
    }
}
