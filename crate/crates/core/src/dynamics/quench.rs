use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{block_correlation, block_occupations, von_neumann_entropy};
use crate::error::{invalid, Result};
use crate::fermion::{fermionic_ground_state, jordan_wigner, majorana_form};
use crate::model::{Boundary, SpinModelSpec};

use super::evolution::{energy_expectation, evolve_correlation, Propagator};
use super::thermal::{fit_temperature, ThermalMethod, ThermalReference};

/// Local field quench of a periodic Ising chain. The initial state is the
/// ground state at uniform field `lambda`; the evolution Hamiltonian has
/// field `lambda + impurity_strength` on `impurity_site`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuenchSpec {
    pub n_sites: usize,
    pub lambda: f64,
    pub impurity_site: usize,
    pub impurity_strength: f64,
    /// Contiguous block observed; compared against an open chain of the same length.
    pub block: Vec<usize>,
}

impl QuenchSpec {
    /// `λ = 1`, strength 0.5 on site 0, block of `block_len` sites right after it.
    pub fn new(n_sites: usize, block_len: usize) -> Self {
        Self {
            n_sites,
            lambda: 1.0,
            impurity_site: 0,
            impurity_strength: 0.5,
            block: (1..=block_len).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.impurity_site >= self.n_sites {
            return Err(invalid(format!("impurity site {} out of range", self.impurity_site)));
        }
        if self.block.is_empty() || self.block.len() >= self.n_sites {
            return Err(invalid("block must be a non-empty proper subset of the chain"));
        }
        Ok(())
    }

    pub fn homogeneous(&self) -> SpinModelSpec {
        SpinModelSpec::ising(self.n_sites, self.lambda)
    }

    pub fn with_impurity(&self) -> SpinModelSpec {
        let mut fields = vec![self.lambda; self.n_sites];
        fields[self.impurity_site] += self.impurity_strength;
        self.homogeneous().with_site_fields(fields)
    }

    pub fn reference_block(&self) -> SpinModelSpec {
        SpinModelSpec::ising(self.block.len(), self.lambda).with_boundary(Boundary::Open)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuenchSample {
    pub t: f64,
    pub block_entropy: f64,
    /// Entropy of the whole chain; stays zero for unitary evolution.
    pub total_entropy: f64,
    /// `⟨H⟩` of the post-quench Hamiltonian.
    pub energy: f64,
    pub beta: f64,
    pub fidelity: f64,
    pub beta_at_upper_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuenchRun {
    pub spec: QuenchSpec,
    pub samples: Vec<QuenchSample>,
}

pub fn run_quench(spec: &QuenchSpec, times: &[f64]) -> Result<QuenchRun> {
    spec.validate()?;
    let initial = fermionic_ground_state(&spec.homogeneous())?;
    let gamma0 = initial.correlation();
    // The impurity keeps parity, so the evolution stays in the initial sector.
    let form = majorana_form(&jordan_wigner(&spec.with_impurity(), initial.sector)?);
    let propagator = Propagator::new(&form);
    let reference = ThermalReference::from_spec(&spec.reference_block(), ThermalMethod::Auto)?;
    let all: Vec<usize> = (0..spec.n_sites).collect();
    let samples = times
        .par_iter()
        .map(|&t| {
            let gamma = evolve_correlation(&gamma0, &propagator.at(t))?;
            let block = block_occupations(&block_correlation(&gamma, &spec.block)?)?;
            let total = von_neumann_entropy(&block_occupations(&block_correlation(&gamma, &all)?)?);
            let fit = fit_temperature(&block.product_weights(), &reference)?;
            Ok(QuenchSample {
                t,
                block_entropy: von_neumann_entropy(&block),
                total_entropy: total,
                energy: energy_expectation(&form, &gamma),
                beta: fit.beta,
                fidelity: fit.fidelity,
                beta_at_upper_edge: fit.at_upper_edge,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuenchRun { spec: spec.clone(), samples })
}
