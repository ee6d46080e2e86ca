//! Time evolution of free-fermion states and comparison of block spectra
//! with thermal ones.

mod evolution;
mod gaussian;
mod quench;
mod thermal;

pub use evolution::{energy_expectation, evolution_matrix, evolve_correlation, EvolutionMatrix, Propagator};
pub use gaussian::{gaussian_fermionic_fidelity, GaussianFermionicState};
pub use quench::{run_quench, QuenchRun, QuenchSample, QuenchSpec};
pub use thermal::{
    classical_fidelity, fit_temperature, thermal_block_spectrum, thermal_block_spectrum_with, ThermalMethod,
    ThermalReference, ThermalSpectrum, TemperatureFit, BETA_GRID,
};
