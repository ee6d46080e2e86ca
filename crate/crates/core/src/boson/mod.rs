//! Gaussian states of the harmonic (Klein-Gordon) chain.

mod impurity;
mod kg;
mod peaks;
mod state;
mod two_mode;

pub use impurity::{
    impurity_constant_closed_form, impurity_constant_sum, impurity_field_at, impurity_field_evolution, FieldEvolution,
};
pub use kg::{dispersion, kg_ground_state, Impurity, KgSpec};
pub use peaks::{dominant_period, peak_prominences, Peak};
pub use state::{
    gaussian_block_entropy, mode_entropy, position_to_moments, symplectic_eigenvalues, symplectic_eigenvalues_general,
    zeta, GaussianChainState, SYMPLECTIC_TOL,
};
pub use two_mode::{symmetric_gaussian_eof, two_mode_matrix, TwoModeStandardForm};
