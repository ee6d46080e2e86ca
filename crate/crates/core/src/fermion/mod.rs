//! Free-fermion solution of XY-type chains.
//!
//! Majorana operators are indexed from zero: `2j` is `(a_j - a_j†)/(i√2)` and
//! `2j+1` is `(a_j + a_j†)/√2`, so that `{γ_i, γ_j} = δ_ij`. The Hamiltonian
//! reads `H = Σ C_ij γ_i γ_j`.

mod analytic;
mod ground;
mod majorana;
mod quadratic;

pub use analytic::analytic_xy_spectrum;
pub use ground::{
    correlation_matrix, energy_gap, fermionic_ground_state, ground_state_parity, sector_ground_state,
    FermionicGroundState,
};
pub use majorana::{
    bogoliubov_angles, diagonalize_majorana, majorana_form, BogoliubovAngles, DiagonalizedChain, MajoranaForm,
    ZERO_MODE_TOL,
};
pub use quadratic::{jordan_wigner, ParitySector, QuadraticFermionForm};
