//! Spin-1/2 chain Hamiltonians and exact diagonalization.
//!
//! Basis convention: site `n` is bit `n` of the basis index, bit value 0 is
//! spin up (`σ^z = +1`) and bit value 1 is spin down. The parity operator
//! `⊗σ^z` is therefore `(-1)^popcount`.

mod ground;
mod lanczos;
mod operator;
mod rdm;
mod sector;
mod spec;

pub use ground::{ground_state, sector_spectrum, DenseGroundState, GroundStateOptions};
pub use lanczos::{lowest_eigenpairs, LanczosOptions, LanczosResult};
pub use operator::{build_full_hamiltonian, hamiltonian_terms, Pauli, PauliTerm, SparseOperator, DENSE_CAP};
pub use rdm::{block_entropy_dense, reduced_density_matrix, two_site_rdm};
pub use sector::{
    apply_symmetry, build_sector_hamiltonian, enumerate_sector_basis, representative, Parity, SectorBasis, SymmetryOp,
    SymmetrySector,
};
pub use spec::{Boundary, ModelFamily, SpinModelSpec};
