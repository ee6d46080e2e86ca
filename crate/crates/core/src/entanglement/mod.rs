//! Entropies, Schmidt spectra and correlators of ground states.

mod concurrence;
mod correlators;
mod profile;
mod schmidt;
mod spectrum;

pub use concurrence::{concurrence, eof_from_concurrence, validate_density_matrix};
pub use correlators::{
    correlation_length, sigma_z, sigma_z_dense, zz_connected, zz_connected_dense, zz_correlation,
    CorrelationLength,
};
pub use profile::{
    block_correlation, block_entropy_fermionic, entropy_profile, entropy_profile_with, EntropyMethod,
    EntropyProfile,
};
pub use schmidt::{schmidt_spectrum, SchmidtSpectrum};
pub use spectrum::{
    binary_entropy, block_occupations, renyi_entropy, single_copy, von_neumann_entropy, BlockSpectrum, CLAMP_TOL,
};
