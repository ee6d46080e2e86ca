//! Few-electron lowest-Landau-level systems on a torus.
//!
//! Orbitals are labelled `0..N_s` and orbital `j` is bit `j` of a basis
//! mask. Total momentum is `Σ j mod N_s` with that labelling.

mod basis;
mod hamiltonian;
mod interaction;
mod scan;
mod trace;

pub use basis::{binomial, OccupationBasis};
pub use hamiltonian::{build_fqhe_hamiltonian, fqhe_ground_multiplet, GroundMultiplet, SECTOR_CAP};
pub use interaction::{matrix_element, FqheSpec, InteractionTensor};
pub use scan::{fqhe_entropy_at, fqhe_entropy_scan, largest_jump, FqheEntropyPoint};
pub use trace::{identical_particle_partial_trace, partial_trace_pure, reduced_entropy, TraceConvention};
