//! Numerical toolkit for entanglement in one-dimensional quantum systems.
//!
//! The crate is organised by physical system:
//!
//! * [`model`] builds spin-1/2 chain Hamiltonians and diagonalizes them in
//!   translation and parity sectors. It is the dense oracle for everything else.
//! * [`fermion`] maps XY-type chains onto free fermions and diagonalizes the
//!   Majorana form.
//! * [`entanglement`] turns correlation matrices and dense states into block
//!   entropies, Schmidt spectra, concurrences and spin correlators.
//! * [`criticality`] fits entropy profiles to the conformal signature.
//! * [`boson`] handles Gaussian states of the harmonic (Klein-Gordon) chain.
//! * [`dynamics`] evolves free-fermion states in time and compares block
//!   spectra with thermal ones.
//! * [`fqhe`] diagonalizes few-electron quantum Hall systems on a torus.
//!
//! Entropies are reported in bits throughout.

pub mod boson;
pub mod criticality;
pub mod dynamics;
pub mod entanglement;
mod error;
pub mod fermion;
pub mod fqhe;
pub mod linalg;
pub mod model;

pub use error::{Error, Result};
pub use linalg::{CMatrix, RMatrix, C64};

pub use boson::{GaussianChainState, KgSpec, TwoModeStandardForm};
pub use criticality::{CEstimate, CriticalSignature, KacTable, LineScan};
pub use dynamics::{EvolutionMatrix, GaussianFermionicState, ThermalSpectrum};
pub use entanglement::{BlockSpectrum, EntropyProfile, SchmidtSpectrum};
pub use fqhe::{FqheSpec, InteractionTensor, OccupationBasis};
pub use fermion::{DiagonalizedChain, FermionicGroundState, MajoranaForm, QuadraticFermionForm};
pub use model::{Boundary, DenseGroundState, Parity, SectorBasis, SpinModelSpec, SymmetrySector};
