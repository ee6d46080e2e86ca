use crate::error::Result;
use crate::linalg::{CMatrix, RMatrix, C64};
use crate::model::{Boundary, Parity, SpinModelSpec};

use super::majorana::{diagonalize_majorana, majorana_form, DiagonalizedChain, MajoranaForm};
use super::quadratic::{jordan_wigner, ParitySector};

/// Lowest state of an XY-family chain within one fermion boundary sector.
#[derive(Clone, Debug)]
pub struct FermionicGroundState {
    pub sector: ParitySector,
    pub energy: f64,
    pub form: MajoranaForm,
    pub chain: DiagonalizedChain,
    /// Quasi-particle occupations in the order of `chain.omega_bar`.
    pub occupied: Vec<bool>,
    /// Spin parity of the state.
    pub parity: Parity,
}

impl FermionicGroundState {
    /// Majorana correlation matrix `Γ_ij = ½⟨[γ_i, γ_j]⟩`.
    pub fn correlation(&self) -> CMatrix {
        correlation_matrix(&self.chain, &self.occupied)
    }

    /// True if zero modes make the state one of several degenerate choices.
    pub fn is_degenerate(&self) -> bool {
        self.chain.zero_modes > 0
    }

    pub fn n_sites(&self) -> usize {
        self.chain.n_modes()
    }
}

/// `Γ = O Γ' Oᵀ` where mode `k` contributes `Γ'_{2k,2k+1} = -(i/2)(1 - 2n_k)`.
pub fn correlation_matrix(chain: &DiagonalizedChain, occupied: &[bool]) -> CMatrix {
    let dim = chain.orthogonal.nrows();
    let o = &chain.orthogonal;
    // Γ is imaginary: Γ = i·(O K Oᵀ) with K real antisymmetric.
    let mut k = RMatrix::zeros(dim, dim);
    for (m, &occ) in occupied.iter().enumerate() {
        let s = if occ { -1.0 } else { 1.0 };
        k[(2 * m, 2 * m + 1)] = -0.5 * s;
        k[(2 * m + 1, 2 * m)] = 0.5 * s;
    }
    let real = o * k * o.transpose();
    real.map(|x| C64::new(0.0, x))
}

/// Ground state inside one sector. In a parity sector the quasi-particle
/// vacuum is used when its parity matches; otherwise the lowest mode is
/// occupied, which costs `2 ω_0`.
pub fn sector_ground_state(spec: &SpinModelSpec, sector: ParitySector) -> Result<FermionicGroundState> {
    let q = jordan_wigner(spec, sector)?;
    let sector = q.sector;
    let form = majorana_form(&q);
    let chain = diagonalize_majorana(&form)?;
    let n = chain.n_modes();
    let vacuum = chain.vacuum_parity();
    let mut occupied = vec![false; n];
    let mut energy = chain.ground_energy();
    let parity = match sector.parity() {
        Some(p) if p != vacuum => {
            occupied[0] = true;
            energy += 2.0 * chain.omega_bar[0];
            p
        }
        Some(p) => p,
        None => vacuum,
    };
    Ok(FermionicGroundState {
        sector,
        energy,
        form,
        chain,
        occupied,
        parity,
    })
}

const PARITY_TIE_TOL: f64 = 1e-10;

/// Ground state of the spin chain. Open chains have a single sector; periodic
/// chains take the lower of the two parity sectors, ties going to even.
pub fn fermionic_ground_state(spec: &SpinModelSpec) -> Result<FermionicGroundState> {
    if spec.boundary == Boundary::Open {
        return sector_ground_state(spec, ParitySector::Open);
    }
    let even = sector_ground_state(spec, ParitySector::Even)?;
    let odd = sector_ground_state(spec, ParitySector::Odd)?;
    Ok(if odd.energy < even.energy - PARITY_TIE_TOL { odd } else { even })
}

pub fn ground_state_parity(spec: &SpinModelSpec) -> Result<Parity> {
    Ok(fermionic_ground_state(spec)?.parity)
}

/// Smallest mode energy `min ω̄` in the ground-state sector. The lowest
/// excitation inside the sector costs twice this.
pub fn energy_gap(spec: &SpinModelSpec) -> Result<f64> {
    let gs = fermionic_ground_state(spec)?;
    Ok(gs.chain.omega_bar[0])
}
