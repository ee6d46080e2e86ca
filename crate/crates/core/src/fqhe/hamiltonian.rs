use rayon::prelude::*;

use super::basis::OccupationBasis;
use super::interaction::{FqheSpec, InteractionTensor};
use crate::error::{Error, Result};
use crate::linalg::{eigh, hermiticity_residual, max_abs, CMatrix, C64};

/// Largest basis a single dense solve accepts.
pub const SECTOR_CAP: usize = 20_000;

/// Relative energy window for counting ground-state degeneracy.
const DEGENERACY_TOL: f64 = 1e-9;

fn sign_below(x: u64, j: usize) -> f64 {
    if (x & ((1u64 << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ 𝒜(j₁,j₂,j₃,j₄) a†_{j₁} a†_{j₂} a_{j₃} a_{j₄}` on `basis`. The
/// single-particle term is a constant shift and is left out.
pub fn build_fqhe_hamiltonian(tensor: &InteractionTensor, basis: &OccupationBasis) -> Result<CMatrix> {
    if basis.dim() > SECTOR_CAP {
        return Err(Error::SizeCap { what: "FQHE basis", size: basis.dim(), cap: SECTOR_CAP });
    }
    let ns = basis.n_orbitals;
    if tensor.n_orbitals != ns {
        return Err(crate::error::invalid("tensor and basis disagree on N_s"));
    }
    let dim = basis.dim();
    let columns: Vec<Vec<(usize, C64)>> = basis
        .states
        .par_iter()
        .map(|&x| {
            let mut col = Vec::new();
            for j4 in (0..ns).filter(|&j| x >> j & 1 == 1) {
                let s4 = sign_below(x, j4);
                let x1 = x ^ (1 << j4);
                for j3 in (0..ns).filter(|&j| x1 >> j & 1 == 1) {
                    let s3 = sign_below(x1, j3);
                    let x2 = x1 ^ (1 << j3);
                    for j2 in (0..ns).filter(|&j| x2 >> j & 1 == 0) {
                        let j1 = (j3 + j4 + ns - j2) % ns;
                        let x3 = x2 | (1 << j2);
                        if x3 >> j1 & 1 == 1 {
                            continue;
                        }
                        let s2 = sign_below(x2, j2);
                        let s1 = sign_below(x3, j1);
                        let y = x3 | (1 << j1);
                        let row = basis.index_of(y).expect("two-body terms conserve momentum");
                        col.push((row, tensor.get(j1, j2, j3, j4) * (s1 * s2 * s3 * s4)));
                    }
                }
            }
            col
        })
        .collect();
    let mut h = CMatrix::zeros(dim, dim);
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            h[(r, c)] += v;
        }
    }
    let res = hermiticity_residual(&h);
    if res > 1e-10 * max_abs(&h).max(1.0) {
        return Err(Error::NotComputable(format!("assembled Hamiltonian not Hermitian (residual {res:.3e})")));
    }
    Ok(h)
}

/// Lowest level over all momentum sectors with every state within the
/// degeneracy window, as vectors over the full occupation basis.
#[derive(Debug, Clone)]
pub struct GroundMultiplet {
    pub energy: f64,
    pub basis: OccupationBasis,
    pub states: Vec<Vec<C64>>,
    /// Momentum sector of each state; `None` for a full-basis solve.
    pub momenta: Vec<Option<usize>>,
}

impl GroundMultiplet {
    pub fn degeneracy(&self) -> usize {
        self.states.len()
    }
}

/// Ground multiplet from per-sector solves, or from one dense solve of the
/// full basis when `full_basis` is set.
pub fn fqhe_ground_multiplet(spec: &FqheSpec, tensor: &InteractionTensor, full_basis: bool) -> Result<GroundMultiplet> {
    let full = OccupationBasis::full(spec.n_orbitals, spec.n_electrons)?;
    let blocks: Vec<OccupationBasis> = if full_basis {
        vec![full.clone()]
    } else {
        (0..spec.n_orbitals)
            .map(|k| OccupationBasis::sector(spec.n_orbitals, spec.n_electrons, k))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|b| b.dim() > 0)
            .collect()
    };
    let solved: Vec<(OccupationBasis, Vec<f64>, CMatrix)> = blocks
        .into_par_iter()
        .map(|b| {
            let h = build_fqhe_hamiltonian(tensor, &b)?;
            let (vals, vecs) = eigh(&h);
            Ok((b, vals, vecs))
        })
        .collect::<Result<Vec<_>>>()?;
    let e0 = solved.iter().map(|(_, v, _)| v[0]).fold(f64::INFINITY, f64::min);
    let window = DEGENERACY_TOL * e0.abs().max(1.0);
    let mut states = Vec::new();
    let mut momenta = Vec::new();
    for (b, vals, vecs) in &solved {
        for (i, &e) in vals.iter().enumerate() {
            if e - e0 > window {
                break;
            }
            let mut psi = vec![C64::new(0.0, 0.0); full.dim()];
            for (r, &mask) in b.states.iter().enumerate() {
                psi[full.index_of(mask).expect("sector states are in the full basis")] = vecs[(r, i)];
            }
            states.push(psi);
            momenta.push(b.momentum);
        }
    }
    Ok(GroundMultiplet { energy: e0, basis: full, states, momenta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_and_block_diagonal() {
        let spec = FqheSpec::new(2, 6, 1.0).unwrap();
        let t = InteractionTensor::new(&spec).unwrap();
        let full = OccupationBasis::full(6, 2).unwrap();
        let h = build_fqhe_hamiltonian(&t, &full).unwrap();
        assert!(hermiticity_residual(&h) < 1e-12);
        for (i, &x) in full.states.iter().enumerate() {
            for (j, &y) in full.states.iter().enumerate() {
                if full.momentum_of(x) != full.momentum_of(y) {
                    assert_eq!(h[(i, j)], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn sector_and_full_solves_agree() {
        let spec = FqheSpec::new(3, 9, 0.7).unwrap();
        let t = InteractionTensor::new(&spec).unwrap();
        let a = fqhe_ground_multiplet(&spec, &t, false).unwrap();
        let b = fqhe_ground_multiplet(&spec, &t, true).unwrap();
        assert!((a.energy - b.energy).abs() < 1e-10);
        assert_eq!(a.degeneracy(), b.degeneracy());
        // Centre-of-mass degeneracy at ν = 1/3.
        assert_eq!(a.degeneracy() % 3, 0);
    }

    #[test]
    fn filled_level_is_one_state() {
        let spec = FqheSpec::new(5, 5, 1.0).unwrap();
        let t = InteractionTensor::new(&spec).unwrap();
        let g = fqhe_ground_multiplet(&spec, &t, false).unwrap();
        assert_eq!(g.degeneracy(), 1);
        assert_eq!(g.basis.dim(), 1);
    }
}
