use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{eigh, C64};

use super::lanczos::{lowest_eigenpairs, LanczosOptions};
use super::operator::{hamiltonian_terms, SparseOperator, DENSE_CAP};
use super::sector::{build_sector_hamiltonian, enumerate_sector_basis, Parity, SectorBasis, SymmetrySector};
use super::spec::SpinModelSpec;

#[derive(Clone, Debug)]
pub struct GroundStateOptions {
    /// Blocks up to this dimension are diagonalized densely, larger ones by Lanczos.
    pub dense_limit: usize,
    /// Largest block handed to Lanczos.
    pub iterative_limit: usize,
    /// Energies closer than this count as degenerate.
    pub degeneracy_tol: f64,
    pub lanczos: LanczosOptions,
}

impl Default for GroundStateOptions {
    fn default() -> Self {
        Self {
            dense_limit: 1200,
            iterative_limit: 20_000,
            degeneracy_tol: 1e-8,
            lanczos: LanczosOptions {
                n_eigen: 2,
                ..Default::default()
            },
        }
    }
}

#[derive(Clone, Debug)]
enum Subspace {
    Sector(SectorBasis),
    Listed { n_sites: usize, states: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct DenseGroundState {
    pub n_sites: usize,
    pub energy: f64,
    /// Amplitudes in the block basis the state was found in.
    pub amplitudes: Vec<C64>,
    /// Momentum-parity sector, when translation symmetry was used.
    pub sector: Option<SymmetrySector>,
    pub parity: Option<Parity>,
    /// Number of eigenvalues within the degeneracy tolerance of `energy`
    /// over all blocks that were searched.
    pub degeneracy: usize,
    subspace: Subspace,
}

impl DenseGroundState {
    /// State vector over the full `2^N` computational basis.
    pub fn full_amplitudes(&self) -> Vec<C64> {
        match &self.subspace {
            Subspace::Sector(b) => b.expand(&self.amplitudes),
            Subspace::Listed { n_sites, states } => {
                let mut out = vec![C64::new(0.0, 0.0); 1usize << n_sites];
                for (&s, &a) in states.iter().zip(&self.amplitudes) {
                    out[s as usize] = a;
                }
                out
            }
        }
    }
}

struct BlockSolution {
    low: Vec<f64>,
    vector: Vec<C64>,
}

fn solve_block(op: &SparseOperator, opts: &GroundStateOptions) -> Result<BlockSolution> {
    let dim = op.dim();
    if dim <= opts.dense_limit {
        let (vals, vecs) = eigh(&op.to_dense());
        let low = vals
            .iter()
            .copied()
            .take_while(|&v| v - vals[0] <= opts.degeneracy_tol)
            .collect();
        Ok(BlockSolution {
            low,
            vector: vecs.column(0).iter().copied().collect(),
        })
    } else if dim <= opts.iterative_limit {
        let res = lowest_eigenpairs(op, &opts.lanczos)?;
        let e0 = res.values[0];
        let low = res
            .values
            .iter()
            .zip(&res.residuals)
            .filter(|(&v, &r)| v - e0 <= opts.degeneracy_tol && r < 1e-6)
            .map(|(&v, _)| v)
            .collect();
        Ok(BlockSolution {
            low,
            vector: res.vectors.into_iter().next().unwrap_or_default(),
        })
    } else {
        Err(Error::SizeCap {
            what: "iterative block",
            size: dim,
            cap: opts.iterative_limit,
        })
    }
}

fn listed_operator(spec: &SpinModelSpec, states: &[u64]) -> SparseOperator {
    let terms = hamiltonian_terms(spec);
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut rows = vec![BTreeMap::new(); states.len()];
    for (col, &s) in states.iter().enumerate() {
        for t in &terms {
            let (out, amp) = t.apply(s);
            if let Some(&row) = index.get(&out) {
                *rows[row].entry(col).or_insert(C64::new(0.0, 0.0)) += amp;
            }
        }
    }
    SparseOperator::from_rows(rows)
}

/// Global ground state over all symmetry blocks the model allows.
///
/// Translation-invariant periodic chains are split into momentum-parity
/// sectors; the lowest energy wins with ties broken to the lowest momentum
/// and then even parity. Other parity-conserving chains are split by parity
/// only, and the rest use the full basis.
pub fn ground_state(spec: &SpinModelSpec) -> Result<DenseGroundState> {
    ground_state_with(spec, &GroundStateOptions::default())
}

pub fn ground_state_with(spec: &SpinModelSpec, opts: &GroundStateOptions) -> Result<DenseGroundState> {
    spec.validate()?;
    let n = spec.n_sites;
    let tie_tol = 1e-10;
    if spec.is_translation_invariant() && spec.conserves_parity() && n <= 24 {
        let sectors = SymmetrySector::all(n);
        let solved: Vec<Result<Option<(SectorBasis, BlockSolution)>>> = sectors
            .par_iter()
            .map(|&sec| {
                let basis = enumerate_sector_basis(n, sec)?;
                if basis.dim() == 0 {
                    return Ok(None);
                }
                let op = build_sector_hamiltonian(spec, &basis)?;
                Ok(Some((basis, solve_block(&op, opts)?)))
            })
            .collect();
        let solved: Vec<(SectorBasis, BlockSolution)> =
            solved.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
        let mut best: Option<usize> = None;
        for (i, (_, sol)) in solved.iter().enumerate() {
            if best.is_none_or(|b| sol.low[0] < solved[b].1.low[0] - tie_tol) {
                best = Some(i);
            }
        }
        let best = best.ok_or_else(|| Error::InvalidArgument("no sectors".into()))?;
        let energy = solved[best].1.low[0];
        let degeneracy = solved
            .iter()
            .flat_map(|(_, s)| s.low.iter())
            .filter(|&&v| (v - energy).abs() <= opts.degeneracy_tol)
            .count();
        let (basis, sol) = solved.into_iter().nth(best).expect("index in range");
        return Ok(DenseGroundState {
            n_sites: n,
            energy,
            amplitudes: sol.vector,
            sector: Some(basis.sector),
            parity: Some(basis.sector.parity),
            degeneracy,
            subspace: Subspace::Sector(basis),
        });
    }

    if n > DENSE_CAP {
        return Err(Error::SizeCap {
            what: "chain without translation symmetry",
            size: n,
            cap: DENSE_CAP,
        });
    }
    let blocks: Vec<(Option<Parity>, Vec<u64>)> = if spec.conserves_parity() {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| (Some(p), (0..(1u64 << n)).filter(|&s| Parity::of_state(s) == p).collect()))
            .collect()
    } else {
        vec![(None, (0..(1u64 << n)).collect())]
    };
    let solved: Vec<(Option<Parity>, Vec<u64>, BlockSolution)> = blocks
        .into_par_iter()
        .map(|(p, states)| {
            let op = listed_operator(spec, &states);
            solve_block(&op, opts).map(|s| (p, states, s))
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, s) in solved.iter().enumerate() {
        if s.2.low[0] < solved[best].2.low[0] - tie_tol {
            best = i;
        }
    }
    let energy = solved[best].2.low[0];
    let degeneracy = solved
        .iter()
        .flat_map(|s| s.2.low.iter())
        .filter(|&&v| (v - energy).abs() <= opts.degeneracy_tol)
        .count();
    let (parity, states, sol) = solved.into_iter().nth(best).expect("index in range");
    Ok(DenseGroundState {
        n_sites: n,
        energy,
        amplitudes: sol.vector,
        sector: None,
        parity,
        degeneracy,
        subspace: Subspace::Listed { n_sites: n, states },
    })
}

/// Complete spectrum of one momentum-parity block, ascending.
pub fn sector_spectrum(spec: &SpinModelSpec, sector: SymmetrySector) -> Result<Vec<f64>> {
    let basis = enumerate_sector_basis(spec.n_sites, sector)?;
    let op = build_sector_hamiltonian(spec, &basis)?;
    Ok(crate::linalg::eigvalsh(&op.to_dense()))
}
