use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::C64;

use super::operator::{hamiltonian_terms, SparseOperator};
use super::spec::SpinModelSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    /// `⊗σ^z = +1`: an even number of down spins.
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn from_sign(s: i32) -> Option<Self> {
        match s {
            1 => Some(Parity::Even),
            -1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn of_state(state: u64) -> Self {
        if state.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetrySector {
    pub momentum: usize,
    pub parity: Parity,
}

impl SymmetrySector {
    pub fn new(momentum: usize, parity: Parity) -> Self {
        Self { momentum, parity }
    }

    /// All sectors of an `n`-site ring in tie-break order: ascending `k`,
    /// even parity first.
    pub fn all(n_sites: usize) -> Vec<Self> {
        (0..n_sites)
            .flat_map(|k| [Parity::Even, Parity::Odd].map(|p| Self::new(k, p)))
            .collect()
    }
}

/// Symmetry operations of a periodic chain. Only translation and parity are
/// used for block reduction since reflection does not commute with
/// translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryOp {
    /// Site `n` moves to `n + 1`.
    Translation,
    /// Spin flip `⊗σ^x`; the sector label is the eigenvalue of `⊗σ^z`.
    SpinFlip,
    /// Site `n` moves to `N - 1 - n`.
    Reflection,
}

pub fn apply_symmetry(op: SymmetryOp, state: u64, n_sites: usize) -> u64 {
    let mask = full_mask(n_sites);
    match op {
        SymmetryOp::Translation => rotate(state, n_sites, 1),
        SymmetryOp::SpinFlip => !state & mask,
        SymmetryOp::Reflection => (0..n_sites).fold(0, |acc, n| acc | (((state >> n) & 1) << (n_sites - 1 - n))),
    }
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `T^by` applied to `state`.
#[inline]
fn rotate(state: u64, n: usize, by: usize) -> u64 {
    let by = by % n;
    if by == 0 {
        return state;
    }
    ((state << by) | (state >> (n - by))) & full_mask(n)
}

/// Smallest member `r` of the translation orbit of `state` and the shift `d`
/// with `state = T^d r`.
#[inline]
pub fn representative(state: u64, n_sites: usize) -> (u64, usize) {
    let mut best = state;
    let mut best_j = 0;
    let mut x = state;
    for j in 1..n_sites {
        x = rotate(x, n_sites, 1);
        if x < best {
            best = x;
            best_j = j;
        }
    }
    (best, (n_sites - best_j) % n_sites)
}

fn orbit_size(rep: u64, n: usize) -> usize {
    let mut x = rep;
    for s in 1..=n {
        x = rotate(x, n, 1);
        if x == rep {
            return s;
        }
    }
    n
}

/// Momentum-parity block basis: one translation-symmetrized state per
/// compatible orbit,
/// `|r, k⟩ = s_r^{-1/2} Σ_{d<s_r} e^{-2πi k d/N} T^d |r⟩`.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub n_sites: usize,
    pub sector: SymmetrySector,
    pub representatives: Vec<u64>,
    pub orbit_sizes: Vec<usize>,
    index: HashMap<u64, usize>,
}

impl SectorBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn index_of(&self, rep: u64) -> Option<usize> {
        self.index.get(&rep).copied()
    }

    fn phase(&self, shift: usize) -> C64 {
        let theta = 2.0 * PI * self.sector.momentum as f64 / self.n_sites as f64;
        C64::from_polar(1.0, theta * shift as f64)
    }

    /// Expands sector amplitudes into the full `2^N` basis.
    pub fn expand(&self, amplitudes: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); 1usize << self.n_sites];
        for ((&rep, &size), &c) in self.representatives.iter().zip(&self.orbit_sizes).zip(amplitudes) {
            let norm = (size as f64).sqrt();
            let mut x = rep;
            for d in 0..size {
                out[x as usize] += c * self.phase(d).conj() / norm;
                x = rotate(x, self.n_sites, 1);
            }
        }
        out
    }
}

pub fn enumerate_sector_basis(n_sites: usize, sector: SymmetrySector) -> Result<SectorBasis> {
    if !(2..=30).contains(&n_sites) {
        return Err(invalid(format!("sector enumeration supports 2..=30 sites, got {n_sites}")));
    }
    if sector.momentum >= n_sites {
        return Err(invalid(format!("momentum {} out of range for {} sites", sector.momentum, n_sites)));
    }
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    for state in 0..(1u64 << n_sites) {
        if Parity::of_state(state) != sector.parity {
            continue;
        }
        if representative(state, n_sites).0 != state {
            continue;
        }
        let size = orbit_size(state, n_sites);
        if (sector.momentum * size) % n_sites == 0 {
            representatives.push(state);
            orbit_sizes.push(size);
        }
    }
    let index = representatives.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    Ok(SectorBasis {
        n_sites,
        sector,
        representatives,
        orbit_sizes,
        index,
    })
}

/// Block of the Hamiltonian in one momentum-parity sector.
pub fn build_sector_hamiltonian(spec: &SpinModelSpec, basis: &SectorBasis) -> Result<SparseOperator> {
    spec.validate()?;
    if spec.n_sites != basis.n_sites {
        return Err(invalid("basis and model have different sizes"));
    }
    if !spec.is_translation_invariant() {
        return Err(Error::SymmetryViolation(
            "translation needs a periodic chain without site-dependent parameters".into(),
        ));
    }
    if !spec.conserves_parity() {
        return Err(Error::SymmetryViolation(
            "transverse fields or in-plane DM couplings break parity".into(),
        ));
    }
    let terms = hamiltonian_terms(spec);
    let n = spec.n_sites;
    let mut rows = vec![BTreeMap::new(); basis.dim()];
    for (col, (&rep, &size)) in basis.representatives.iter().zip(&basis.orbit_sizes).enumerate() {
        for t in &terms {
            let (state, amp) = t.apply(rep);
            let (target, shift) = representative(state, n);
            if let Some(row) = basis.index_of(target) {
                let ratio = (size as f64 / basis.orbit_sizes[row] as f64).sqrt();
                *rows[row].entry(col).or_insert(C64::new(0.0, 0.0)) += amp * basis.phase(shift) * ratio;
            }
        }
    }
    Ok(SparseOperator::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_site_table() {
        let b = enumerate_sector_basis(4, SymmetrySector::new(0, Parity::Even)).unwrap();
        assert_eq!(b.representatives, vec![0b0000, 0b0011, 0b0101, 0b1111]);
        let b = enumerate_sector_basis(4, SymmetrySector::new(1, Parity::Even)).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn dimensions_complete() {
        for n in 2..=12 {
            let total: usize = SymmetrySector::all(n)
                .into_iter()
                .map(|s| enumerate_sector_basis(n, s).unwrap().dim())
                .sum();
            assert_eq!(total, 1 << n, "n = {n}");
        }
    }

    #[test]
    fn representative_shift_reconstructs() {
        let n = 7;
        for s in 0..(1u64 << n) {
            let (r, d) = representative(s, n);
            assert_eq!(rotate(r, n, d), s);
            assert!(r <= s);
        }
    }

    #[test]
    fn symmetry_ops() {
        assert_eq!(apply_symmetry(SymmetryOp::Translation, 0b1001, 4), 0b0011);
        assert_eq!(apply_symmetry(SymmetryOp::SpinFlip, 0b1001, 4), 0b0110);
        assert_eq!(apply_symmetry(SymmetryOp::Reflection, 0b0011, 4), 0b1100);
        // T and R do not commute
        let s = 0b0001;
        let tr = apply_symmetry(SymmetryOp::Translation, apply_symmetry(SymmetryOp::Reflection, s, 4), 4);
        let rt = apply_symmetry(SymmetryOp::Reflection, apply_symmetry(SymmetryOp::Translation, s, 4), 4);
        assert_ne!(tr, rt);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(enumerate_sector_basis(4, SymmetrySector::new(4, Parity::Even)).is_err());
        let spec = SpinModelSpec::ising(4, 1.0).with_site_fields(vec![1.0, 2.0, 1.0, 1.0]);
        let b = enumerate_sector_basis(4, SymmetrySector::new(0, Parity::Even)).unwrap();
        assert!(matches!(build_sector_hamiltonian(&spec, &b), Err(Error::SymmetryViolation(_))));
    }
}
