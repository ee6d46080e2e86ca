use std::collections::HashMap;

use super::basis::{binomial, OccupationBasis};
use crate::error::{invalid, Result};
use crate::linalg::{eigvalsh, shannon_bits, CMatrix, C64};

/// How removed particles enter the reduced matrix. `Occupation` drops them
/// without signs, which is the convention of the displayed three-orbital
/// example. `Fermionic` keeps the sign of moving the removed creation
/// operators to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceConvention {
    #[default]
    Occupation,
    Fermionic,
}

fn removal_sign(kept: u64, removed: u64, conv: TraceConvention) -> f64 {
    if conv == TraceConvention::Occupation {
        return 1.0;
    }
    // Pairs (r, k) with r < k in ascending order need one transposition each.
    let mut swaps = 0;
    let mut r = removed;
    while r != 0 {
        let bit = r.trailing_zeros();
        swaps += (kept >> bit).count_ones();
        r &= r - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// For every removed subset `R`, the basis states containing it with the
/// reduced index of the kept part and the sign.
fn removal_groups(
    basis: &OccupationBasis,
    reduced: &OccupationBasis,
    n_remove: usize,
    conv: TraceConvention,
) -> Vec<Vec<(usize, usize, f64)>> {
    let mut groups: HashMap<u64, Vec<(usize, usize, f64)>> = HashMap::new();
    for (xi, &x) in basis.states.iter().enumerate() {
        let bits: Vec<u32> = (0..64).filter(|&b| x >> b & 1 == 1).collect();
        for_each_subset(&bits, n_remove, &mut |r| {
            let k = x & !r;
            let ki = reduced.index_of(k).expect("kept part lies in the reduced basis");
            groups.entry(r).or_default().push((ki, xi, removal_sign(k, r, conv)));
        });
    }
    let mut keys: Vec<u64> = groups.keys().copied().collect();
    keys.sort_unstable();
    keys.into_iter().map(|k| groups.remove(&k).unwrap()).collect()
}

fn for_each_subset(bits: &[u32], size: usize, f: &mut impl FnMut(u64)) {
    fn rec(bits: &[u32], size: usize, start: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if size == 0 {
            f(acc);
            return;
        }
        for i in start..=bits.len() - size {
            rec(bits, size - 1, i + 1, acc | (1u64 << bits[i]), f);
        }
    }
    rec(bits, size, 0, 0, f)
}

fn check(basis: &OccupationBasis, n_keep: usize) -> Result<OccupationBasis> {
    if basis.momentum.is_some() {
        return Err(invalid("partial trace needs the full occupation basis"));
    }
    if n_keep == 0 || n_keep >= basis.n_particles {
        return Err(invalid(format!("n_keep must lie in 1..{}, got {n_keep}", basis.n_particles)));
    }
    OccupationBasis::full(basis.n_orbitals, n_keep)
}

/// Reduces `rho` over `C(N_s, N_e)` states to `n_keep` particles by summing
/// `⟨R|ρ|R⟩` over every set `R` of `N_e - n_keep` occupied orbitals and
/// dividing by `C(N_e, n_keep)`.
pub fn identical_particle_partial_trace(
    rho: &CMatrix,
    basis: &OccupationBasis,
    n_keep: usize,
    conv: TraceConvention,
) -> Result<(CMatrix, OccupationBasis)> {
    let reduced = check(basis, n_keep)?;
    if rho.shape() != (basis.dim(), basis.dim()) {
        return Err(invalid("density matrix does not match the basis"));
    }
    let norm = 1.0 / binomial(basis.n_particles, n_keep) as f64;
    let mut out = CMatrix::zeros(reduced.dim(), reduced.dim());
    for group in removal_groups(basis, &reduced, basis.n_particles - n_keep, conv) {
        for &(ka, xa, sa) in &group {
            for &(kb, xb, sb) in &group {
                out[(ka, kb)] += rho[(xa, xb)] * (sa * sb * norm);
            }
        }
    }
    Ok((out, reduced))
}

/// Same reduction for the pure state `psi`.
pub fn partial_trace_pure(
    psi: &[C64],
    basis: &OccupationBasis,
    n_keep: usize,
    conv: TraceConvention,
) -> Result<(CMatrix, OccupationBasis)> {
    let reduced = check(basis, n_keep)?;
    if psi.len() != basis.dim() {
        return Err(invalid("state does not match the basis"));
    }
    let norm = 1.0 / binomial(basis.n_particles, n_keep) as f64;
    let mut out = CMatrix::zeros(reduced.dim(), reduced.dim());
    for group in removal_groups(basis, &reduced, basis.n_particles - n_keep, conv) {
        for &(ka, xa, sa) in &group {
            let a = psi[xa] * (sa * norm);
            for &(kb, xb, sb) in &group {
                out[(ka, kb)] += a * psi[xb].conj() * sb;
            }
        }
    }
    Ok((out, reduced))
}

/// Von Neumann entropy in bits of a reduced matrix.
pub fn reduced_entropy(rho: &CMatrix) -> f64 {
    shannon_bits(&eigvalsh(rho))
}
