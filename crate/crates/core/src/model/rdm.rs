use crate::error::{invalid, Result};
use crate::linalg::{eigvalsh, shannon_bits, CMatrix, C64};

use super::ground::DenseGroundState;

fn gather(x: usize, sites: &[usize]) -> usize {
    sites.iter().fold(0, |acc, &s| (acc << 1) | ((x >> s) & 1))
}

/// Amplitude matrix `M[a, e]` with rows labelled by the bits of `sites`
/// (first listed site most significant) and columns by the rest.
fn split(psi: &[C64], n_sites: usize, sites: &[usize]) -> Result<CMatrix> {
    if psi.len() != 1usize << n_sites {
        return Err(invalid("state length does not match 2^N"));
    }
    let mut seen = vec![false; n_sites];
    for &s in sites {
        if s >= n_sites || seen[s] {
            return Err(invalid(format!("site list {sites:?} has duplicates or out-of-range sites")));
        }
        seen[s] = true;
    }
    let env: Vec<usize> = (0..n_sites).filter(|&s| !seen[s]).collect();
    let mut m = CMatrix::zeros(1 << sites.len(), 1 << env.len());
    for (x, &amp) in psi.iter().enumerate() {
        m[(gather(x, sites), gather(x, &env))] = amp;
    }
    Ok(m)
}

/// Reduced density matrix of `sites`; basis index bits follow the order of
/// `sites`, first site most significant.
pub fn reduced_density_matrix(psi: &[C64], n_sites: usize, sites: &[usize]) -> Result<CMatrix> {
    let m = split(psi, n_sites, sites)?;
    Ok(&m * m.adjoint())
}

/// Von Neumann entropy in bits of `sites` for a pure state, computed on the
/// smaller side of the bipartition.
pub fn block_entropy_dense(psi: &[C64], n_sites: usize, sites: &[usize]) -> Result<f64> {
    let m = split(psi, n_sites, sites)?;
    let gram = if m.nrows() <= m.ncols() {
        &m * m.adjoint()
    } else {
        m.adjoint() * &m
    };
    Ok(shannon_bits(&eigvalsh(&gram)))
}

/// 4×4 density matrix of sites `i` and `j` in the basis
/// `|s_i s_j⟩ ∈ {00, 01, 10, 11}` (0 = up).
pub fn two_site_rdm(state: &DenseGroundState, i: usize, j: usize) -> Result<CMatrix> {
    if i == j {
        return Err(invalid(format!("two-site density matrix needs distinct sites, got {i} twice")));
    }
    reduced_density_matrix(&state.full_amplitudes(), state.n_sites, &[i, j])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singlet_projector() {
        let s = 1.0 / 2f64.sqrt();
        // |01⟩ - |10⟩ with site 0 as the first label: index bits are site0 | site1<<1
        let mut psi = vec![C64::new(0.0, 0.0); 4];
        psi[0b10] = C64::new(s, 0.0); // site0 = 0, site1 = 1
        psi[0b01] = C64::new(-s, 0.0);
        let rho = reduced_density_matrix(&psi, 2, &[0, 1]).unwrap();
        let v = [0.0, s, -s, 0.0];
        for r in 0..4 {
            for c in 0..4 {
                assert!((rho[(r, c)].re - v[r] * v[c]).abs() < 1e-15);
            }
        }
        assert!((block_entropy_dense(&psi, 2, &[0]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state() {
        let mut psi = vec![C64::new(0.0, 0.0); 8];
        psi[0] = C64::new(1.0, 0.0);
        let rho = reduced_density_matrix(&psi, 3, &[2, 0]).unwrap();
        assert!((rho[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(block_entropy_dense(&psi, 3, &[1]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_duplicates() {
        let psi = vec![C64::new(0.5, 0.0); 4];
        assert!(reduced_density_matrix(&psi, 2, &[1, 1]).is_err());
    }
}
