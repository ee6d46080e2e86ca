use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, hermiticity_residual, sqrt_psd, CMatrix, C64};

use super::spectrum::binary_entropy;

const TOL: f64 = 1e-9;

/// Checks that `rho` is a Hermitian, unit-trace, positive semidefinite matrix.
pub fn validate_density_matrix(rho: &CMatrix) -> Result<()> {
    if rho.nrows() != rho.ncols() {
        return Err(Error::InvalidState("density matrix must be square".into()));
    }
    let herm = hermiticity_residual(rho);
    if herm > TOL {
        return Err(Error::InvalidState(format!("density matrix not Hermitian (residual {herm:.3e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
        return Err(Error::InvalidState(format!("density matrix trace {tr}")));
    }
    let min = eigvalsh(rho)[0];
    if min < -TOL {
        return Err(Error::InvalidState(format!("density matrix has eigenvalue {min:.3e}")));
    }
    Ok(())
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &CMatrix) -> Result<f64> {
    if rho.nrows() != 4 {
        return Err(Error::InvalidState("concurrence needs a 4x4 density matrix".into()));
    }
    validate_density_matrix(rho)?;
    // σ_y ⊗ σ_y in the basis |00>, |01>, |10>, |11>.
    let mut yy = CMatrix::zeros(4, 4);
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    let tilde = &yy * rho.map(|z| z.conj()) * &yy;
    let s = sqrt_psd(rho);
    let m = &s * tilde * &s;
    let mut r: Vec<f64> = eigvalsh(&m).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    r.sort_by(|a, b| b.total_cmp(a));
    Ok((r[0] - r[1] - r[2] - r[3]).max(0.0))
}

/// Entanglement of formation `H(½[1 + √(1 - C²)])` in bits.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}
