use crate::error::{invalid, Result};
use crate::fermion::MajoranaForm;
use crate::linalg::{eigh, CMatrix, C64};

/// Eigenbasis `C = S diag(ξ) S†` of a Majorana generator, shared by all times.
#[derive(Clone, Debug)]
pub struct Propagator {
    pub s: CMatrix,
    pub xi: Vec<f64>,
}

impl Propagator {
    pub fn new(form: &MajoranaForm) -> Self {
        let (xi, s) = eigh(&form.c);
        Self { s, xi }
    }

    /// `𝕋(t) = S diag(e^{-2iξt}) S†`, so that `γ(t) = 𝕋(t) γ`.
    pub fn at(&self, t: f64) -> EvolutionMatrix {
        let dim = self.xi.len();
        let phased = CMatrix::from_fn(dim, dim, |r, c| self.s[(r, c)] * C64::from_polar(1.0, -2.0 * self.xi[c] * t));
        EvolutionMatrix { t, matrix: phased * self.s.adjoint() }
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionMatrix {
    pub t: f64,
    pub matrix: CMatrix,
}

impl EvolutionMatrix {
    pub fn unitarity_residual(&self) -> f64 {
        let dim = self.matrix.nrows();
        crate::linalg::max_abs(&(self.matrix.adjoint() * &self.matrix - CMatrix::identity(dim, dim)))
    }
}

pub fn evolution_matrix(form: &MajoranaForm, t: f64) -> EvolutionMatrix {
    Propagator::new(form).at(t)
}

/// `Γ(t) = 𝕋 Γ₀ 𝕋ᵀ`.
pub fn evolve_correlation(gamma0: &CMatrix, t: &EvolutionMatrix) -> Result<CMatrix> {
    if gamma0.shape() != t.matrix.shape() {
        return Err(invalid(format!(
            "correlation matrix {:?} does not match evolution matrix {:?}",
            gamma0.shape(),
            t.matrix.shape()
        )));
    }
    let g = &t.matrix * gamma0 * t.matrix.transpose();
    // Restore exact antisymmetry lost to round-off.
    Ok((&g - g.transpose()).scale(0.5))
}

/// `⟨γᵀCγ⟩ = Σ_ij C_ij Γ_ij`; the `δ_ij/2` part of `⟨γ_i γ_j⟩` meets the zero
/// diagonal of `C`.
pub fn energy_expectation(form: &MajoranaForm, gamma: &CMatrix) -> f64 {
    form.c.iter().zip(gamma.iter()).map(|(c, g)| c * g).sum::<C64>().re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::fermionic_ground_state;
    use crate::model::SpinModelSpec;

    #[test]
    fn identity_group_and_unitarity() {
        let gs = fermionic_ground_state(&SpinModelSpec::xy(6, 0.6, 0.8)).unwrap();
        let p = Propagator::new(&gs.form);
        let id = p.at(0.0);
        assert!(crate::linalg::max_abs(&(&id.matrix - CMatrix::identity(12, 12))) < 1e-12);
        for t in [0.37, 4.2, 31.0] {
            assert!(p.at(t).unitarity_residual() < 1e-10);
        }
        let prod = &p.at(0.3).matrix * &p.at(0.7).matrix;
        assert!(crate::linalg::max_abs(&(prod - p.at(1.0).matrix)) < 1e-9);
    }

    #[test]
    fn generator_relation() {
        let gs = fermionic_ground_state(&SpinModelSpec::ising(5, 0.7)).unwrap();
        let p = Propagator::new(&gs.form);
        let (t, h) = (0.8, 1e-5);
        let deriv = (&p.at(t + h).matrix - &p.at(t - h).matrix) / C64::new(2.0 * h, 0.0);
        let rhs = &gs.form.c * &p.at(t).matrix * C64::new(0.0, -2.0);
        assert!(crate::linalg::max_abs(&(deriv - rhs)) < 1e-7);
    }

    #[test]
    fn ground_state_is_stationary() {
        let gs = fermionic_ground_state(&SpinModelSpec::ising(8, 1.0)).unwrap();
        let g0 = gs.correlation();
        assert!((energy_expectation(&gs.form, &g0) - gs.energy).abs() < 1e-10);
        let p = Propagator::new(&gs.form);
        for t in [1.0, 7.5] {
            let g = evolve_correlation(&g0, &p.at(t)).unwrap();
            assert!(crate::linalg::max_abs(&(g - &g0)) < 1e-9);
        }
        assert!(evolve_correlation(&CMatrix::zeros(4, 4), &p.at(1.0)).is_err());
    }
}
