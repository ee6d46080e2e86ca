use crate::error::{invalid, Error, Result};
use crate::fermion::MajoranaForm;
use crate::linalg::{eigh, graded_log_singular_values, hermitian_map, hermiticity_residual, ln_two_cosh, max_abs, CMatrix};

/// Fermionic Gaussian state `ρ = e^{-γᵀΩγ}/𝒵` with `Ω` Hermitian and
/// antisymmetric (purely imaginary). Pure states sit at infinite `Ω` and
/// cannot be represented.
#[derive(Clone, Debug)]
pub struct GaussianFermionicState {
    pub omega: CMatrix,
}

impl GaussianFermionicState {
    pub fn new(omega: CMatrix) -> Result<Self> {
        let scale = max_abs(&omega).max(1.0);
        if omega.nrows() % 2 != 0 || !omega.is_square() {
            return Err(invalid("exponent must be square with even size"));
        }
        if hermiticity_residual(&omega) > 1e-10 * scale || max_abs(&(&omega + omega.transpose())) > 1e-10 * scale {
            return Err(invalid("exponent must be Hermitian and antisymmetric"));
        }
        Ok(Self { omega })
    }

    /// Thermal state `e^{-βH}/𝒵` of `H = γᵀCγ`.
    pub fn thermal(form: &MajoranaForm, beta: f64) -> Result<Self> {
        if !(beta >= 0.0) {
            return Err(invalid(format!("inverse temperature must be non-negative, got {beta}")));
        }
        Self::new(form.c.scale(beta))
    }

    /// Inverts `Γ = ½ tanh Ω`.
    pub fn from_correlation(gamma: &CMatrix) -> Result<Self> {
        let (vals, _) = eigh(&(gamma * crate::linalg::C64::new(2.0, 0.0)));
        if vals.iter().any(|v| v.abs() >= 1.0 - 1e-12) {
            return Err(Error::NotComputable(
                "correlation matrix describes a (partly) pure state with an unbounded exponent".into(),
            ));
        }
        Self::new(hermitian_map(&gamma.scale(2.0), f64::atanh))
    }

    /// `Γ = ½ tanh Ω`.
    pub fn correlation(&self) -> CMatrix {
        hermitian_map(&self.omega, |x| 0.5 * x.tanh())
    }

    /// `ln tr e^{-γᵀΩγ} = Σ_k ln 2cosh ω_k` over the positive eigenvalues `ω_k` of `Ω`.
    pub fn log_partition(&self) -> f64 {
        positive_half(&self.omega).iter().map(|&w| ln_two_cosh(w)).sum()
    }
}

fn positive_half(m: &CMatrix) -> Vec<f64> {
    let (vals, _) = eigh(m);
    let n = vals.len() / 2;
    // Eigenvalues pair as ±ω; averaging the pair removes round-off asymmetry.
    (0..n).map(|k| 0.5 * (vals[vals.len() - 1 - k] - vals[k])).collect()
}

/// `F = tr sqrt(√ρ σ √ρ)` for Gaussian states.
///
/// With `ρ ∝ e^{Q_A}`, `Q_A = ½ γᵀAγ`, conjugation acts on the Majorana
/// vector as `e^{-A}`, and the quadratic elements close under products. So
/// `√ρ σ √ρ ∝ e^{Q_K}` with `e^{-K} = e^{-A/2} e^{-B} e^{-A/2}` exactly, and
/// `K` is a matrix logarithm. Here `A = -2Ω_ρ`, `B = -2Ω_σ`. The spectrum of
/// `K` is obtained without forming `e^{-K}` explicitly, which would lose the
/// small eigenvalues of cold states.
pub fn gaussian_fermionic_fidelity(rho: &GaussianFermionicState, sigma: &GaussianFermionicState) -> Result<f64> {
    if rho.omega.shape() != sigma.omega.shape() {
        return Err(invalid("states act on different numbers of modes"));
    }
    // G = M M† with M = e^{Ω_ρ} e^{Ω_σ} = U e^{d} (U†V) e^{e} V†, so the
    // eigenvalues e^{±κ} of G are the squared singular values of the graded
    // product e^{d} W e^{e}.
    let (d, u) = eigh(&rho.omega);
    let (e, v) = eigh(&sigma.omega);
    let w = u.adjoint() * v;
    let logs = graded_log_singular_values(&d, &w, &e);
    if logs.iter().any(|x| !x.is_finite()) {
        return Err(Error::NotComputable("exponents too large for the graded product".into()));
    }
    let n = logs.len() / 2;
    // ln σ pairs as ±κ/2.
    let kappas: Vec<f64> = (0..n).map(|k| (logs[k] - logs[logs.len() - 1 - k]).max(0.0)).collect();
    let ln_num: f64 = kappas.iter().map(|&k| ln_two_cosh(0.25 * k)).sum();
    let ln_f = ln_num - 0.5 * (rho.log_partition() + sigma.log_partition());
    Ok(ln_f.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classical_fidelity;
    use crate::fermion::fermionic_ground_state;
    use crate::linalg::{sqrt_psd, C64};
    use crate::model::SpinModelSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Majorana operators of two modes as 4×4 matrices via Jordan-Wigner,
    /// normalized to `{γ_i, γ_j} = δ_ij`.
    fn majoranas() -> Vec<CMatrix> {
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let lower = CMatrix::from_row_slice(2, 2, &[z, o, z, z]);
        let sz = CMatrix::from_row_slice(2, 2, &[o, z, z, -o]);
        let id = CMatrix::identity(2, 2);
        let a = [lower.kronecker(&id), sz.kronecker(&lower)];
        let r = std::f64::consts::FRAC_1_SQRT_2;
        a.iter()
            .flat_map(|a| {
                let ad = a.adjoint();
                [(a - &ad) * C64::new(0.0, -r), (a + &ad) * C64::new(r, 0.0)]
            })
            .collect()
    }

    fn dense_state(omega: &CMatrix) -> CMatrix {
        let g = majoranas();
        let mut h = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                h += &g[i] * &g[j] * omega[(i, j)];
            }
        }
        let e = hermitian_map(&h, |x| (-x).exp());
        let tr = e.trace();
        e / tr
    }

    fn random_omega(rng: &mut ChaCha8Rng, scale: f64) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in i + 1..4 {
                let x = rng.random_range(-scale..scale);
                m[(i, j)] = C64::new(0.0, x);
                m[(j, i)] = C64::new(0.0, -x);
            }
        }
        m
    }

    #[test]
    fn dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = majoranas();
        for i in 0..4 {
            for j in 0..4 {
                let ac = &g[i] * &g[j] + &g[j] * &g[i];
                let expect = if i == j { CMatrix::identity(4, 4) } else { CMatrix::zeros(4, 4) };
                assert!(max_abs(&(ac - expect)) < 1e-15);
            }
        }
        for _ in 0..20 {
            let (wa, wb) = (random_omega(&mut rng, 1.5), random_omega(&mut rng, 1.5));
            let (ra, sb) = (dense_state(&wa), dense_state(&wb));
            let s = sqrt_psd(&ra);
            let dense: f64 = crate::linalg::eigvalsh(&(&s * sb * &s)).iter().map(|x| x.max(0.0).sqrt()).sum();
            let rho = GaussianFermionicState::new(wa.clone()).unwrap();
            let sigma = GaussianFermionicState::new(wb).unwrap();
            let f = gaussian_fermionic_fidelity(&rho, &sigma).unwrap();
            assert!((f - dense).abs() < 1e-8, "{f} vs {dense}");
            assert!((gaussian_fermionic_fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-10);

            // Γ = ½ tanh Ω against ½⟨[γ_i, γ_j]⟩.
            let gamma = rho.correlation();
            for i in 0..4 {
                for j in 0..4 {
                    let comm = &g[i] * &g[j] - &g[j] * &g[i];
                    let v = (&ra * comm).trace() * 0.5;
                    assert!((v - gamma[(i, j)]).norm() < 1e-12);
                }
            }
            let back = GaussianFermionicState::from_correlation(&gamma).unwrap();
            assert!(max_abs(&(back.omega - &wa)) < 1e-9);
        }
    }

    #[test]
    fn commuting_thermal_states() {
        let gs = fermionic_ground_state(&SpinModelSpec::ising(4, 0.8)).unwrap();
        let levels = |beta: f64| -> Vec<f64> {
            let mut w = vec![1.0];
            for &om in &gs.chain.omega_bar {
                let f = 1.0 / (1.0 + (2.0 * beta * om).exp());
                w = w.iter().flat_map(|&x| [x * (1.0 - f), x * f]).collect();
            }
            w.sort_by(|a, b| b.total_cmp(a));
            w
        };
        for (b1, b2) in [(0.5, 1.5), (0.1, 3.0), (1.0, 1.0)] {
            let rho = GaussianFermionicState::thermal(&gs.form, b1).unwrap();
            let sigma = GaussianFermionicState::thermal(&gs.form, b2).unwrap();
            let f = gaussian_fermionic_fidelity(&rho, &sigma).unwrap();
            let c = classical_fidelity(&levels(b1), &levels(b2)).unwrap();
            assert!((f - c).abs() < 1e-9, "{f} vs {c}");
        }
    }

    #[test]
    fn cold_states() {
        let gs = fermionic_ground_state(&SpinModelSpec::ising(6, 0.8)).unwrap();
        for beta in [3.0, 8.0] {
            let rho = GaussianFermionicState::thermal(&gs.form, beta).unwrap();
            let f = gaussian_fermionic_fidelity(&rho, &rho).unwrap();
            assert!((f - 1.0).abs() < 1e-8, "β={beta}: {f}");
        }
    }

    #[test]
    fn pure_states_rejected() {
        let gs = fermionic_ground_state(&SpinModelSpec::ising(4, 0.8)).unwrap();
        assert!(GaussianFermionicState::from_correlation(&gs.correlation()).is_err());
    }
}
