use nalgebra::Cholesky;

use crate::error::{invalid, Error, Result};
use crate::linalg::{eigh_real, eigvalsh, max_abs_real, CMatrix, RMatrix, C64};

/// Symplectic eigenvalues below `1 - SYMPLECTIC_TOL` violate the uncertainty
/// principle and are rejected.
pub const SYMPLECTIC_TOL: f64 = 1e-6;

/// Second moments `Q_kl = ⟨q_k q_l⟩`, `P_kl = ⟨p_k p_l⟩`,
/// `S_kl = ½⟨{q_k, p_l}⟩` (all connected) and first moments.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianChainState {
    pub q: RMatrix,
    pub p: RMatrix,
    pub s: RMatrix,
    pub mean_q: Vec<f64>,
    pub mean_p: Vec<f64>,
}

impl GaussianChainState {
    pub fn new(q: RMatrix, p: RMatrix, s: RMatrix, mean_q: Vec<f64>, mean_p: Vec<f64>) -> Result<Self> {
        let n = q.nrows();
        let shapes_ok = q.is_square()
            && p.shape() == (n, n)
            && s.shape() == (n, n)
            && mean_q.len() == n
            && mean_p.len() == n;
        if !shapes_ok {
            return Err(invalid("moment matrices and mean vectors must share one size"));
        }
        for (name, m) in [("Q", &q), ("P", &p)] {
            let scale = max_abs_real(m).max(1.0);
            if max_abs_real(&(m - m.transpose())) > 1e-10 * scale {
                return Err(Error::InvalidState(format!("{name} is not symmetric")));
            }
        }
        Ok(Self { q, p, s, mean_q, mean_p })
    }

    pub fn n_modes(&self) -> usize {
        self.q.nrows()
    }

    fn select(m: &RMatrix, sites: &[usize]) -> RMatrix {
        RMatrix::from_fn(sites.len(), sites.len(), |i, j| m[(sites[i], sites[j])])
    }

    /// Vacuum-normalized covariance `2 [[Q, S], [Sᵀ, P]]` of `sites`,
    /// ordered `(q_1 … q_n, p_1 … p_n)`. The vacuum maps to the identity.
    pub fn covariance(&self, sites: &[usize]) -> RMatrix {
        let n = sites.len();
        let mut v = RMatrix::zeros(2 * n, 2 * n);
        for (i, &a) in sites.iter().enumerate() {
            for (j, &b) in sites.iter().enumerate() {
                v[(i, j)] = 2.0 * self.q[(a, b)];
                v[(n + i, n + j)] = 2.0 * self.p[(a, b)];
                v[(i, n + j)] = 2.0 * self.s[(a, b)];
                v[(n + j, i)] = 2.0 * self.s[(a, b)];
            }
        }
        v
    }

    fn check_sites(&self, sites: &[usize]) -> Result<()> {
        if sites.is_empty() {
            return Err(invalid("block must contain at least one site"));
        }
        let mut seen = vec![false; self.n_modes()];
        for &s in sites {
            if s >= seen.len() || std::mem::replace(&mut seen[s], true) {
                return Err(invalid(format!("site list {sites:?} has duplicates or out-of-range sites")));
            }
        }
        Ok(())
    }

    /// Symplectic spectrum of the block, ascending. Uses `Q P` when the block
    /// has no `q`-`p` cross correlations and the full covariance otherwise.
    pub fn block_symplectic_spectrum(&self, sites: &[usize]) -> Result<Vec<f64>> {
        self.check_sites(sites)?;
        let sb = Self::select(&self.s, sites);
        if max_abs_real(&sb) <= 1e-12 {
            Ok(symplectic_eigenvalues(&Self::select(&self.q, sites), &Self::select(&self.p, sites)))
        } else {
            symplectic_eigenvalues_general(&self.covariance(sites))
        }
    }

    pub fn is_pure(&self, tol: f64) -> Result<bool> {
        let all: Vec<usize> = (0..self.n_modes()).collect();
        Ok(self.block_symplectic_spectrum(&all)?.iter().all(|&nu| (nu - 1.0).abs() <= tol))
    }
}

/// `ν_k = 2 sqrt(eig(Q P))`, computed as the spectrum of `Q^{1/2} P Q^{1/2}`.
pub fn symplectic_eigenvalues(q: &RMatrix, p: &RMatrix) -> Vec<f64> {
    let (qe, qv) = eigh_real(q);
    let root = RMatrix::from_fn(qv.nrows(), qv.ncols(), |r, c| qv[(r, c)] * qe[c].max(0.0).sqrt()) * qv.transpose();
    let m = &root * p * &root;
    let (e, _) = eigh_real(&m);
    e.into_iter().map(|x| 2.0 * x.max(0.0).sqrt()).collect()
}

/// Symplectic spectrum of a vacuum-normalized covariance `V` (size `2n`),
/// from the `±ν` eigenvalues of `i V^{1/2} J V^{1/2}`.
pub fn symplectic_eigenvalues_general(v: &RMatrix) -> Result<Vec<f64>> {
    let dim = v.nrows();
    if dim % 2 != 0 || !v.is_square() {
        return Err(invalid("covariance must be square with even size"));
    }
    let n = dim / 2;
    let (ve, vv) = eigh_real(v);
    if ve.first().is_some_and(|&x| x <= 0.0) {
        return Err(Error::InvalidState("covariance is not positive definite".into()));
    }
    let root = RMatrix::from_fn(dim, dim, |r, c| vv[(r, c)] * ve[c].sqrt()) * vv.transpose();
    let mut j = RMatrix::zeros(dim, dim);
    for k in 0..n {
        j[(k, n + k)] = 1.0;
        j[(n + k, k)] = -1.0;
    }
    let a = &root * j * &root;
    let m = CMatrix::from_fn(dim, dim, |r, c| C64::new(0.0, a[(r, c)]));
    let e = eigvalsh(&m);
    Ok(e[n..].to_vec())
}

/// `ζ(x) = cosh²x log2 cosh²x - sinh²x log2 sinh²x`.
pub fn zeta(x: f64) -> f64 {
    let c = x.cosh().powi(2);
    let s = x.sinh().powi(2);
    let t = if s > 0.0 { s * s.log2() } else { 0.0 };
    c * c.log2() - t
}

/// Entropy in bits of one mode with symplectic eigenvalue `ν ≥ 1`; equal to
/// `ζ(α)` with `cosh²α = (ν+1)/2`.
pub fn mode_entropy(nu: f64) -> f64 {
    let c = 0.5 * (nu + 1.0);
    let s = 0.5 * (nu - 1.0);
    let t = if s > 0.0 { s * s.log2() } else { 0.0 };
    c * c.log2() - t
}

/// Von Neumann entropy in bits of `sites`.
pub fn gaussian_block_entropy(state: &GaussianChainState, sites: &[usize]) -> Result<f64> {
    let nus = state.block_symplectic_spectrum(sites)?;
    let mut total = 0.0;
    for nu in nus {
        if nu < 1.0 - SYMPLECTIC_TOL {
            return Err(Error::InvalidState(format!("symplectic eigenvalue {nu} below 1")));
        }
        total += mode_entropy(nu.max(1.0));
    }
    Ok(total)
}

/// Moments of the Gaussian state with position-basis density matrix
/// `ρ(q, q') ∝ exp[-½ qᵀAq - ½ q'ᵀA*q' + qᵀCq' + dᵀq + d*ᵀq']`.
/// `A` must be complex symmetric and `C` Hermitian.
pub fn position_to_moments(a: &CMatrix, c: &CMatrix, d: &[C64]) -> Result<GaussianChainState> {
    let n = a.nrows();
    if !a.is_square() || c.shape() != (n, n) || d.len() != n {
        return Err(invalid("A, C and d must share one size"));
    }
    let scale = crate::linalg::max_abs(a).max(crate::linalg::max_abs(c)).max(1.0);
    if crate::linalg::max_abs(&(a - a.transpose())) > 1e-12 * scale {
        return Err(invalid("A must be symmetric"));
    }
    if crate::linalg::hermiticity_residual(c) > 1e-12 * scale {
        return Err(invalid("C must be Hermitian"));
    }
    let re = |m: &CMatrix| m.map(|z| z.re);
    let im = |m: &CMatrix| m.map(|z| z.im);
    let re_amc = re(a) - re(c);
    let chol = Cholesky::new(re_amc).ok_or_else(|| Error::InvalidState("Re(A - C) is not positive definite".into()))?;
    let q = chol.inverse().scale(0.5);
    let q = (&q + q.transpose()).scale(0.5);
    let qc = q.map(|x| C64::new(x, 0.0));
    let amc = a - c;
    let p = re(&(a - &amc * &qc * amc.transpose()));
    let p = (&p + p.transpose()).scale(0.5);
    let s = -(&q * (im(a) + im(c)));
    let red = nalgebra::DVector::from_iterator(n, d.iter().map(|z| z.re));
    let mq = (&q * &red).scale(2.0);
    let mp = -((im(a) - im(c)) * &q * &red).scale(2.0) + nalgebra::DVector::from_iterator(n, d.iter().map(|z| z.im));
    GaussianChainState::new(q, p, s, mq.iter().copied().collect(), mp.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(0.0), 0.0);
        assert_eq!(zeta(0.7), zeta(-0.7));
        let c = 1f64.cosh().powi(2);
        let s = 1f64.sinh().powi(2);
        assert!((zeta(1.0) - (c * c.log2() - s * s.log2())).abs() < 1e-14);
        assert!((zeta(1.0) - 2.336_909_300_5).abs() < 1e-9);
        let mut last = 0.0;
        for i in 1..50 {
            let z = zeta(i as f64 * 0.1);
            assert!(z > last);
            last = z;
        }
    }

    #[test]
    fn mode_entropy_matches_zeta() {
        for nu in [1.0f64, 1.3, 2.0, 7.5, 40.0] {
            let alpha = (0.5 * (nu + 1.0)).sqrt().acosh();
            assert!((mode_entropy(nu) - zeta(alpha)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_oscillator_mapping() {
        let w = 1.7;
        let a = CMatrix::identity(3, 3) * C64::new(w, 0.0);
        let c = CMatrix::zeros(3, 3);
        let st = position_to_moments(&a, &c, &[C64::new(0.0, 0.0); 3]).unwrap();
        for i in 0..3 {
            assert!((st.q[(i, i)] - 0.5 / w).abs() < 1e-15);
            assert!((st.p[(i, i)] - 0.5 * w).abs() < 1e-15);
        }
        assert_eq!(max_abs_real(&st.s), 0.0);
        assert!(st.is_pure(1e-9).unwrap());
        assert!(position_to_moments(&(a * C64::new(-1.0, 0.0)), &c, &[C64::new(0.0, 0.0); 3]).is_err());
    }

    fn random_sym(rng: &mut ChaCha8Rng, n: usize, diag: f64) -> RMatrix {
        let m = RMatrix::from_fn(n, n, |_, _| rng.random_range(-0.3..0.3));
        (&m + m.transpose()).scale(0.5) + RMatrix::identity(n, n).scale(diag)
    }

    #[test]
    fn random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 4] {
            let are = random_sym(&mut rng, n, 2.0);
            let aim = random_sym(&mut rng, n, 0.0);
            let a = CMatrix::from_fn(n, n, |i, j| C64::new(are[(i, j)], aim[(i, j)]));
            let d: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let pure = position_to_moments(&a, &CMatrix::zeros(n, n), &d).unwrap();
            assert!(max_abs_real(&(&pure.q - pure.q.transpose())) < 1e-12);
            assert!(max_abs_real(&(&pure.p - pure.p.transpose())) < 1e-12);
            let all: Vec<usize> = (0..n).collect();
            let nus = symplectic_eigenvalues_general(&pure.covariance(&all)).unwrap();
            assert!(nus.iter().all(|&v| (v - 1.0).abs() < 1e-9), "{nus:?}");
            // Wigner covariance of a pure state has unit determinant.
            assert!((pure.covariance(&all).determinant() - 1.0).abs() < 1e-9);

            let g = random_sym(&mut rng, n, 0.5).scale(0.3);
            let c = g.map(|x| C64::new(x, 0.0));
            let mixed = position_to_moments(&a, &c, &d).unwrap();
            let nus = mixed.block_symplectic_spectrum(&all).unwrap();
            assert!(nus.iter().all(|&v| v > 1.0 + 1e-6), "{nus:?}");
        }
    }

    #[test]
    fn fast_and_general_routes_agree() {
        let st = super::super::kg_ground_state(&super::super::KgSpec::new(10, 0.2)).unwrap();
        let sites = [2, 3, 4, 5];
        let fast = st.block_symplectic_spectrum(&sites).unwrap();
        let general = symplectic_eigenvalues_general(&st.covariance(&sites)).unwrap();
        for (a, b) in fast.iter().zip(&general) {
            assert!((a - b).abs() < 1e-10);
        }
        let nu = fast_single(&st, 0);
        let s = gaussian_block_entropy(&st, &[0]).unwrap();
        let analytic = 0.5 * (nu + 1.0) * (0.5 * (nu + 1.0)).log2() - 0.5 * (nu - 1.0) * (0.5 * (nu - 1.0)).log2();
        assert!((s - analytic).abs() < 1e-12);
    }

    fn fast_single(st: &GaussianChainState, i: usize) -> f64 {
        2.0 * (st.q[(i, i)] * st.p[(i, i)]).sqrt()
    }
}
