use crate::error::{invalid, Error, Result};
use crate::linalg::{eigh, hermiticity_residual, CMatrix, RMatrix, C64, I};
use crate::model::Parity;

use super::quadratic::QuadraticFermionForm;

/// Eigenvalues of `C` with `|ω| ≤ ZERO_MODE_TOL` are treated as zero modes.
pub const ZERO_MODE_TOL: f64 = 1e-10;

/// Purely imaginary antisymmetric `2N×2N` matrix `C` with `H = Σ C_ij γ_i γ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaForm {
    pub c: CMatrix,
}

impl MajoranaForm {
    pub fn new(c: CMatrix) -> Result<Self> {
        if c.nrows() != c.ncols() || c.nrows() % 2 != 0 {
            return Err(invalid("Majorana matrix must be square with even size"));
        }
        let res = hermiticity_residual(&c);
        if res > 1e-12 {
            return Err(invalid(format!("Majorana matrix is not Hermitian (residual {res:.1e})")));
        }
        Ok(Self { c })
    }

    pub fn n_modes(&self) -> usize {
        self.c.nrows() / 2
    }
}

pub fn majorana_form(q: &QuadraticFermionForm) -> MajoranaForm {
    let n = q.n_modes();
    let mut c = CMatrix::zeros(2 * n, 2 * n);
    for m in 0..n {
        for k in 0..n {
            let a = q.a[(m, k)];
            let b = q.b[(m, k)];
            let xi = [[-b.im, -(a + b.re)], [a - b.re, b.im]];
            for (r, row) in xi.iter().enumerate() {
                for (s, &v) in row.iter().enumerate() {
                    c[(2 * m + r, 2 * k + s)] = I * v;
                }
            }
        }
    }
    MajoranaForm { c }
}

/// Normal-mode data: `Oᵀ C O` is block diagonal with blocks
/// `[[0, -iω_k], [iω_k, 0]]`, so `H = Σ_k ω_k (2 b_k† b_k - 1)`.
#[derive(Clone, Debug)]
pub struct DiagonalizedChain {
    /// Mode energies, ascending and nonnegative.
    pub omega_bar: Vec<f64>,
    /// Real orthogonal `2N×2N`; column pair `(2k, 2k+1)` belongs to mode `k`.
    pub orthogonal: RMatrix,
    /// Bogoliubov matrices: `b_k = Σ_j (Σ_kj a_j + Δ_kj a_j†)`.
    pub sigma: CMatrix,
    pub delta: CMatrix,
    /// Number of modes with `ω ≤ ZERO_MODE_TOL`; their pairing is arbitrary.
    pub zero_modes: usize,
}

impl DiagonalizedChain {
    pub fn n_modes(&self) -> usize {
        self.omega_bar.len()
    }

    /// Energy of the quasi-particle vacuum, `-Σ ω_k`.
    pub fn ground_energy(&self) -> f64 {
        -self.omega_bar.iter().sum::<f64>()
    }

    /// Fermion parity of the quasi-particle vacuum, the sign of `det O`.
    pub fn vacuum_parity(&self) -> Parity {
        if self.orthogonal.clone().determinant() > 0.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.orthogonal.nrows();
        (self.orthogonal.transpose() * &self.orthogonal - RMatrix::identity(n, n)).abs().max()
    }

    /// Largest deviation of `Oᵀ C O` from the canonical block form.
    pub fn block_residual(&self, form: &MajoranaForm) -> f64 {
        let o = self.orthogonal.map(|x| C64::new(x, 0.0));
        let rotated = o.transpose() * &form.c * &o;
        let mut target = CMatrix::zeros(rotated.nrows(), rotated.ncols());
        for (k, &w) in self.omega_bar.iter().enumerate() {
            target[(2 * k, 2 * k + 1)] = -I * w;
            target[(2 * k + 1, 2 * k)] = I * w;
        }
        (rotated - target).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Residuals of the four Bogoliubov unitarity conditions
    /// `ΣΣ†+ΔΔ† = 1`, `Σ†Σ+ΔᵀΔ* = 1`, `ΣΔᵀ+ΔΣᵀ = 0`, `Σ†Δ+ΔᵀΣ* = 0`.
    pub fn unitarity_residuals(&self) -> [f64; 4] {
        let (s, d) = (&self.sigma, &self.delta);
        let n = s.nrows();
        let id = CMatrix::identity(n, n);
        let r = |m: CMatrix| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        [
            r(s * s.adjoint() + d * d.adjoint() - &id),
            r(s.adjoint() * s + d.transpose() * d.conjugate() - &id),
            r(s * d.transpose() + d * s.transpose()),
            r(s.adjoint() * d + d.transpose() * s.conjugate()),
        ]
    }
}

fn gram_schmidt(candidates: Vec<Vec<f64>>, keep: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(keep);
    for mut v in candidates {
        for _ in 0..2 {
            for u in &out {
                let c: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
            }
        }
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 1e-6 {
            v.iter_mut().for_each(|x| *x /= nrm);
            out.push(v);
            if out.len() == keep {
                break;
            }
        }
    }
    out
}

/// Orthogonal block diagonalization of the Majorana matrix.
///
/// Each eigenvector `v` of `C` with eigenvalue `ω > 0` gives the column pair
/// `(√2 Re v, √2 Im v)`. Zero modes get a real orthonormal basis of their
/// eigenspace, paired in order. Modes are sorted by ascending `ω` and the
/// overall sign is fixed by `O[0,0] ≥ 0`.
pub fn diagonalize_majorana(m: &MajoranaForm) -> Result<DiagonalizedChain> {
    let dim = m.c.nrows();
    let n = dim / 2;
    let (vals, vecs) = eigh(&m.c);
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::NotComputable("eigensolver returned non-finite values".into()));
    }
    let zero_idx: Vec<usize> = (0..dim).filter(|&i| vals[i].abs() <= ZERO_MODE_TOL).collect();
    let pos_idx: Vec<usize> = (0..dim).filter(|&i| vals[i] > ZERO_MODE_TOL).collect();
    let zero_modes = zero_idx.len() / 2;
    if zero_idx.len() % 2 != 0 || pos_idx.len() + zero_modes != n {
        return Err(Error::NotComputable(format!(
            "spectrum of the Majorana matrix is not paired ({} zero, {} positive eigenvalues)",
            zero_idx.len(),
            pos_idx.len()
        )));
    }

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(dim);
    let mut omega = Vec::with_capacity(n);
    if zero_modes > 0 {
        let cands = zero_idx
            .iter()
            .flat_map(|&i| {
                let col = vecs.column(i);
                [col.iter().map(|z| z.re).collect::<Vec<_>>(), col.iter().map(|z| z.im).collect()]
            })
            .collect();
        let basis = gram_schmidt(cands, 2 * zero_modes);
        if basis.len() != 2 * zero_modes {
            return Err(Error::NotComputable("could not build a real zero-mode basis".into()));
        }
        columns.extend(basis);
        omega.extend(std::iter::repeat_n(0.0, zero_modes));
    }
    let s2 = std::f64::consts::SQRT_2;
    for &i in &pos_idx {
        let col = vecs.column(i);
        columns.push(col.iter().map(|z| s2 * z.re).collect());
        columns.push(col.iter().map(|z| s2 * z.im).collect());
        omega.push(vals[i]);
    }
    let mut o = RMatrix::from_fn(dim, dim, |r, c| columns[c][r]);
    if o[(0, 0)] < 0.0 {
        o.neg_mut();
    }

    let mut sigma = CMatrix::zeros(n, n);
    let mut delta = CMatrix::zeros(n, n);
    for k in 0..n {
        for j in 0..n {
            let (a, b, c, d) = (o[(2 * j, 2 * k)], o[(2 * j, 2 * k + 1)], o[(2 * j + 1, 2 * k)], o[(2 * j + 1, 2 * k + 1)]);
            sigma[(k, j)] = C64::new(d + a, c - b) * 0.5;
            delta[(k, j)] = C64::new(d - a, b + c) * 0.5;
        }
    }
    Ok(DiagonalizedChain {
        omega_bar: omega,
        orthogonal: o,
        sigma,
        delta,
        zero_modes,
    })
}

#[derive(Clone, Debug)]
pub struct BogoliubovAngles {
    /// `ϑ_k` with `cos² ϑ_k` the eigenvalues of `ΣΣ†`, ascending in `ϑ`.
    pub angles: Vec<f64>,
    /// Off-diagonal weight of `ΔΔ†` in the eigenbasis of `ΣΣ†`.
    pub residual: f64,
}

/// Simultaneous diagonalization of `ΣΣ†` and `ΔΔ†`. Used only to check the
/// Bogoliubov data; the main path works with `O` directly.
pub fn bogoliubov_angles(chain: &DiagonalizedChain) -> BogoliubovAngles {
    let ss = &chain.sigma * chain.sigma.adjoint();
    let dd = &chain.delta * chain.delta.adjoint();
    let (vals, u) = eigh(&ss);
    let rotated = u.adjoint() * dd * &u;
    let mut residual = 0.0f64;
    for r in 0..rotated.nrows() {
        for c in 0..rotated.ncols() {
            let target = if r == c { 1.0 - vals[r] } else { 0.0 };
            residual = residual.max((rotated[(r, c)] - C64::new(target, 0.0)).norm());
        }
    }
    let mut angles: Vec<f64> = vals.iter().map(|&c2| c2.clamp(0.0, 1.0).sqrt().acos()).collect();
    angles.sort_by(f64::total_cmp);
    BogoliubovAngles { angles, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{jordan_wigner, ParitySector};
    use crate::model::SpinModelSpec;

    fn chain(spec: &SpinModelSpec, s: ParitySector) -> (MajoranaForm, DiagonalizedChain) {
        let m = majorana_form(&jordan_wigner(spec, s).unwrap());
        let d = diagonalize_majorana(&m).unwrap();
        (m, d)
    }

    #[test]
    fn field_only_modes() {
        let (_, d) = chain(&SpinModelSpec::new(5, [0.0; 3], [0.0, 0.0, 0.8]), ParitySector::Even);
        assert!(d.omega_bar.iter().all(|&w| (w - 0.8).abs() < 1e-12));
    }

    #[test]
    fn four_site_ising() {
        let (m, d) = chain(&SpinModelSpec::ising(4, 1.0), ParitySector::Even);
        let expect = [0.765_366_864_730_18, 0.765_366_864_730_18, 1.847_759_065_022_573_5, 1.847_759_065_022_573_5];
        for (a, b) in d.omega_bar.iter().zip(expect) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((d.ground_energy() + 5.226_251_859_505_506).abs() < 1e-10);
        assert!(d.orthogonality_residual() < 1e-12);
        assert!(d.block_residual(&m) < 1e-12);
        assert!(d.unitarity_residuals().iter().all(|&r| r < 1e-12), "{:?}", d.unitarity_residuals());
        assert!(d.orthogonal[(0, 0)] >= 0.0);
        let c = &m.c;
        assert!((c + c.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-14);
        assert!(c.iter().all(|z| z.re == 0.0));
    }

    #[test]
    fn zero_field_ising_energy() {
        let (_, d) = chain(&SpinModelSpec::ising(4, 0.0), ParitySector::Even);
        assert!((d.ground_energy() + 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_modes_get_real_basis() {
        // XX at zero field, N = 8, odd sector: cos(2πk/N) vanishes at k = 2, 6.
        let (m, d) = chain(&SpinModelSpec::xy(8, 0.0, 0.0), ParitySector::Odd);
        assert_eq!(d.zero_modes, 2);
        assert!(d.orthogonality_residual() < 1e-12);
        assert!(d.block_residual(&m) < 1e-10);
    }

    #[test]
    fn bogoliubov_angles_consistent() {
        let (_, d) = chain(&SpinModelSpec::xy(6, 0.7, 0.4), ParitySector::Even);
        let b = bogoliubov_angles(&d);
        assert!(b.residual < 1e-10);
        assert!(b.angles.iter().all(|&t| (0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&t)));
    }
}
