//! Dense linear-algebra helpers shared by the physics modules.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type RMatrix = DMatrix<f64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Only the Hermitian part of `m` is used.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(herm);
    sort_eigen(eig.eigenvalues.as_slice(), &eig.eigenvectors)
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
pub fn eigh_real(m: &RMatrix) -> (Vec<f64>, RMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), RMatrix::zeros(0, 0));
    }
    let sym = (m + m.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    sort_eigen(eig.eigenvalues.as_slice(), &eig.eigenvectors)
}

pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let herm = (m + m.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

fn sort_eigen<T: nalgebra::Scalar + Copy>(vals: &[f64], vecs: &DMatrix<T>) -> (Vec<f64>, DMatrix<T>) {
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let sorted_vals = order.iter().map(|&i| vals[i]).collect();
    let sorted_vecs = DMatrix::from_fn(vecs.nrows(), vecs.ncols(), |r, c| vecs[(r, order[c])]);
    (sorted_vals, sorted_vecs)
}

/// `f(m)` for Hermitian `m`, evaluated on the spectrum.
pub fn hermitian_map(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, vecs) = eigh(m);
    let scaled = CMatrix::from_fn(vecs.nrows(), vecs.ncols(), |r, c| vecs[(r, c)] * f(vals[c]));
    scaled * vecs.adjoint()
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Small negative eigenvalues from round-off are clipped to zero.
pub fn sqrt_psd(m: &CMatrix) -> CMatrix {
    hermitian_map(m, |x| x.max(0.0).sqrt())
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_real(m: &RMatrix) -> f64 {
    m.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

/// `-x log2 x` with the `0 log 0 = 0` convention.
#[inline]
pub fn neg_xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_bits(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| neg_xlog2x(p)).sum()
}

/// `ln(2 cosh x)` without overflow.
pub fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Natural logs of the singular values of `diag(e^d) W diag(e^e)` for
/// unitary `W`, descending.
///
/// The product is formed entrywise, embedded as a real matrix, reduced by
/// column-pivoted QR and finished with one-sided Jacobi on `Rᵀ`. For this
/// graded form that keeps every singular value to high relative accuracy,
/// however widely `d` and `e` are spread, as long as no entry underflows.
pub fn graded_log_singular_values(d: &[f64], w: &CMatrix, e: &[f64]) -> Vec<f64> {
    let n = d.len();
    assert_eq!(w.shape(), (n, e.len()), "graded_log_singular_values: shape mismatch");
    let m = e.len();
    let shift = d.iter().copied().fold(f64::NEG_INFINITY, f64::max) + e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let y = CMatrix::from_fn(n, m, |i, j| w[(i, j)] * (d[i] + e[j] - shift).exp());
    // [[Re, -Im], [Im, Re]] has each singular value of y twice.
    let real = RMatrix::from_fn(2 * n, 2 * m, |i, j| {
        let z = y[(i % n, j % m)];
        match (i < n, j < m) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let r = real.col_piv_qr().r();
    let mut x = r.transpose();
    let cols = x.ncols();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (xp, xq) = (x.column(p), x.column(q));
                let alpha = xp.norm_squared();
                let beta = xq.norm_squared();
                let gamma = xp.dot(&xq);
                if gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..x.nrows() {
                    let (a, b) = (x[(k, p)], x[(k, q)]);
                    x[(k, p)] = c * a - s * b;
                    x[(k, q)] = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut logs: Vec<f64> = (0..cols).map(|j| x.column(j).norm().ln() + shift).collect();
    logs.sort_by(|a, b| b.total_cmp(a));
    logs.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_sorts_and_reconstructs() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[C64::new(2.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0)],
        );
        let (vals, vecs) = eigh(&m);
        assert!(vals[0] < vals[1]);
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            2,
            vals.iter().map(|&v| C64::new(v, 0.0)),
        ));
        let back = &vecs * diag * vecs.adjoint();
        assert!(max_abs(&(back - m)) < 1e-12);
    }

    #[test]
    fn ln_two_cosh_large_argument() {
        assert!((ln_two_cosh(800.0) - 800.0).abs() < 1e-12);
        assert!((ln_two_cosh(0.0) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn graded_singular_values() {
        let w = CMatrix::from_fn(3, 3, |i, j| {
            let th = 0.7 * (i as f64 + 1.0) * (j as f64 + 0.5);
            C64::from_polar(1.0 / 3f64.sqrt(), th)
        });
        // Orthonormalize to get an exactly unitary W.
        let w = w.qr().q();
        let d = [0.3f64, -0.4, 0.1];
        let e = [0.2, 0.5, -0.6];
        let y = CMatrix::from_fn(3, 3, |i, j| w[(i, j)] * (d[i] + e[j]).exp());
        let mut direct: Vec<f64> = y.singular_values().iter().map(|s| s.ln()).collect();
        direct.sort_by(|a, b| b.total_cmp(a));
        let graded = graded_log_singular_values(&d, &w, &e);
        for (a, b) in direct.iter().zip(&graded) {
            assert!((a - b).abs() < 1e-12);
        }
        // Diagonal W: singular values are exactly e^{d_i + e_i}.
        let id = CMatrix::identity(3, 3);
        let d = [40.0, -35.0, 3.0];
        let e = [-38.0, 30.0, 1.0];
        let g = graded_log_singular_values(&d, &id, &e);
        let mut expect = vec![2.0, -5.0, 4.0];
        expect.sort_by(|a: &f64, b| b.total_cmp(a));
        for (a, b) in g.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12, "{g:?}");
        }
    }
}
