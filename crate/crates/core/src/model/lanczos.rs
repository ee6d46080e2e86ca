use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{eigh_real, inner, norm, C64};

use super::operator::SparseOperator;

#[derive(Clone, Debug)]
pub struct LanczosOptions {
    /// Krylov space size before a restart.
    pub krylov_dim: usize,
    pub max_restarts: usize,
    /// Convergence threshold on `‖Hx - θx‖`.
    pub tolerance: f64,
    pub seed: u64,
    /// Number of lowest Ritz pairs to converge.
    pub n_eigen: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            krylov_dim: 120,
            max_restarts: 60,
            tolerance: 1e-10,
            seed: 0x5eed,
            n_eigen: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LanczosResult {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

/// Restarted Lanczos with full reorthogonalization.
///
/// A single start vector only reaches one copy of an exactly degenerate
/// eigenvalue, so degeneracies inside one block are not resolved.
pub fn lowest_eigenpairs(op: &SparseOperator, opts: &LanczosOptions) -> Result<LanczosResult> {
    let dim = op.dim();
    if dim == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    let want = opts.n_eigen.clamp(1, dim);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let mut iterations = 0;
    let mut last_residual = f64::INFINITY;

    for _ in 0..=opts.max_restarts {
        let nrm = norm(&start);
        start.iter_mut().for_each(|z| *z /= nrm);
        let mut basis: Vec<Vec<C64>> = vec![start.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![C64::new(0.0, 0.0); dim];
        let m = opts.krylov_dim.min(dim);

        for j in 0..m {
            iterations += 1;
            op.matvec(&basis[j], &mut w);
            let a = inner(&basis[j], &w).re;
            alpha.push(a);
            for _ in 0..2 {
                for v in &basis {
                    let c = inner(v, &w);
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = norm(&w);
            if j + 1 == m || b < 1e-13 {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|z| z / b).collect());
        }

        let k = alpha.len();
        let tri = DMatrix::from_fn(k, k, |r, c| {
            if r == c {
                alpha[r]
            } else if r + 1 == c {
                beta[r]
            } else if c + 1 == r {
                beta[c]
            } else {
                0.0
            }
        });
        let (theta, y) = eigh_real(&tri);
        let take = want.min(k);
        let mut values = Vec::with_capacity(take);
        let mut vectors = Vec::with_capacity(take);
        let mut residuals = Vec::with_capacity(take);
        for i in 0..take {
            let mut x = vec![C64::new(0.0, 0.0); dim];
            for (j, v) in basis.iter().enumerate().take(k) {
                let coeff = y[(j, i)];
                x.iter_mut().zip(v).for_each(|(a, b)| *a += b * coeff);
            }
            let nx = norm(&x);
            x.iter_mut().for_each(|z| *z /= nx);
            op.matvec(&x, &mut w);
            let r = w.iter().zip(&x).map(|(hx, xi)| (hx - xi * theta[i]).norm_sqr()).sum::<f64>().sqrt();
            values.push(theta[i]);
            vectors.push(x);
            residuals.push(r);
        }
        last_residual = residuals.iter().copied().fold(0.0, f64::max);
        if last_residual < opts.tolerance || (take == dim) {
            return Ok(LanczosResult {
                values,
                vectors,
                residuals,
                iterations,
            });
        }
        start = vectors.iter().fold(vec![C64::new(0.0, 0.0); dim], |mut acc, v| {
            acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
            acc
        });
    }
    Err(Error::NoConvergence {
        iterations,
        residual: last_residual,
    })
}
