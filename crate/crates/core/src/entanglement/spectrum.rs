use crate::error::{invalid, Error, Result};
use crate::linalg::{eigvalsh, CMatrix};

/// Occupations outside `[0, 1]` by less than this are clamped; larger
/// excursions are errors.
pub const CLAMP_TOL: f64 = 1e-12;

/// Occupation parameters `λ_k` of a Gaussian reduced state. The reduced
/// density matrix is `⊗_k diag(λ_k, 1 - λ_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSpectrum {
    pub lambdas: Vec<f64>,
    pub block_size: usize,
}

impl BlockSpectrum {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        let lambdas = lambdas.into_iter().map(clamp_occupation).collect::<Result<Vec<_>>>()?;
        let block_size = lambdas.len();
        Ok(Self { lambdas, block_size })
    }

    /// True when every mode is pure to `tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        self.lambdas.iter().all(|&l| l.min(1.0 - l) <= tol)
    }

    /// Full product spectrum `Λ_η`, descending. Exponential in the block size.
    pub fn product_weights(&self) -> Vec<f64> {
        let mut w = vec![1.0];
        for &l in &self.lambdas {
            w = w.iter().flat_map(|&x| [x * l, x * (1.0 - l)]).collect();
        }
        w.sort_by(|a, b| b.total_cmp(a));
        w
    }
}

fn clamp_occupation(l: f64) -> Result<f64> {
    if !l.is_finite() || !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&l) {
        return Err(Error::MalformedCorrelation(format!("occupation {l} outside [0, 1]")));
    }
    Ok(l.clamp(0.0, 1.0))
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> f64 {
    crate::linalg::neg_xlog2x(x) + crate::linalg::neg_xlog2x(1.0 - x)
}

/// Occupations from a block correlation matrix whose eigenvalues come in
/// pairs `±(λ_k - ½)`.
pub fn block_occupations(gamma: &CMatrix) -> Result<BlockSpectrum> {
    let dim = gamma.nrows();
    if dim % 2 != 0 || gamma.ncols() != dim {
        return Err(Error::MalformedCorrelation("block correlation must be square with even size".into()));
    }
    let ev = eigvalsh(gamma);
    let n = dim / 2;
    let mut lambdas = Vec::with_capacity(n);
    for k in 0..n {
        let (lo, hi) = (ev[k], ev[dim - 1 - k]);
        if (lo + hi).abs() > 1e-8 {
            return Err(Error::MalformedCorrelation(format!(
                "eigenvalues {lo} and {hi} do not pair up"
            )));
        }
        lambdas.push(0.5 + 0.5 * (hi - lo));
    }
    BlockSpectrum::new(lambdas)
}

/// `S = Σ_k H(λ_k)` in bits.
pub fn von_neumann_entropy(b: &BlockSpectrum) -> f64 {
    b.lambdas.iter().map(|&l| binary_entropy(l)).sum()
}

/// Rényi entropy `(1-α)^{-1} Σ_k log2(λ_k^α + (1-λ_k)^α)`. `α = 1` gives the
/// von Neumann entropy and `α = ∞` the single-copy entanglement.
pub fn renyi_entropy(b: &BlockSpectrum, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(invalid(format!("Rényi index must be positive, got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(von_neumann_entropy(b));
    }
    if alpha.is_infinite() {
        return Ok(single_copy(b));
    }
    let sum: f64 = b.lambdas.iter().map(|&l| (l.powf(alpha) + (1.0 - l).powf(alpha)).log2()).sum();
    Ok(sum / (1.0 - alpha))
}

/// `-Σ_k log2 max(λ_k, 1-λ_k)`, the largest-eigenvalue entropy.
pub fn single_copy(b: &BlockSpectrum) -> f64 {
    -b.lambdas.iter().map(|&l| l.max(1.0 - l).log2()).sum::<f64>()
}
