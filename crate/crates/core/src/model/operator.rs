use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, I};

use super::spec::SpinModelSpec;

/// Largest chain accepted by [`build_full_hamiltonian`].
pub const DENSE_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// Action on a single bit: returns the new bit and the amplitude.
    #[inline]
    pub fn act(self, bit: bool) -> (bool, C64) {
        match (self, bit) {
            (Pauli::X, b) => (!b, C64::new(1.0, 0.0)),
            (Pauli::Y, false) => (true, I),
            (Pauli::Y, true) => (false, -I),
            (Pauli::Z, false) => (false, C64::new(1.0, 0.0)),
            (Pauli::Z, true) => (true, C64::new(-1.0, 0.0)),
        }
    }
}

/// `coeff · Π σ^{op}_{site}` on distinct sites.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coeff: C64,
    pub ops: Vec<(usize, Pauli)>,
}

impl PauliTerm {
    pub fn new(coeff: f64, ops: Vec<(usize, Pauli)>) -> Self {
        Self { coeff: C64::new(coeff, 0.0), ops }
    }

    #[inline]
    pub fn apply(&self, state: u64) -> (u64, C64) {
        let mut out = state;
        let mut amp = self.coeff;
        for &(site, p) in &self.ops {
            let bit = (out >> site) & 1 == 1;
            let (nb, a) = p.act(bit);
            if nb != bit {
                out ^= 1 << site;
            }
            amp *= a;
        }
        (out, amp)
    }
}

/// Expands the spin Hamiltonian into Pauli strings.
pub fn hamiltonian_terms(spec: &SpinModelSpec) -> Vec<PauliTerm> {
    use Pauli::{X, Y, Z};
    let mut terms = Vec::new();
    for (b, &(n, m)) in spec.bonds().iter().enumerate() {
        let f = spec.bond_couplings(b);
        for (alpha, p) in [X, Y, Z].into_iter().enumerate() {
            if f[alpha] != 0.0 {
                terms.push(PauliTerm::new(-f[alpha], vec![(n, p), (m, p)]));
            }
        }
        // g·(σ_n × σ_m)
        let g = spec.dm;
        let cross = [(g[0], Y, Z), (g[1], Z, X), (g[2], X, Y)];
        for (c, a, bb) in cross {
            if c != 0.0 {
                terms.push(PauliTerm::new(-c, vec![(n, a), (m, bb)]));
                terms.push(PauliTerm::new(c, vec![(n, bb), (m, a)]));
            }
        }
    }
    for n in 0..spec.n_sites {
        let h = [spec.field[0], spec.field[1], spec.site_field(n)];
        for (alpha, p) in [X, Y, Z].into_iter().enumerate() {
            if h[alpha] != 0.0 {
                terms.push(PauliTerm::new(-h[alpha], vec![(n, p)]));
            }
        }
    }
    terms
}

/// Compressed-row Hermitian operator.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseOperator {
    /// Builds from per-row `(column, value)` maps; duplicate columns must
    /// already be summed.
    pub(crate) fn from_rows(rows: Vec<BTreeMap<usize, C64>>) -> Self {
        let dim = rows.len();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v.norm() > 1e-15 {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self { dim, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()].iter().copied().zip(self.vals[span].iter().copied())
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        for (r, out) in y.iter_mut().enumerate() {
            *out = self.row(r).map(|(c, v)| v * x[c]).sum();
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }

    /// `max |H_rc - conj(H_cr)|` over stored entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let lookup = |r: usize, c: usize| self.row(r).find(|&(cc, _)| cc == c).map_or(C64::new(0.0, 0.0), |x| x.1);
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                worst = worst.max((v - lookup(c, r).conj()).norm());
            }
        }
        worst
    }
}

/// Full `2^N` Hamiltonian in the computational basis.
pub fn build_full_hamiltonian(spec: &SpinModelSpec) -> Result<SparseOperator> {
    spec.validate()?;
    if spec.n_sites > DENSE_CAP {
        return Err(Error::SizeCap {
            what: "full Hilbert space chain",
            size: spec.n_sites,
            cap: DENSE_CAP,
        });
    }
    let terms = hamiltonian_terms(spec);
    let dim = 1usize << spec.n_sites;
    let mut rows = vec![BTreeMap::new(); dim];
    for col in 0..dim {
        for t in &terms {
            let (row, amp) = t.apply(col as u64);
            *rows[row as usize].entry(col).or_insert(C64::new(0.0, 0.0)) += amp;
        }
    }
    Ok(SparseOperator::from_rows(rows))
}
