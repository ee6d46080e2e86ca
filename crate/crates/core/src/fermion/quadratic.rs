use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{CMatrix, RMatrix, C64};
use crate::model::{Boundary, Parity, SpinModelSpec};

/// Boundary condition seen by the fermions: a periodic spin chain maps to
/// periodic or antiperiodic fermions depending on the parity sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParitySector {
    Even,
    Odd,
    Open,
}

impl ParitySector {
    /// Prefactor of the boundary terms.
    pub fn factor(self) -> f64 {
        match self {
            ParitySector::Even => 1.0,
            ParitySector::Odd => -1.0,
            ParitySector::Open => 0.0,
        }
    }

    pub fn parity(self) -> Option<Parity> {
        match self {
            ParitySector::Even => Some(Parity::Even),
            ParitySector::Odd => Some(Parity::Odd),
            ParitySector::Open => None,
        }
    }
}

impl From<Parity> for ParitySector {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => ParitySector::Even,
            Parity::Odd => ParitySector::Odd,
        }
    }
}

/// `H = Σ_ij [a_i† A_ij a_j + ½(a_i† B_ij a_j† + h.c.)]` up to a constant,
/// with `A` real symmetric and `B` antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFermionForm {
    pub a: RMatrix,
    pub b: CMatrix,
    pub sector: ParitySector,
}

impl QuadraticFermionForm {
    pub fn new(a: RMatrix, b: CMatrix, sector: ParitySector) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n || b.nrows() != n || b.ncols() != n {
            return Err(invalid("A and B must be square and of equal size"));
        }
        let asym = (&a - a.transpose()).abs().max();
        let bsym = (&b + b.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > 1e-14 || bsym > 1e-14 {
            return Err(invalid(format!(
                "A must be symmetric and B antisymmetric (residuals {asym:.1e}, {bsym:.1e})"
            )));
        }
        Ok(Self { a, b, sector })
    }

    pub fn n_modes(&self) -> usize {
        self.a.nrows()
    }
}

/// Jordan-Wigner map of an XY-family chain in a given parity sector.
///
/// Open chains ignore `sector` and get no boundary terms, as does
/// [`ParitySector::Open`] on a periodic chain.
pub fn jordan_wigner(spec: &SpinModelSpec, sector: ParitySector) -> Result<QuadraticFermionForm> {
    spec.validate()?;
    if !spec.is_fermionizable() {
        return Err(Error::NotFermionizable(
            "zz coupling, DM coupling or transverse field present".into(),
        ));
    }
    let n = spec.n_sites;
    let boundary = match spec.boundary {
        Boundary::Open => 0.0,
        Boundary::Periodic => sector.factor(),
    };
    let sector = if spec.boundary == Boundary::Open {
        ParitySector::Open
    } else {
        sector
    };
    let mut a = RMatrix::zeros(n, n);
    let mut b = CMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = spec.site_field(i);
    }
    for bond in 0..n {
        let f = spec.bond_couplings(bond);
        let hop = (f[0] + f[1]) / 2.0;
        let pair = (f[0] - f[1]) / 2.0;
        if bond + 1 < n {
            a[(bond, bond + 1)] -= hop;
            a[(bond + 1, bond)] -= hop;
            b[(bond, bond + 1)] -= C64::new(pair, 0.0);
            b[(bond + 1, bond)] += C64::new(pair, 0.0);
        } else if boundary != 0.0 {
            a[(0, n - 1)] += hop * boundary;
            a[(n - 1, 0)] += hop * boundary;
            b[(0, n - 1)] -= C64::new(pair * boundary, 0.0);
            b[(n - 1, 0)] += C64::new(pair * boundary, 0.0);
        }
    }
    QuadraticFermionForm::new(a, b, sector)
}
