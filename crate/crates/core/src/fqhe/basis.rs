use crate::error::{invalid, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `N_e`-particle occupation states over `N_s` orbitals, as ascending bit
/// masks, optionally restricted to one total-momentum sector.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationBasis {
    pub n_orbitals: usize,
    pub n_particles: usize,
    pub momentum: Option<usize>,
    pub states: Vec<u64>,
}

impl OccupationBasis {
    pub fn full(n_orbitals: usize, n_particles: usize) -> Result<Self> {
        Self::build(n_orbitals, n_particles, None)
    }

    pub fn sector(n_orbitals: usize, n_particles: usize, momentum: usize) -> Result<Self> {
        if momentum >= n_orbitals {
            return Err(invalid(format!("momentum {momentum} outside 0..{n_orbitals}")));
        }
        Self::build(n_orbitals, n_particles, Some(momentum))
    }

    fn build(n_orbitals: usize, n_particles: usize, momentum: Option<usize>) -> Result<Self> {
        if n_orbitals == 0 || n_orbitals > 63 {
            return Err(invalid(format!("need 1..=63 orbitals, got {n_orbitals}")));
        }
        if n_particles > n_orbitals {
            return Err(invalid(format!("{n_particles} particles in {n_orbitals} orbitals")));
        }
        let mut states = Vec::with_capacity(binomial(n_orbitals, n_particles));
        // Gosper's hack walks masks of fixed popcount in ascending order.
        let limit = 1u64 << n_orbitals;
        let mut x: u64 = if n_particles == 0 { 0 } else { (1u64 << n_particles) - 1 };
        loop {
            if momentum.map_or(true, |k| momentum_of(x, n_orbitals) == k) {
                states.push(x);
            }
            if x == 0 {
                break;
            }
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
            if x >= limit {
                break;
            }
        }
        Ok(OccupationBasis { n_orbitals, n_particles, momentum, states })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.states.binary_search(&mask).ok()
    }

    pub fn momentum_of(&self, mask: u64) -> usize {
        momentum_of(mask, self.n_orbitals)
    }

    /// Dimensions of all momentum sectors, indexed by momentum.
    pub fn sector_dims(n_orbitals: usize, n_particles: usize) -> Result<Vec<usize>> {
        let full = Self::full(n_orbitals, n_particles)?;
        let mut dims = vec![0; n_orbitals];
        for &x in &full.states {
            dims[momentum_of(x, n_orbitals)] += 1;
        }
        Ok(dims)
    }
}

fn momentum_of(mask: u64, n_orbitals: usize) -> usize {
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        k += m.trailing_zeros() as usize;
        m &= m - 1;
    }
    k % n_orbitals
}
