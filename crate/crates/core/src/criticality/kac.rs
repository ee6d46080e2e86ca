use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `c(m) = 1 - 6/(m(m+1))`.
pub fn kac_charge(m: usize) -> f64 {
    let m = m as f64;
    1.0 - 6.0 / (m * (m + 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KacClass {
    /// Minimal model `m`.
    Minimal(usize),
    /// The `c = 1` free boson.
    Boson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KacTable {
    /// `(class, c)` with `c` increasing; the boson is last.
    pub charges: Vec<(KacClass, f64)>,
}

impl KacTable {
    pub fn snap(&self, c_est: f64) -> KacSnap {
        let (class, c) = self
            .charges
            .iter()
            .copied()
            .min_by(|a, b| (a.1 - c_est).abs().total_cmp(&(b.1 - c_est).abs()))
            .expect("table is never empty");
        KacSnap { c, class, distance: (c - c_est).abs() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KacSnap {
    pub c: f64,
    pub class: KacClass,
    pub distance: f64,
}

pub fn kac_charges(m_max: usize) -> Result<KacTable> {
    if m_max < 3 {
        return Err(invalid(format!("Kac table needs m_max >= 3, got {m_max}")));
    }
    let mut charges: Vec<(KacClass, f64)> = (3..=m_max).map(|m| (KacClass::Minimal(m), kac_charge(m))).collect();
    charges.push((KacClass::Boson, 1.0));
    Ok(KacTable { charges })
}

/// Nearest allowed charge for `m ≤ 12` or the boson.
pub fn snap_to_kac(c_est: f64) -> KacSnap {
    kac_charges(12).expect("static bound").snap(c_est)
}

/// `h_{r,s}(m) = ([(m+1)r - ms]² - 1) / (4m(m+1))` for `1 ≤ r ≤ m-1`, `1 ≤ s ≤ m`.
pub fn kac_weight(m: usize, r: usize, s: usize) -> Result<f64> {
    if m < 3 {
        return Err(invalid(format!("Kac weights need m >= 3, got {m}")));
    }
    if !(1..m).contains(&r) || !(1..=m).contains(&s) {
        return Err(invalid(format!("(r, s) = ({r}, {s}) outside 1..={} x 1..={m}", m - 1)));
    }
    let (m, r, s) = (m as i64, r as i64, s as i64);
    let num = ((m + 1) * r - m * s).pow(2) - 1;
    Ok(num as f64 / (4 * m * (m + 1)) as f64)
}

/// Rows `r = 1..m-1`, columns `s = 1..m`.
pub fn kac_weights(m: usize) -> Result<Vec<Vec<f64>>> {
    if m < 3 {
        return Err(invalid(format!("Kac weights need m >= 3, got {m}")));
    }
    (1..m).map(|r| (1..=m).map(|s| kac_weight(m, r, s)).collect()).collect()
}
