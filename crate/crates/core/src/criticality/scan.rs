use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{entropy_profile_with, EntropyMethod};
use crate::error::{invalid, Result};
use crate::model::{Boundary, ModelFamily, SpinModelSpec};

use super::fit::{estimate_central_charge_in, CEstimate, FitWindow};
use super::kac::{snap_to_kac, KacSnap};

/// Scans whose `c_est` varies by less than this report no maxima.
const FLAT_RANGE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanParameter {
    Gamma,
    Delta,
    Lambda,
}

impl ScanParameter {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gamma" => Some(Self::Gamma),
            "delta" => Some(Self::Delta),
            "lambda" => Some(Self::Lambda),
            _ => None,
        }
    }
}

/// One model family with a single parameter varied over `values`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterPath {
    pub family: ModelFamily,
    pub gamma: f64,
    pub delta: f64,
    pub lambda: f64,
    pub vary: ScanParameter,
    pub values: Vec<f64>,
}

impl ParameterPath {
    pub fn specs(&self, n_sites: usize, boundary: Boundary) -> Vec<(f64, SpinModelSpec)> {
        self.values
            .iter()
            .map(|&v| {
                let (mut g, mut d, mut l) = (self.gamma, self.delta, self.lambda);
                match self.vary {
                    ScanParameter::Gamma => g = v,
                    ScanParameter::Delta => d = v,
                    ScanParameter::Lambda => l = v,
                }
                (v, self.family.spec(n_sites, g, d, l).with_boundary(boundary))
            })
            .collect()
    }
}

/// `n` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub param: f64,
    pub estimate: Option<CEstimate>,
    /// Solver failure at this point; the scan carries on.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalCandidate {
    /// Grid index of the discrete maximum.
    pub index: usize,
    /// Vertex of the parabola through the maximum and its neighbours.
    pub param: f64,
    pub c_est: f64,
    pub snapped: KacSnap,
    /// The maximum sits on the end of the scanned range and may just be a
    /// monotone trend.
    pub at_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineScan {
    pub window: FitWindow,
    pub points: Vec<ScanPoint>,
    pub maxima: Vec<CriticalCandidate>,
}

impl LineScan {
    /// Index of the smallest fit error among successful points.
    pub fn epsilon_minimum(&self) -> Option<usize> {
        self.points
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.estimate.as_ref().map(|e| (i, e.epsilon)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }

    pub fn interior_maxima(&self) -> impl Iterator<Item = &CriticalCandidate> {
        self.maxima.iter().filter(|m| !m.at_edge)
    }
}

pub fn scan_line(path: &ParameterPath, n_sites: usize, boundary: Boundary, window: FitWindow) -> Result<LineScan> {
    scan_specs(path.specs(n_sites, boundary), window)
}

/// Central-charge estimates for each `(parameter, spec)` pair plus the local
/// maxima of `c_est` along the line.
pub fn scan_specs(mut points: Vec<(f64, SpinModelSpec)>, window: FitWindow) -> Result<LineScan> {
    if points.len() < 5 {
        return Err(invalid(format!("a scan needs at least 5 points, got {}", points.len())));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let results: Vec<ScanPoint> = points
        .par_iter()
        .map(|(param, spec)| {
            let run = || {
                let ells = window.required_ells(spec.n_sites);
                let profile = entropy_profile_with(spec, &ells, EntropyMethod::Auto)?;
                estimate_central_charge_in(&profile, window)
            };
            match run() {
                Ok(e) => ScanPoint { param: *param, estimate: Some(e), error: None },
                Err(e) => ScanPoint { param: *param, estimate: None, error: Some(e.to_string()) },
            }
        })
        .collect();

    let ok: Vec<(usize, f64, f64)> = results
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.estimate.as_ref().map(|e| (i, p.param, e.c_est)))
        .collect();
    let params: Vec<f64> = ok.iter().map(|p| p.1).collect();
    let values: Vec<f64> = ok.iter().map(|p| p.2).collect();
    let maxima = find_maxima(&params, &values)
        .into_iter()
        .map(|(j, param, c_est, at_edge)| CriticalCandidate {
            index: ok[j].0,
            param,
            c_est,
            snapped: snap_to_kac(c_est),
            at_edge,
        })
        .collect();
    Ok(LineScan { window, points: results, maxima })
}

/// Local maxima of `values` over ascending `params`: `(index, refined
/// parameter, refined value, at_edge)`. Runs of equal values count once at
/// their lowest parameter; interior single-point maxima are refined by a
/// parabola through the three neighbouring samples.
pub fn find_maxima(params: &[f64], values: &[f64]) -> Vec<(usize, f64, f64, bool)> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if n < 3 || hi - lo < FLAT_RANGE {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && values[end + 1] == values[start] {
            end += 1;
        }
        let left_lower = start == 0 || values[start - 1] < values[start];
        let right_lower = end == n - 1 || values[end + 1] < values[end];
        if left_lower && right_lower {
            let at_edge = start == 0 || end == n - 1;
            let (p, v) = if start == end && !at_edge {
                parabola_vertex(
                    [params[start - 1], params[start], params[start + 1]],
                    [values[start - 1], values[start], values[start + 1]],
                )
            } else {
                (params[start], values[start])
            };
            out.push((start, p, v, at_edge));
        }
        start = end + 1;
    }
    out
}

fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let a = (d2 - d1) / (x[2] - x[0]);
    if a >= 0.0 {
        return (x[1], y[1]);
    }
    // Newton form y0 + d1 (x - x0) + a (x - x0)(x - x1).
    let xv = (0.5 * (x[0] + x[1]) - 0.5 * d1 / a).clamp(x[0], x[2]);
    (xv, y[0] + d1 * (xv - x[0]) + a * (xv - x[0]) * (xv - x[1]))
}
