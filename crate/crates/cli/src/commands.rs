//! One function per command; each turns a validated config into a table.
//!
//! Column orders are fixed here and covered by the golden files under
//! `tests/golden`.

use rayon::prelude::*;
use serde_json::{json, Value};

use chainent::boson::{gaussian_block_entropy, kg_ground_state, symmetric_gaussian_eof, two_mode_matrix, KgSpec};
use chainent::criticality::{estimate_central_charge_in, linspace, scan_line, FitWindow, ParameterPath, ScanParameter};
use chainent::dynamics::{fit_temperature, run_quench, QuenchSpec, ThermalMethod, ThermalReference};
use chainent::entanglement::{
    block_correlation, block_occupations, correlation_length, entropy_profile_with, zz_correlation, EntropyMethod,
    EntropyProfile,
};
use chainent::fermion::{energy_gap, fermionic_ground_state};
use chainent::fqhe::{fqhe_entropy_scan, FqheSpec, TraceConvention};
use chainent::model::{enumerate_sector_basis, Boundary, ModelFamily, Parity, SpinModelSpec, SymmetrySector};

use crate::config::{Command, RunConfig};
use crate::table::{Cell, Table};

/// A finished command: the table and command-specific summary values for
/// the metadata sidecar.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub table: Table,
    pub summary: Value,
}

/// Failure of the whole command, as opposed to a per-row error.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct CommandError(pub String);

impl From<chainent::Error> for CommandError {
    fn from(e: chainent::Error) -> Self {
        CommandError(e.to_string())
    }
}

type Res = Result<Output, CommandError>;

fn ok_text() -> Cell {
    Cell::Text(String::new())
}

fn err_text(e: impl ToString) -> Cell {
    Cell::Text(e.to_string())
}

fn float_or_empty(x: Option<f64>) -> Cell {
    x.map_or(Cell::Empty, Cell::Float)
}

pub fn execute(cfg: &RunConfig) -> Res {
    match cfg.command {
        Command::EntropyProfile => entropy_profile(cfg),
        Command::CestScan => cest_scan(cfg),
        Command::Gap => gap(cfg),
        Command::Correlation => correlation(cfg),
        Command::BosonEntropy => boson_entropy(cfg),
        Command::BosonEof => boson_eof(cfg),
        Command::Quench => quench(cfg),
        Command::ThermalFit => thermal_fit(cfg),
        Command::FqheScan => fqhe_scan(cfg),
        Command::SectorDims => sector_dims(cfg),
    }
}

fn boundary(cfg: &RunConfig) -> Boundary {
    match cfg.text("boundary") {
        "open" => Boundary::Open,
        _ => Boundary::Periodic,
    }
}

fn window(cfg: &RunConfig) -> FitWindow {
    FitWindow::parse(cfg.text("window")).expect("validated window")
}

fn family(cfg: &RunConfig) -> ModelFamily {
    ModelFamily::parse(cfg.text("model")).expect("validated model")
}

fn model_spec(cfg: &RunConfig) -> SpinModelSpec {
    let delta = cfg.params.get("delta").and_then(Value::as_f64).unwrap_or(0.0);
    family(cfg)
        .spec(cfg.int("n"), cfg.float("gamma"), delta, cfg.float("lambda"))
        .with_boundary(cfg.params.get("boundary").map_or(Boundary::Periodic, |_| boundary(cfg)))
}

/// Columns: `ell, entropy_bits, error`.
fn entropy_profile(cfg: &RunConfig) -> Res {
    let spec = model_spec(cfg);
    spec.validate()?;
    let method = match cfg.text("method") {
        "fermionic" => EntropyMethod::Fermionic,
        "dense" => EntropyMethod::Dense,
        _ => EntropyMethod::Auto,
    };
    let n = spec.n_sites;
    let ells: Vec<usize> = (1..n).collect();
    let mut t = Table::new(&["ell", "entropy_bits", "error"]);
    match entropy_profile_with(&spec, &ells, method) {
        Ok(p) => {
            for &l in &ells {
                t.push(vec![Cell::Int(l as i64), float_or_empty(p.get(l)), ok_text()]);
            }
        }
        Err(e) => {
            for &l in &ells {
                t.push(vec![Cell::Int(l as i64), Cell::Empty, err_text(&e)]);
            }
        }
    }
    Ok(Output { table: t, summary: json!({}) })
}

/// Columns: `<param>, c_est, epsilon, snapped_c, error`.
fn cest_scan(cfg: &RunConfig) -> Res {
    let steps = cfg.int("steps");
    let param = ScanParameter::parse(cfg.text("param")).expect("validated param");
    let path = ParameterPath {
        family: family(cfg),
        gamma: cfg.float("gamma"),
        delta: cfg.float("delta"),
        lambda: cfg.float("lambda"),
        vary: param,
        values: linspace(cfg.float("from"), cfg.float("to"), steps),
    };
    let scan = scan_line(&path, cfg.int("n"), boundary(cfg), window(cfg))?;
    let mut t = Table::new(&[cfg.text("param"), "c_est", "epsilon", "snapped_c", "error"]);
    for p in &scan.points {
        match (&p.estimate, &p.error) {
            (Some(e), _) => t.push(vec![
                Cell::Float(p.param),
                Cell::Float(e.c_est),
                Cell::Float(e.epsilon),
                Cell::Float(chainent::criticality::snap_to_kac(e.c_est).c),
                ok_text(),
            ]),
            (None, err) => t.push(vec![
                Cell::Float(p.param),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                err_text(err.as_deref().unwrap_or("no estimate")),
            ]),
        }
    }
    let maxima: Vec<Value> = scan
        .maxima
        .iter()
        .map(|m| json!({"index": m.index, "param": m.param, "c_est": m.c_est, "snapped_c": m.snapped.c, "at_edge": m.at_edge}))
        .collect();
    let eps_min = scan.epsilon_minimum().map(|i| scan.points[i].param);
    Ok(Output { table: t, summary: json!({"maxima": maxima, "epsilon_minimum_at": eps_min}) })
}

/// Columns: `n, gap, error`.
fn gap(cfg: &RunConfig) -> Res {
    let (lo, hi, step) = (cfg.int("n_min"), cfg.int("n_max"), cfg.int("n_step"));
    if lo < 2 || hi < lo || step == 0 {
        return Err(CommandError(format!("gap: need 2 ≤ n_min ≤ n_max and n_step ≥ 1, got {lo}, {hi}, {step}")));
    }
    let sizes: Vec<usize> = (lo..=hi).step_by(step).collect();
    let fam = family(cfg);
    let rows: Vec<Vec<Cell>> = sizes
        .par_iter()
        .map(|&n| {
            let spec = fam.spec(n, cfg.float("gamma"), 0.0, cfg.float("lambda"));
            match energy_gap(&spec) {
                Ok(g) => vec![Cell::Int(n as i64), Cell::Float(g), ok_text()],
                Err(e) => vec![Cell::Int(n as i64), Cell::Empty, err_text(e)],
            }
        })
        .collect();
    let mut t = Table::new(&["n", "gap", "error"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(Output { table: t, summary: json!({}) })
}

/// Columns: `distance, szz_connected, error`.
fn correlation(cfg: &RunConfig) -> Res {
    let spec = model_spec(cfg);
    spec.validate()?;
    let n = spec.n_sites;
    let max_d = match spec.boundary {
        Boundary::Periodic => n / 2,
        Boundary::Open => n - 1,
    };
    let mut t = Table::new(&["distance", "szz_connected", "error"]);
    for d in 1..=max_d {
        match zz_correlation(&spec, 0, d) {
            Ok(s) => t.push(vec![Cell::Int(d as i64), Cell::Float(s), ok_text()]),
            Err(e) => t.push(vec![Cell::Int(d as i64), Cell::Empty, err_text(e)]),
        }
    }
    let summary = match correlation_length(&spec) {
        Ok(c) => json!({"xi": c.xi, "fit_residual": if c.residual.is_finite() { json!(c.residual) } else { Value::Null }, "fit_points": c.n_points}),
        Err(e) => json!({"xi_error": e.to_string()}),
    };
    Ok(Output { table: t, summary })
}

fn kg_spec(cfg: &RunConfig) -> Result<KgSpec, CommandError> {
    let mut spec = KgSpec::new(cfg.int("n"), cfg.float("kappa"));
    spec.lattice_const = cfg.float("lattice_const");
    spec.validate()?;
    Ok(spec)
}

/// Columns: `ell, entropy_bits, error`.
fn boson_entropy(cfg: &RunConfig) -> Res {
    let spec = kg_spec(cfg)?;
    let state = kg_ground_state(&spec)?;
    let n = spec.n_sites;
    let values: Vec<(usize, Result<f64, chainent::Error>)> = (1..n)
        .into_par_iter()
        .map(|l| (l, gaussian_block_entropy(&state, &(0..l).collect::<Vec<_>>())))
        .collect();
    let mut t = Table::new(&["ell", "entropy_bits", "error"]);
    let mut ok = std::collections::BTreeMap::new();
    for (l, v) in values {
        match v {
            Ok(s) => {
                ok.insert(l, s);
                t.push(vec![Cell::Int(l as i64), Cell::Float(s), ok_text()]);
            }
            Err(e) => t.push(vec![Cell::Int(l as i64), Cell::Empty, err_text(e)]),
        }
    }
    let summary = match estimate_central_charge_in(&EntropyProfile::new(n, ok), window(cfg)) {
        Ok(e) => json!({"c_est": e.c_est, "epsilon": e.epsilon, "window": window(cfg).name()}),
        Err(e) => json!({"c_est_error": e.to_string()}),
    };
    Ok(Output { table: t, summary })
}

/// Columns: `distance, eof_bits, separability_product, error`.
fn boson_eof(cfg: &RunConfig) -> Res {
    let spec = kg_spec(cfg)?;
    let state = kg_ground_state(&spec)?;
    let mut t = Table::new(&["distance", "eof_bits", "separability_product", "error"]);
    for d in 1..=spec.n_sites / 2 {
        let row = two_mode_matrix(&state, 0, d).and_then(|f| Ok((symmetric_gaussian_eof(&f)?, f.separability_product())));
        match row {
            Ok((e, p)) => t.push(vec![Cell::Int(d as i64), Cell::Float(e), Cell::Float(p), ok_text()]),
            Err(e) => t.push(vec![Cell::Int(d as i64), Cell::Empty, Cell::Empty, err_text(e)]),
        }
    }
    Ok(Output { table: t, summary: json!({}) })
}

/// Columns: `t, block_entropy, fidelity_at_beta_star, beta_star, error`.
fn quench(cfg: &RunConfig) -> Res {
    let n = cfg.int("n");
    let start = cfg.int("block_start");
    let spec = QuenchSpec {
        n_sites: n,
        lambda: cfg.float("lambda"),
        impurity_site: cfg.int("impurity_site"),
        impurity_strength: cfg.float("impurity_strength"),
        block: (0..cfg.int("block_len")).map(|i| (start + i) % n.max(1)).collect(),
    };
    let times = linspace(cfg.float("t_from"), cfg.float("t_to"), cfg.int("t_steps"));
    let run = run_quench(&spec, &times)?;
    let mut t = Table::new(&["t", "block_entropy", "fidelity_at_beta_star", "beta_star", "error"]);
    for s in &run.samples {
        t.push(vec![Cell::Float(s.t), Cell::Float(s.block_entropy), Cell::Float(s.fidelity), Cell::Float(s.beta), ok_text()]);
    }
    let max_total = run.samples.iter().map(|s| s.total_entropy).fold(0.0, f64::max);
    let e0 = run.samples.first().map(|s| s.energy);
    let drift = run.samples.iter().map(|s| (s.energy - e0.unwrap_or(0.0)).abs()).fold(0.0, f64::max);
    Ok(Output { table: t, summary: json!({"max_total_entropy": max_total, "energy": e0, "energy_drift": drift}) })
}

/// Columns: `ell, beta, fidelity, at_upper_edge, error`, for `ℓ = 2..=max_block`.
fn thermal_fit(cfg: &RunConfig) -> Res {
    let spec = model_spec(cfg);
    spec.validate()?;
    let max_block = cfg.int("max_block");
    if max_block < 2 || max_block >= spec.n_sites {
        return Err(CommandError(format!("thermal-fit: max_block must lie in 2..{}", spec.n_sites)));
    }
    let gamma = fermionic_ground_state(&spec)?.correlation();
    // Reference blocks are open chains, which need two sites.
    let rows: Vec<Vec<Cell>> = (2..=max_block)
        .into_par_iter()
        .map(|l| {
            let fit = (|| {
                let sites: Vec<usize> = (0..l).collect();
                let spectrum = block_occupations(&block_correlation(&gamma, &sites)?)?.product_weights();
                let block = spec.restricted(l, Boundary::Open);
                let reference = ThermalReference::from_spec(&block, ThermalMethod::Auto)?;
                fit_temperature(&spectrum, &reference)
            })();
            match fit {
                Ok(f) => vec![Cell::Int(l as i64), Cell::Float(f.beta), Cell::Float(f.fidelity), Cell::Bool(f.at_upper_edge), ok_text()],
                Err(e) => vec![Cell::Int(l as i64), Cell::Empty, Cell::Empty, Cell::Empty, err_text(e)],
            }
        })
        .collect();
    let mut t = Table::new(&["ell", "beta", "fidelity", "at_upper_edge", "error"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(Output { table: t, summary: json!({}) })
}

/// Columns: `aspect_ratio, entropy_bits, excess_bits, degeneracy, energy, error`.
fn fqhe_scan(cfg: &RunConfig) -> Res {
    let spec = FqheSpec::new(cfg.int("n_electrons"), cfg.int("n_orbitals"), cfg.float("from"))?;
    let n_keep = cfg.int("n_keep");
    if n_keep == 0 || n_keep > spec.n_electrons {
        return Err(CommandError(format!("fqhe-scan: n_keep must lie in 1..={}", spec.n_electrons)));
    }
    let conv = match cfg.text("convention") {
        "fermionic" => TraceConvention::Fermionic,
        _ => TraceConvention::Occupation,
    };
    let ratios = linspace(cfg.float("from"), cfg.float("to"), cfg.int("steps"));
    let mut t = Table::new(&["aspect_ratio", "entropy_bits", "excess_bits", "degeneracy", "energy", "error"]);
    for p in fqhe_entropy_scan(&spec, n_keep, &ratios, conv) {
        match p.error {
            None => t.push(vec![
                Cell::Float(p.aspect_ratio),
                Cell::Float(p.entropy),
                Cell::Float(p.excess),
                Cell::Int(p.degeneracy as i64),
                Cell::Float(p.energy),
                ok_text(),
            ]),
            Some(e) => t.push(vec![Cell::Float(p.aspect_ratio), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, err_text(e)]),
        }
    }
    Ok(Output { table: t, summary: json!({"filling": spec.filling()}) })
}

/// Columns: `momentum, parity, dim`.
fn sector_dims(cfg: &RunConfig) -> Res {
    let n = cfg.int("n");
    let sectors = SymmetrySector::all(n);
    let dims = sectors
        .par_iter()
        .map(|&s| enumerate_sector_basis(n, s).map(|b| b.dim()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["momentum", "parity", "dim"]);
    for (s, d) in sectors.iter().zip(&dims) {
        let p = if s.parity == Parity::Even { 1 } else { -1 };
        t.push(vec![Cell::Int(s.momentum as i64), Cell::Int(p), Cell::Int(*d as i64)]);
    }
    Ok(Output { table: t, summary: json!({"total": dims.iter().sum::<usize>()}) })
}
