//! Run configurations: a command, its typed parameters and output options.
//!
//! The same schema drives the argument parser and the JSON reader, so both
//! reject unknown keys and fill the same defaults.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Arg, ArgAction, ArgMatches, Command as ClapCommand};
use serde_json::{json, Map, Value};

use crate::ConfigError;

/// Variable consulted for the worker count when the config sets none.
pub const THREADS_ENV: &str = "CHAINENT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    EntropyProfile,
    CestScan,
    Gap,
    Correlation,
    BosonEntropy,
    BosonEof,
    Quench,
    ThermalFit,
    FqheScan,
    SectorDims,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::EntropyProfile,
        Command::CestScan,
        Command::Gap,
        Command::Correlation,
        Command::BosonEntropy,
        Command::BosonEof,
        Command::Quench,
        Command::ThermalFit,
        Command::FqheScan,
        Command::SectorDims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::EntropyProfile => "entropy-profile",
            Command::CestScan => "cest-scan",
            Command::Gap => "gap",
            Command::Correlation => "correlation",
            Command::BosonEntropy => "boson-entropy",
            Command::BosonEof => "boson-eof",
            Command::Quench => "quench",
            Command::ThermalFit => "thermal-fit",
            Command::FqheScan => "fqhe-scan",
            Command::SectorDims => "sector-dims",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    fn about(self) -> &'static str {
        match self {
            Command::EntropyProfile => "Block entropy S(ℓ) of the ground state for ℓ = 1..N-1",
            Command::CestScan => "Central-charge estimate along a line in parameter space",
            Command::Gap => "Smallest quasi-particle energy against chain length",
            Command::Correlation => "Connected σz correlator against distance, with the fitted correlation length",
            Command::BosonEntropy => "Block entropy of the harmonic chain ground state",
            Command::BosonEof => "Two-site Gaussian entanglement of formation against distance",
            Command::Quench => "Block entropy and thermal fit after a local field quench",
            Command::ThermalFit => "Best-fitting temperature for ground-state block spectra",
            Command::FqheScan => "Reduced-particle entropy of torus quantum Hall states against aspect ratio",
            Command::SectorDims => "Dimensions of the momentum and parity sectors",
        }
    }

    /// Parameter schema in column order of `--help`.
    pub fn keys(self) -> Vec<Key> {
        use Kind::*;
        let model = || {
            vec![
                Key::new("model", Choice(&["ising", "xx", "xy", "xyz"]), Some(json!("ising")), "model family"),
                Key::new("n", Int, None, "number of sites"),
                Key::new("gamma", Float, Some(json!(1.0)), "XY anisotropy γ"),
                Key::new("delta", Float, Some(json!(0.0)), "ZZ coupling Δ (XYZ only)"),
                Key::new("lambda", Float, Some(json!(1.0)), "transverse field λ"),
                Key::new("boundary", Choice(&["periodic", "open"]), Some(json!("periodic")), "boundary condition"),
            ]
        };
        let free = || {
            vec![
                Key::new("model", Choice(&["ising", "xx", "xy"]), Some(json!("ising")), "model family"),
                Key::new("gamma", Float, Some(json!(1.0)), "XY anisotropy γ"),
                Key::new("lambda", Float, Some(json!(1.0)), "transverse field λ"),
            ]
        };
        let kg = || {
            vec![
                Key::new("n", Int, None, "number of oscillators"),
                Key::new("kappa", Float, None, "mass κ"),
                Key::new("lattice_const", Float, Some(json!(1.0)), "lattice constant a"),
            ]
        };
        let mut keys = match self {
            Command::EntropyProfile => {
                let mut k = model();
                k.push(Key::new("method", Choice(&["auto", "fermionic", "dense"]), Some(json!("auto")), "entropy route"));
                k
            }
            Command::CestScan => {
                let mut k = model();
                k.extend([
                    Key::new("param", Choice(&["gamma", "delta", "lambda"]), None, "parameter to vary"),
                    Key::new("from", Float, None, "first value"),
                    Key::new("to", Float, None, "last value"),
                    Key::new("steps", Int, Some(json!(21)), "number of points"),
                    Key::new("window", Choice(&["central", "full"]), Some(json!("central")), "block lengths entering the fit"),
                ]);
                k
            }
            Command::Gap => {
                let mut k = free();
                k.extend([
                    Key::new("n_min", Int, Some(json!(10)), "smallest chain"),
                    Key::new("n_max", Int, Some(json!(100)), "largest chain"),
                    Key::new("n_step", Int, Some(json!(10)), "chain length increment"),
                ]);
                k
            }
            Command::Correlation => model(),
            Command::BosonEntropy => {
                let mut k = kg();
                k.push(Key::new("window", Choice(&["central", "full"]), Some(json!("central")), "block lengths entering the fit"));
                k
            }
            Command::BosonEof => kg(),
            Command::Quench => vec![
                Key::new("n", Int, Some(json!(40)), "number of sites"),
                Key::new("lambda", Float, Some(json!(1.0)), "uniform field λ"),
                Key::new("impurity_site", Int, Some(json!(0)), "site carrying the extra field"),
                Key::new("impurity_strength", Float, Some(json!(0.5)), "extra field ε on the impurity site"),
                Key::new("block_start", Int, Some(json!(1)), "first site of the observed block"),
                Key::new("block_len", Int, Some(json!(8)), "length of the observed block"),
                Key::new("t_from", Float, Some(json!(0.0)), "first time"),
                Key::new("t_to", Float, Some(json!(40.0)), "last time"),
                Key::new("t_steps", Int, Some(json!(41)), "number of times"),
            ],
            Command::ThermalFit => {
                let mut k = free();
                k.extend([
                    Key::new("n", Int, None, "number of sites"),
                    Key::new("boundary", Choice(&["periodic", "open"]), Some(json!("periodic")), "boundary condition"),
                    Key::new("max_block", Int, Some(json!(8)), "largest block length"),
                ]);
                k
            }
            Command::FqheScan => vec![
                Key::new("n_electrons", Int, None, "number of electrons"),
                Key::new("n_orbitals", Int, None, "number of orbitals"),
                Key::new("n_keep", Int, Some(json!(1)), "particles kept by the partial trace"),
                Key::new("from", Float, Some(json!(0.05)), "first aspect ratio L_y/L_x"),
                Key::new("to", Float, Some(json!(1.0)), "last aspect ratio"),
                Key::new("steps", Int, Some(json!(20)), "number of ratios"),
                Key::new("convention", Choice(&["occupation", "fermionic"]), Some(json!("occupation")), "partial-trace sign convention"),
            ],
            Command::SectorDims => vec![Key::new("n", Int, None, "number of sites")],
        };
        keys.sort_by_key(|k| k.name);
        keys
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kind {
    Int,
    Float,
    Choice(&'static [&'static str]),
}

#[derive(Clone, Debug)]
pub struct Key {
    pub name: &'static str,
    pub kind: Kind,
    pub default: Option<Value>,
    pub help: &'static str,
}

impl Key {
    fn new(name: &'static str, kind: Kind, default: Option<Value>, help: &'static str) -> Self {
        Key { name, kind, default, help }
    }

    fn value_name(&self) -> String {
        match self.kind {
            Kind::Int => "INT".into(),
            Kind::Float => "FLOAT".into(),
            Kind::Choice(c) => c.join("|"),
        }
    }

    fn type_error(&self, command: Command, got: &str) -> ConfigError {
        ConfigError(format!(
            "{}: `{}` expects {}, got {got}",
            command.name(),
            self.name,
            match self.kind {
                Kind::Int => "a non-negative integer".to_string(),
                Kind::Float => "a finite number".to_string(),
                Kind::Choice(c) => format!("one of {}", c.join(", ")),
            }
        ))
    }

    fn from_str(&self, command: Command, raw: &str) -> Result<Value, ConfigError> {
        match self.kind {
            Kind::Int => raw.trim().parse::<u64>().map(Value::from).map_err(|_| self.type_error(command, raw)),
            Kind::Float => match raw.trim().parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(json!(x)),
                _ => Err(self.type_error(command, raw)),
            },
            Kind::Choice(c) => {
                if c.contains(&raw) {
                    Ok(json!(raw))
                } else {
                    Err(self.type_error(command, raw))
                }
            }
        }
    }

    fn from_json(&self, command: Command, v: &Value) -> Result<Value, ConfigError> {
        match (self.kind, v) {
            (Kind::Int, Value::Number(n)) if n.is_u64() => Ok(v.clone()),
            (Kind::Float, Value::Number(n)) => Ok(json!(n.as_f64().expect("JSON numbers are finite"))),
            (Kind::Choice(_), Value::String(s)) => self.from_str(command, s),
            _ => Err(self.type_error(command, &v.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

/// A validated configuration with every default filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: BTreeMap<String, Value>,
    pub output: OutputFormat,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Checks `raw` against the command's schema.
    pub fn new(
        command: Command,
        raw: BTreeMap<String, Value>,
        output: OutputFormat,
        out: Option<PathBuf>,
        threads: Option<usize>,
    ) -> Result<Self, ConfigError> {
        let keys = command.keys();
        if let Some(unknown) = raw.keys().find(|k| !keys.iter().any(|key| key.name == k.as_str())) {
            let known: Vec<&str> = keys.iter().map(|k| k.name).collect();
            return Err(ConfigError(format!(
                "{}: unknown key `{unknown}` (accepted: {})",
                command.name(),
                known.join(", ")
            )));
        }
        let mut params = BTreeMap::new();
        for key in &keys {
            let v = match (raw.get(key.name), &key.default) {
                (Some(v), _) => key.from_json(command, v)?,
                (None, Some(d)) => d.clone(),
                (None, None) => {
                    return Err(ConfigError(format!(
                        "{}: missing required key `{}` (--{} <{}>)",
                        command.name(),
                        key.name,
                        key.name,
                        key.value_name()
                    )))
                }
            };
            params.insert(key.name.to_string(), v);
        }
        if threads == Some(0) {
            return Err(ConfigError("threads must be at least 1".into()));
        }
        Ok(RunConfig { command, params, output, out, threads })
    }

    pub fn int(&self, key: &str) -> usize {
        self.params[key].as_u64().unwrap_or_else(|| panic!("validated int `{key}`")) as usize
    }

    pub fn float(&self, key: &str) -> f64 {
        self.params[key].as_f64().unwrap_or_else(|| panic!("validated float `{key}`"))
    }

    pub fn text(&self, key: &str) -> &str {
        self.params[key].as_str().unwrap_or_else(|| panic!("validated choice `{key}`"))
    }

    /// Canonical JSON: sorted keys, typed values, defaults included.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command.name(),
            "params": Value::Object(self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Map<_, _>>()),
            "output": self.output.name(),
            "out": self.out.as_ref().map(|p| p.to_string_lossy().into_owned()),
            "threads": self.threads,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("config serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self, ConfigError> {
        let obj = v.as_object().ok_or_else(|| ConfigError("config must be a JSON object".into()))?;
        for k in obj.keys() {
            if !["command", "params", "output", "out", "threads"].contains(&k.as_str()) {
                return Err(ConfigError(format!(
                    "unknown top-level key `{k}` (accepted: command, params, output, out, threads)"
                )));
            }
        }
        let name = obj
            .get("command")
            .and_then(Value::as_str)
            .ok_or_else(|| ConfigError("config needs a string `command`".into()))?;
        let command = Command::parse(name).ok_or_else(|| unknown_command(name))?;
        let raw: BTreeMap<String, Value> = match obj.get("params") {
            None | Some(Value::Null) => BTreeMap::new(),
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            Some(other) => return Err(ConfigError(format!("`params` must be an object, got {other}"))),
        };
        let output = match obj.get("output") {
            None | Some(Value::Null) => OutputFormat::Csv,
            Some(Value::String(s)) => {
                OutputFormat::parse(s).ok_or_else(|| ConfigError(format!("`output` must be csv or json, got {s}")))?
            }
            Some(other) => return Err(ConfigError(format!("`output` must be a string, got {other}"))),
        };
        let out = match obj.get("out") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(PathBuf::from(s)),
            Some(other) => return Err(ConfigError(format!("`out` must be a path string, got {other}"))),
        };
        let threads = match obj.get("threads") {
            None | Some(Value::Null) => None,
            Some(Value::Number(n)) if n.is_u64() => Some(n.as_u64().unwrap() as usize),
            Some(other) => return Err(ConfigError(format!("`threads` must be a positive integer, got {other}"))),
        };
        RunConfig::new(command, raw, output, out, threads)
    }

    pub fn from_json_str(s: &str) -> Result<Self, ConfigError> {
        let v: Value = serde_json::from_str(s).map_err(|e| ConfigError(format!("config is not valid JSON: {e}")))?;
        Self::from_json(&v)
    }
}

fn unknown_command(name: &str) -> ConfigError {
    let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
    ConfigError(format!("unknown command `{name}` (available: {})", names.join(", ")))
}

fn output_args() -> [Arg; 3] {
    [
        Arg::new("output").long("output").value_name("csv|json").help("output format [default: csv]"),
        Arg::new("out").long("out").value_name("PATH").help("output file; a .meta.json sidecar is written next to it"),
        Arg::new("threads")
            .long("threads")
            .value_name("INT")
            .help(format!("worker threads [default: ${THREADS_ENV} or all cores]")),
    ]
}

/// The argument parser, built from the schema.
pub fn cli() -> ClapCommand {
    let mut root = ClapCommand::new("chainent")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Entanglement in quantum spin chains, harmonic chains and torus quantum Hall states")
        .arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("read the whole run configuration from a JSON file")
                .action(ArgAction::Set),
        )
        .subcommand_negates_reqs(true);
    for c in Command::ALL {
        let mut sub = ClapCommand::new(c.name()).about(c.about()).args(output_args());
        for key in c.keys() {
            let help = match &key.default {
                Some(d) => format!("{} [default: {}]", key.help, d),
                None => format!("{} (required)", key.help),
            };
            sub = sub.arg(
                Arg::new(key.name)
                    .long(key.name)
                    .value_name(key.value_name())
                    .allow_negative_numbers(true)
                    .help(help),
            );
        }
        root = root.subcommand(sub);
    }
    root
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let m = cli().try_get_matches_from(argv).map_err(|e| ConfigError(e.render().to_string()))?;
    if let Some(path) = m.get_one::<String>("config") {
        if m.subcommand().is_some() {
            return Err(ConfigError("--config cannot be combined with a command".into()));
        }
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {path}: {e}")))?;
        return RunConfig::from_json_str(&text);
    }
    let (name, sub) = m.subcommand().ok_or_else(|| ConfigError("no command given; try --help".into()))?;
    let command = Command::parse(name).ok_or_else(|| unknown_command(name))?;
    from_matches(command, sub)
}

fn from_matches(command: Command, m: &ArgMatches) -> Result<RunConfig, ConfigError> {
    let mut raw = BTreeMap::new();
    for key in command.keys() {
        if let Some(s) = m.get_one::<String>(key.name) {
            raw.insert(key.name.to_string(), key.from_str(command, s)?);
        }
    }
    let output = match m.get_one::<String>("output") {
        None => OutputFormat::Csv,
        Some(s) => OutputFormat::parse(s).ok_or_else(|| ConfigError(format!("--output must be csv or json, got {s}")))?,
    };
    let out = m.get_one::<String>("out").map(PathBuf::from);
    let threads = match m.get_one::<String>("threads") {
        None => None,
        Some(s) => Some(
            s.parse::<usize>()
                .map_err(|_| ConfigError(format!("--threads expects a positive integer, got {s}")))?,
        ),
    };
    RunConfig::new(command, raw, output, out, threads)
}
