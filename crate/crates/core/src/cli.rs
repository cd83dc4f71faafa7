//! Run configurations and sweep tables for the `planck-cutoff` binary.
//!
//! A run is described by a JSON document with a command name, a
//! command-specific parameter block, and output settings. Validation is not
//! fail-fast: every structural problem is collected and reported in one
//! pass. Output is a [`SweepTable`] emitted as CSV (metadata in `#`-prefixed
//! comment lines, values in shortest round-trip form) or JSON; identical
//! configurations produce byte-identical files.

use crate::coulomb::{self, ChargeConfig, PointCharge};
use crate::fieldmodes::{self, Mode, ModeState, MovingCharge};
use crate::modesum;
use crate::photongas::{self, ThermoPoint};
use crate::units::{PlanckScale, DEFAULT_INVERSE_ALPHA};
use crate::{Error, Result};
use serde_json::{json, Map, Value};

pub const TOOL_NAME: &str = "planck-cutoff";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Where and how to write the table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: OutputFormat,
}

/// An inclusive sweep over one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log_scale: bool,
}

impl SweepRange {
    pub fn single(value: f64) -> Self {
        SweepRange {
            min: value,
            max: value,
            count: 1,
            log_scale: false,
        }
    }

    /// The sweep grid, in order.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let w = i as f64 / n;
                if self.log_scale {
                    (self.min.ln() + w * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + w * (self.max - self.min)
                }
            })
            .collect()
    }

    fn to_value(&self) -> Value {
        json!({
            "min": self.min,
            "max": self.max,
            "count": self.count,
            "scale": if self.log_scale { "log" } else { "linear" },
        })
    }
}

/// How the mode set of a `modes` run is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeSpec {
    /// Explicit wave vectors and phases.
    Explicit(Vec<([f64; 3], f64)>),
    /// Isotropic shell of `count` seeded directions at magnitude `k_mag`.
    Shell { k_mag: f64, count: usize },
}

/// Initial state of a `modes` run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    Zero,
    /// Constraint-satisfying static solution of the t = 0 sources.
    Static,
}

/// Command plus its parameter block.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Coulomb {
        charges: Vec<PointCharge>,
        include_self: bool,
    },
    KernelSweep {
        r: SweepRange,
        k_star: f64,
        oracle: bool,
        mc_samples: Option<usize>,
    },
    SelfEnergy {
        e: f64,
    },
    ZeroPoint {
        v: SweepRange,
    },
    Ratio {
        v: SweepRange,
    },
    StateCount {
        v: SweepRange,
    },
    Spectrum {
        p: SweepRange,
        t: f64,
        mu: f64,
    },
    EosSweep {
        t: SweepRange,
        mu: f64,
        v: f64,
        g_s: u8,
    },
    Modes {
        volume: f64,
        dt: f64,
        n_steps: usize,
        modes: ModeSpec,
        charges: Vec<MovingCharge>,
        initial: InitialState,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Coulomb { .. } => "coulomb",
            Command::KernelSweep { .. } => "kernel-sweep",
            Command::SelfEnergy { .. } => "self-energy",
            Command::ZeroPoint { .. } => "zero-point",
            Command::Ratio { .. } => "ratio",
            Command::StateCount { .. } => "state-count",
            Command::Spectrum { .. } => "spectrum",
            Command::EosSweep { .. } => "eos-sweep",
            Command::Modes { .. } => "modes",
        }
    }
}

/// A fully resolved run configuration (defaults filled in).
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub alpha: f64,
    pub seed: u64,
    pub output: OutputSpec,
}

impl RunConfig {
    /// The resolved configuration as the same JSON shape [`validate`]
    /// accepts, used for the metadata echo.
    pub fn to_value(&self) -> Value {
        let parameters = match &self.command {
            Command::Coulomb {
                charges,
                include_self,
            } => json!({
                "charges": charges,
                "include_self": include_self,
            }),
            Command::KernelSweep {
                r,
                k_star,
                oracle,
                mc_samples,
            } => {
                let mut m = Map::new();
                m.insert("r".into(), r.to_value());
                m.insert("k_star".into(), json!(k_star));
                m.insert("oracle".into(), json!(oracle));
                if let Some(n) = mc_samples {
                    m.insert("mc_samples".into(), json!(n));
                }
                Value::Object(m)
            }
            Command::SelfEnergy { e } => json!({ "e": e }),
            Command::ZeroPoint { v } => json!({ "v": v.to_value() }),
            Command::Ratio { v } => json!({ "v": v.to_value() }),
            Command::StateCount { v } => json!({ "v": v.to_value() }),
            Command::Spectrum { p, t, mu } => json!({
                "p": p.to_value(),
                "t": t,
                "mu": mu,
            }),
            Command::EosSweep { t, mu, v, g_s } => json!({
                "t": t.to_value(),
                "mu": mu,
                "v": v,
                "g_s": g_s,
            }),
            Command::Modes {
                volume,
                dt,
                n_steps,
                modes,
                charges,
                initial,
            } => {
                let modes_value = match modes {
                    ModeSpec::Explicit(list) => json!(list
                        .iter()
                        .map(|(k, theta)| json!({ "k": k, "theta": theta }))
                        .collect::<Vec<_>>()),
                    ModeSpec::Shell { k_mag, count } => json!({
                        "shell": { "k_mag": k_mag, "count": count }
                    }),
                };
                json!({
                    "volume": volume,
                    "dt": dt,
                    "n_steps": n_steps,
                    "modes": modes_value,
                    "charges": charges,
                    "initial": match initial {
                        InitialState::Zero => "zero",
                        InitialState::Static => "static",
                    },
                })
            }
        };
        // the output path is deliberately not echoed: file content must not
        // depend on where the file is written
        let mut output = Map::new();
        output.insert("format".into(), json!(self.output.format.as_str()));
        json!({
            "command": self.command.name(),
            "alpha": self.alpha,
            "seed": self.seed,
            "output": Value::Object(output),
            "parameters": parameters,
        })
    }
}

/// An ordered numeric table plus the metadata that reproduces it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Resolved config echo.
    pub config: Value,
    pub seed: u64,
}

impl SweepTable {
    fn new(headers: &[&str], rows: Vec<Vec<f64>>, config: &RunConfig) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == headers.len()));
        SweepTable {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
            config: config.to_value(),
            seed: config.seed,
        }
    }

    /// CSV rendering: `#` metadata lines, a header row, then shortest
    /// round-trip numeric rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {TOOL_NAME} {TOOL_VERSION}\n"));
        out.push_str(&format!("# seed: {}\n", self.seed));
        out.push_str(&format!("# config: {}\n", self.config));
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON rendering of the same table.
    pub fn to_json(&self) -> String {
        let doc = json!({
            "metadata": {
                "tool": TOOL_NAME,
                "version": TOOL_VERSION,
                "seed": self.seed,
                "config": self.config,
            },
            "headers": self.headers,
            "rows": self.rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

// ---------------------------------------------------------------------------
// validation

struct Validator {
    errors: Vec<String>,
}

impl Validator {
    fn new() -> Self {
        Validator { errors: Vec::new() }
    }

    fn error(&mut self, msg: impl Into<String>) {
        self.errors.push(msg.into());
    }

    fn check_keys(&mut self, obj: &Map<String, Value>, context: &str, allowed: &[&str]) {
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                self.error(format!("{context}: unknown key `{key}`"));
            }
        }
    }

    fn f64_field(&mut self, obj: &Map<String, Value>, context: &str, key: &str) -> Option<f64> {
        match obj.get(key) {
            Some(v) => match v.as_f64() {
                Some(x) if x.is_finite() => Some(x),
                _ => {
                    self.error(format!("{context}.{key}: expected a finite number, got {v}"));
                    None
                }
            },
            None => {
                self.error(format!("{context}.{key}: missing required number"));
                None
            }
        }
    }

    fn f64_default(
        &mut self,
        obj: &Map<String, Value>,
        context: &str,
        key: &str,
        default: f64,
    ) -> f64 {
        match obj.get(key) {
            None => default,
            Some(v) => match v.as_f64() {
                Some(x) if x.is_finite() => x,
                _ => {
                    self.error(format!("{context}.{key}: expected a finite number, got {v}"));
                    default
                }
            },
        }
    }

    fn usize_field(&mut self, obj: &Map<String, Value>, context: &str, key: &str) -> Option<usize> {
        match obj.get(key) {
            Some(v) => match v.as_u64() {
                Some(x) => Some(x as usize),
                None => {
                    self.error(format!(
                        "{context}.{key}: expected a non-negative integer, got {v}"
                    ));
                    None
                }
            },
            None => {
                self.error(format!("{context}.{key}: missing required integer"));
                None
            }
        }
    }

    fn sweep_range(&mut self, value: &Value, context: &str) -> Option<SweepRange> {
        if let Some(x) = value.as_f64() {
            if !x.is_finite() {
                self.error(format!("{context}: value must be finite"));
                return None;
            }
            return Some(SweepRange::single(x));
        }
        let obj = match value.as_object() {
            Some(o) => o,
            None => {
                self.error(format!(
                    "{context}: expected a number or {{min, max, count, scale}}"
                ));
                return None;
            }
        };
        self.check_keys(obj, context, &["min", "max", "count", "scale"]);
        let min = self.f64_field(obj, context, "min");
        let max = self.f64_field(obj, context, "max");
        let count = self.usize_field(obj, context, "count");
        let log_scale = match obj.get("scale").and_then(Value::as_str) {
            None | Some("linear") => false,
            Some("log") => true,
            Some(other) => {
                self.error(format!(
                    "{context}.scale: expected `linear` or `log`, got `{other}`"
                ));
                false
            }
        };
        let (min, max, count) = (min?, max?, count?);
        if count < 1 {
            self.error(format!("{context}.count: must be >= 1"));
            return None;
        }
        if min > max {
            self.error(format!("{context}: min {min} exceeds max {max}"));
            return None;
        }
        if log_scale && min <= 0.0 {
            self.error(format!("{context}: log scale requires min > 0"));
            return None;
        }
        Some(SweepRange {
            min,
            max,
            count,
            log_scale,
        })
    }

    fn positive_range(&mut self, value: &Value, context: &str) -> Option<SweepRange> {
        let range = self.sweep_range(value, context)?;
        if range.min <= 0.0 {
            self.error(format!("{context}: values must be > 0"));
            return None;
        }
        Some(range)
    }
}

fn parse_parameters(
    v: &mut Validator,
    command: &str,
    params: &Map<String, Value>,
) -> Option<Command> {
    let ctx = "parameters";
    match command {
        "coulomb" => {
            v.check_keys(params, ctx, &["charges", "include_self"]);
            let charges = match params.get("charges") {
                Some(value) => match serde_json::from_value::<Vec<PointCharge>>(value.clone()) {
                    Ok(list) => {
                        if let Err(e) = ChargeConfig::new(list.clone()) {
                            v.error(format!("{ctx}.charges: {e}"));
                            None
                        } else {
                            Some(list)
                        }
                    }
                    Err(e) => {
                        v.error(format!("{ctx}.charges: {e}"));
                        None
                    }
                },
                None => {
                    v.error(format!("{ctx}.charges: missing required list"));
                    None
                }
            };
            let include_self = match params.get("include_self") {
                None => true,
                Some(Value::Bool(b)) => *b,
                Some(other) => {
                    v.error(format!("{ctx}.include_self: expected a bool, got {other}"));
                    true
                }
            };
            Some(Command::Coulomb {
                charges: charges?,
                include_self,
            })
        }
        "kernel-sweep" => {
            v.check_keys(params, ctx, &["r", "k_star", "oracle", "mc_samples"]);
            let r = params.get("r").map(|value| v.positive_range(value, "parameters.r"));
            if r.is_none() {
                v.error(format!("{ctx}.r: missing required range"));
            }
            let k_star = v.f64_default(params, ctx, "k_star", 1.0);
            if k_star <= 0.0 {
                v.error(format!("{ctx}.k_star: must be > 0"));
            }
            let oracle = match params.get("oracle") {
                None => false,
                Some(Value::Bool(b)) => *b,
                Some(other) => {
                    v.error(format!("{ctx}.oracle: expected a bool, got {other}"));
                    false
                }
            };
            let mc_samples = match params.get("mc_samples") {
                None => None,
                Some(value) => match value.as_u64() {
                    Some(n) if n >= 1000 => Some(n as usize),
                    _ => {
                        v.error(format!("{ctx}.mc_samples: expected an integer >= 1000"));
                        None
                    }
                },
            };
            Some(Command::KernelSweep {
                r: r??,
                k_star,
                oracle,
                mc_samples,
            })
        }
        "self-energy" => {
            v.check_keys(params, ctx, &["e"]);
            let e = v.f64_field(params, ctx, "e")?;
            Some(Command::SelfEnergy { e })
        }
        "zero-point" | "ratio" | "state-count" => {
            v.check_keys(params, ctx, &["v"]);
            let range = match params.get("v") {
                Some(value) => v.positive_range(value, "parameters.v"),
                None => {
                    v.error(format!("{ctx}.v: missing required volume"));
                    None
                }
            }?;
            Some(match command {
                "zero-point" => Command::ZeroPoint { v: range },
                "ratio" => Command::Ratio { v: range },
                _ => Command::StateCount { v: range },
            })
        }
        "spectrum" => {
            v.check_keys(params, ctx, &["p", "t", "mu"]);
            let p = match params.get("p") {
                Some(value) => v.sweep_range(value, "parameters.p"),
                None => {
                    v.error(format!("{ctx}.p: missing required range"));
                    None
                }
            };
            let t = v.f64_field(params, ctx, "t");
            let mu = v.f64_default(params, ctx, "mu", 0.0);
            if let Some(t) = t {
                if t <= 0.0 {
                    v.error(format!("{ctx}.t: temperature must be > 0, got {t}"));
                    return None;
                }
            }
            if mu > 0.0 {
                v.error(format!("{ctx}.mu: chemical potential must be <= 0, got {mu}"));
                return None;
            }
            let p = p?;
            if p.min < 0.0 || p.max > 1.0 {
                v.error(format!("{ctx}.p: momenta must lie in [0, 1]"));
                return None;
            }
            Some(Command::Spectrum { p, t: t?, mu })
        }
        "eos-sweep" => {
            v.check_keys(params, ctx, &["t", "mu", "v", "g_s"]);
            let t = match params.get("t") {
                Some(value) => v.positive_range(value, "parameters.t"),
                None => {
                    v.error(format!("{ctx}.t: missing required temperature range"));
                    None
                }
            };
            let mu = v.f64_default(params, ctx, "mu", 0.0);
            if mu > 0.0 {
                v.error(format!("{ctx}.mu: chemical potential must be <= 0, got {mu}"));
            }
            let volume = v.f64_default(params, ctx, "v", 1.0);
            if volume <= 0.0 {
                v.error(format!("{ctx}.v: volume must be > 0, got {volume}"));
            }
            let g_s = match params.get("g_s") {
                None => 2,
                Some(value) => match value.as_u64() {
                    Some(1) => 1,
                    Some(2) => 2,
                    _ => {
                        v.error(format!("{ctx}.g_s: expected 1 or 2, got {value}"));
                        2
                    }
                },
            };
            Some(Command::EosSweep {
                t: t?,
                mu,
                v: volume,
                g_s,
            })
        }
        "modes" => {
            v.check_keys(
                params,
                ctx,
                &["volume", "dt", "n_steps", "modes", "charges", "initial"],
            );
            let volume = v.f64_field(params, ctx, "volume");
            if let Some(volume) = volume {
                if volume <= 0.0 {
                    v.error(format!("{ctx}.volume: must be > 0, got {volume}"));
                }
            }
            let dt = v.f64_field(params, ctx, "dt");
            if let Some(dt) = dt {
                if dt <= 0.0 {
                    v.error(format!("{ctx}.dt: must be > 0, got {dt}"));
                }
            }
            let n_steps = v.usize_field(params, ctx, "n_steps");
            let modes = match params.get("modes") {
                None => {
                    v.error(format!("{ctx}.modes: missing required mode set"));
                    None
                }
                Some(Value::Array(items)) => {
                    let mut list = Vec::new();
                    let mut ok = true;
                    for (i, item) in items.iter().enumerate() {
                        let obj = match item.as_object() {
                            Some(o) => o,
                            None => {
                                v.error(format!("{ctx}.modes[{i}]: expected {{k, theta}}"));
                                ok = false;
                                continue;
                            }
                        };
                        v.check_keys(obj, &format!("{ctx}.modes[{i}]"), &["k", "theta"]);
                        let k = obj
                            .get("k")
                            .and_then(|kv| serde_json::from_value::<[f64; 3]>(kv.clone()).ok());
                        let theta = obj.get("theta").and_then(Value::as_f64).unwrap_or(0.0);
                        match k {
                            Some(k) => match Mode::new(k, theta) {
                                Ok(_) => list.push((k, theta)),
                                Err(e) => {
                                    v.error(format!("{ctx}.modes[{i}]: {e}"));
                                    ok = false;
                                }
                            },
                            None => {
                                v.error(format!("{ctx}.modes[{i}].k: expected 3 numbers"));
                                ok = false;
                            }
                        }
                    }
                    if list.is_empty() && ok {
                        v.error(format!("{ctx}.modes: need at least one mode"));
                        ok = false;
                    }
                    ok.then_some(ModeSpec::Explicit(list))
                }
                Some(Value::Object(obj)) => {
                    v.check_keys(obj, &format!("{ctx}.modes"), &["shell"]);
                    match obj.get("shell").and_then(Value::as_object) {
                        Some(shell) => {
                            v.check_keys(shell, &format!("{ctx}.modes.shell"), &["k_mag", "count"]);
                            let k_mag = v.f64_field(shell, "parameters.modes.shell", "k_mag");
                            let count = v.usize_field(shell, "parameters.modes.shell", "count");
                            match (k_mag, count) {
                                (Some(k_mag), Some(count)) if k_mag > 0.0 && count >= 1 => {
                                    Some(ModeSpec::Shell { k_mag, count })
                                }
                                (Some(_), Some(_)) => {
                                    v.error(format!(
                                        "{ctx}.modes.shell: k_mag must be > 0 and count >= 1"
                                    ));
                                    None
                                }
                                _ => None,
                            }
                        }
                        None => {
                            v.error(format!("{ctx}.modes: expected a list or {{shell: ...}}"));
                            None
                        }
                    }
                }
                Some(other) => {
                    v.error(format!("{ctx}.modes: expected a list or object, got {other}"));
                    None
                }
            };
            let charges = match params.get("charges") {
                None => Some(Vec::new()),
                Some(value) => match serde_json::from_value::<Vec<MovingCharge>>(value.clone()) {
                    Ok(list) => Some(list),
                    Err(e) => {
                        v.error(format!("{ctx}.charges: {e}"));
                        None
                    }
                },
            };
            let initial = match params.get("initial").and_then(Value::as_str) {
                None | Some("zero") => InitialState::Zero,
                Some("static") => InitialState::Static,
                Some(other) => {
                    v.error(format!(
                        "{ctx}.initial: expected `zero` or `static`, got `{other}`"
                    ));
                    InitialState::Zero
                }
            };
            Some(Command::Modes {
                volume: volume?,
                dt: dt?,
                n_steps: n_steps?,
                modes: modes?,
                charges: charges?,
                initial,
            })
        }
        other => {
            v.error(format!(
                "command: unknown command `{other}` (expected one of coulomb, kernel-sweep, \
                 self-energy, zero-point, ratio, state-count, spectrum, eos-sweep, modes)"
            ));
            None
        }
    }
}

/// Validates a JSON configuration document, collecting every error rather
/// than stopping at the first, and fills in defaults.
pub fn validate(config_text: &str) -> std::result::Result<RunConfig, Vec<String>> {
    let value: Value = match serde_json::from_str(config_text) {
        Ok(v) => v,
        Err(e) => return Err(vec![format!("config is not valid JSON: {e}")]),
    };
    let mut v = Validator::new();
    let root = match value.as_object() {
        Some(o) => o,
        None => return Err(vec!["config root must be a JSON object".to_string()]),
    };
    v.check_keys(root, "config", &["command", "alpha", "seed", "output", "parameters"]);

    let command_name = match root.get("command") {
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => {
            v.error(format!("command: expected a string, got {other}"));
            None
        }
        None => {
            v.error("command missing");
            None
        }
    };

    let alpha = v.f64_default(root, "config", "alpha", 1.0 / DEFAULT_INVERSE_ALPHA);
    if let Err(e) = PlanckScale::new(alpha) {
        v.error(format!("alpha: {e}"));
    }

    let seed = match root.get("seed") {
        None => 0,
        Some(value) => match value.as_u64() {
            Some(s) => s,
            None => {
                v.error(format!("seed: expected an unsigned integer, got {value}"));
                0
            }
        },
    };

    let output = match root.get("output") {
        None => OutputSpec::default(),
        Some(Value::Object(obj)) => {
            v.check_keys(obj, "output", &["path", "format"]);
            let path = match obj.get("path") {
                None => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(other) => {
                    v.error(format!("output.path: expected a string, got {other}"));
                    None
                }
            };
            let format = match obj.get("format") {
                None => OutputFormat::Csv,
                Some(Value::String(s)) => match OutputFormat::parse(s) {
                    Some(f) => f,
                    None => {
                        v.error(format!("output.format: expected `csv` or `json`, got `{s}`"));
                        OutputFormat::Csv
                    }
                },
                Some(other) => {
                    v.error(format!("output.format: expected a string, got {other}"));
                    OutputFormat::Csv
                }
            };
            OutputSpec { path, format }
        }
        Some(other) => {
            v.error(format!("output: expected an object, got {other}"));
            OutputSpec::default()
        }
    };

    let empty = Map::new();
    let params = match root.get("parameters") {
        None => &empty,
        Some(Value::Object(obj)) => obj,
        Some(other) => {
            v.error(format!("parameters: expected an object, got {other}"));
            &empty
        }
    };

    let command = command_name.and_then(|name| parse_parameters(&mut v, &name, params));

    match command {
        Some(command) if v.errors.is_empty() => Ok(RunConfig {
            command,
            alpha,
            seed,
            output,
        }),
        _ => {
            if v.errors.is_empty() {
                v.error("configuration incomplete");
            }
            Err(v.errors)
        }
    }
}

// ---------------------------------------------------------------------------
// dispatch

/// Runs a validated configuration and produces its table.
pub fn run(config: &RunConfig) -> Result<SweepTable> {
    let scale = PlanckScale::new(config.alpha)?;
    let table = match &config.command {
        Command::Coulomb {
            charges,
            include_self,
        } => {
            let cfg = ChargeConfig::new(charges.clone())?;
            let energy = coulomb::config_energy(&cfg, *include_self)?;
            SweepTable::new(
                &["n_charges", "include_self", "energy"],
                vec![vec![
                    cfg.len() as f64,
                    if *include_self { 1.0 } else { 0.0 },
                    energy,
                ]],
                config,
            )
        }
        Command::KernelSweep {
            r,
            k_star,
            oracle,
            mc_samples,
        } => {
            let mut headers = vec!["r", "kernel"];
            if *oracle {
                headers.push("kernel_quadrature");
            }
            if mc_samples.is_some() {
                headers.push("mc_mean");
                headers.push("mc_std_error");
            }
            let mut rows = Vec::new();
            for (i, r_val) in r.values().into_iter().enumerate() {
                let closed = coulomb::kernel(*k_star * r_val)
                    .map(|k| k * *k_star)
                    .map_err(|e| row_error(i, e))?;
                let mut row = vec![r_val, closed];
                if *oracle {
                    row.push(
                        modesum::kernel_quadrature_oracle(r_val, *k_star)
                            .map_err(|e| row_error(i, e))?,
                    );
                }
                if let Some(n) = mc_samples {
                    let est = modesum::kernel_mc_oracle(
                        [0.0; 3],
                        [r_val, 0.0, 0.0],
                        *k_star,
                        *n,
                        config.seed.wrapping_add(i as u64),
                    )
                    .map_err(|e| row_error(i, e))?;
                    row.push(est.mean);
                    row.push(est.std_error);
                }
                rows.push(row);
            }
            SweepTable::new(&headers, rows, config)
        }
        Command::SelfEnergy { e } => SweepTable::new(
            &["e", "self_energy"],
            vec![vec![*e, coulomb::self_energy(*e, &scale)]],
            config,
        ),
        Command::ZeroPoint { v } => {
            let rows = v
                .values()
                .into_iter()
                .enumerate()
                .map(|(i, vol)| {
                    Ok(vec![vol, modesum::zero_point_energy(vol).map_err(|e| row_error(i, e))?])
                })
                .collect::<Result<Vec<_>>>()?;
            SweepTable::new(&["v", "zero_point_energy"], rows, config)
        }
        Command::Ratio { v } => {
            let rows = v
                .values()
                .into_iter()
                .enumerate()
                .map(|(i, vol)| {
                    Ok(vec![
                        vol,
                        modesum::zero_point_to_self_energy_ratio(vol, &scale)
                            .map_err(|e| row_error(i, e))?,
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            SweepTable::new(&["v", "ratio"], rows, config)
        }
        Command::StateCount { v } => {
            let rows = v
                .values()
                .into_iter()
                .enumerate()
                .map(|(i, vol)| {
                    Ok(vec![vol, modesum::state_count(vol).map_err(|e| row_error(i, e))?])
                })
                .collect::<Result<Vec<_>>>()?;
            SweepTable::new(&["v", "state_count"], rows, config)
        }
        Command::Spectrum { p, t, mu } => {
            let rows = p
                .values()
                .into_iter()
                .enumerate()
                .map(|(i, p_val)| {
                    Ok(vec![
                        p_val,
                        photongas::mean_energy(p_val, *t, *mu).map_err(|e| row_error(i, e))?,
                        photongas::occupancy(p_val, *t, *mu).map_err(|e| row_error(i, e))?,
                        photongas::bose_mean_energy(p_val, *t, *mu).map_err(|e| row_error(i, e))?,
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            SweepTable::new(
                &["p", "mean_energy", "occupancy", "bose_mean_energy"],
                rows,
                config,
            )
        }
        Command::EosSweep { t, mu, v, g_s } => {
            let rows = t
                .values()
                .into_iter()
                .enumerate()
                .map(|(i, t_val)| {
                    let point =
                        ThermoPoint::new(t_val, *mu, *v, *g_s).map_err(|e| row_error(i, e))?;
                    let sf = photongas::state_functions(&point).map_err(|e| row_error(i, e))?;
                    Ok(vec![
                        t_val,
                        *mu,
                        *v,
                        *g_s as f64,
                        sf.free_energy,
                        sf.internal_energy,
                        sf.particle_number,
                        sf.entropy,
                        sf.pressure,
                        photongas::classical_free_energy(&point),
                        photongas::classical_internal_energy(&point),
                        photongas::classical_particle_number(&point),
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            SweepTable::new(
                &[
                    "T", "mu", "V", "g_s", "F", "U", "N", "S", "P", "F_ref", "U_ref", "N_ref",
                ],
                rows,
                config,
            )
        }
        Command::Modes {
            volume,
            dt,
            n_steps,
            modes,
            charges,
            initial,
        } => {
            let mode_list: Vec<Mode> = match modes {
                ModeSpec::Explicit(list) => list
                    .iter()
                    .map(|(k, theta)| Mode::new(*k, *theta))
                    .collect::<Result<_>>()?,
                ModeSpec::Shell { k_mag, count } => {
                    fieldmodes::isotropic_shell(*k_mag, *count, config.seed)?
                }
            };
            let g = fieldmodes::coupling_constant(*volume);
            let initial_states: Vec<ModeState> = mode_list
                .iter()
                .map(|mode| match initial {
                    InitialState::Zero => ModeState::zero(g),
                    InitialState::Static => fieldmodes::static_solution(mode, g, charges),
                })
                .collect();
            let history =
                fieldmodes::integrate(&mode_list, &initial_states, charges, *dt, *n_steps)?;
            let headers: Vec<&str> = fieldmodes::ModeHistory::CSV_HEADERS.to_vec();
            SweepTable::new(&headers, history.csv_rows(), config)
        }
    };
    Ok(table)
}

fn row_error(row: usize, e: Error) -> Error {
    Error::Domain(format!("row {row}: {e}"))
}
