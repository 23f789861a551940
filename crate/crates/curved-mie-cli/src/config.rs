//! Run configuration: one JSON document, validated on load.
//!
//! Every setting has a built-in default and a CLI flag that overrides it,
//! so a config file is never required.  When one is given, unknown keys are
//! rejected with the offending key named, the well strength must be stated
//! exactly one way (`V0` or the `{epsilon, k}` well-depth pair), and all
//! physical values are validated before any command runs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use curved_mie::model::PhysicalParams;
use curved_mie::spectrum::SolvabilityMode;
use serde::Deserialize;

use crate::output::OutputFormat;

/// Which closed-form branch (or branches) a command evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeChoice {
    /// One specific branch.
    Single(SolvabilityMode),
    /// Both branches, published constants first.
    Both,
}

impl ModeChoice {
    /// The selected branches, in report order.
    pub fn modes(self) -> Vec<SolvabilityMode> {
        match self {
            ModeChoice::Single(mode) => vec![mode],
            ModeChoice::Both => SolvabilityMode::ALL.to_vec(),
        }
    }

    /// Parses `paper`, `paper_literal`, `rederived`, or `both`.
    pub fn parse(raw: &str) -> Result<Self, String> {
        let trimmed = raw.trim();
        if trimmed == "both" {
            return Ok(ModeChoice::Both);
        }
        trimmed
            .parse::<SolvabilityMode>()
            .map(ModeChoice::Single)
            .map_err(|_| {
                format!("unknown mode {trimmed:?} (expected paper, rederived, or both)")
            })
    }
}

/// One named entry of the molecule registry: enough to build the pair
/// potential in well-depth form (`V₀ = 2ε` at unit stiffness).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoleculeParams {
    /// Well depth `ε` (energy).
    pub epsilon_depth: f64,
    /// Interaction length `a`.
    pub a: f64,
    /// Reduced mass `μ` of the pair.
    pub reduced_mass: f64,
}

/// Fully resolved configuration with every default applied.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Physical parameters used when no molecule is named.
    pub params: PhysicalParams,
    /// Named molecule parameter sets for `potential --molecule`.
    pub molecules: BTreeMap<String, MoleculeParams>,
    /// Default mode when `--mode` is absent.
    pub mode: ModeChoice,
    /// Default interval count for sampling and oracle grids.
    pub grid_n: usize,
    /// Default level count for spectra and sweeps.
    pub k_states: usize,
    /// Analytic-vs-oracle relative disagreement above which a warning is
    /// printed.
    pub eig_tol: f64,
    /// Ceiling the arbitration winner must beat for `verify` to pass.
    pub verify_tol: f64,
    /// Default output format (commands fall back to their native one).
    pub format: Option<OutputFormat>,
    /// Default output path (stdout when absent).
    pub out_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: PhysicalParams::dimensionless_defaults(),
            molecules: BTreeMap::new(),
            mode: ModeChoice::Single(SolvabilityMode::Rederived),
            grid_n: 1024,
            k_states: 4,
            eig_tol: 1e-4,
            verify_tol: 1e-4,
            format: None,
            out_path: None,
        }
    }
}

/// Reads and resolves a config file; the error message names the path.
pub fn load(path: &Path) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("config {}: {e}", path.display()))
}

/// Parses and resolves a config document.
pub fn parse(text: &str) -> Result<RunConfig, String> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
    resolve(raw)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    params: Option<RawParams>,
    molecules: Option<BTreeMap<String, MoleculeParams>>,
    mode: Option<String>,
    grid: Option<RawGrid>,
    tolerances: Option<RawTolerances>,
    output: Option<RawOutput>,
    units: Option<RawUnits>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    hbar: Option<f64>,
    mu: Option<f64>,
    #[serde(rename = "R")]
    radius: Option<f64>,
    a: Option<f64>,
    #[serde(rename = "V0")]
    v0: Option<f64>,
    epsilon: Option<f64>,
    k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(rename = "N")]
    n: Option<usize>,
    k_states: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    eig_tol: Option<f64>,
    verify_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<String>,
    path: Option<String>,
}

/// Unit multipliers: values in the document are multiplied by these before
/// validation, so molecular data can be entered in laboratory units.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUnits {
    mass: Option<f64>,
    length: Option<f64>,
    energy: Option<f64>,
}

fn resolve(raw: RawConfig) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();

    let (mass, length, energy) = match raw.units {
        None => (1.0, 1.0, 1.0),
        Some(u) => {
            let mass = u.mass.unwrap_or(1.0);
            let length = u.length.unwrap_or(1.0);
            let energy = u.energy.unwrap_or(1.0);
            for (name, value) in [("mass", mass), ("length", length), ("energy", energy)] {
                if !(value > 0.0) || !value.is_finite() {
                    return Err(format!("units.{name} must be finite and > 0 (got {value})"));
                }
            }
            (mass, length, energy)
        }
    };

    if let Some(p) = raw.params {
        let hbar = p.hbar.unwrap_or(1.0);
        let mu = p.mu.unwrap_or(1.0) * mass;
        let radius = p.radius.unwrap_or(1.0) * length;
        let a = p.a.unwrap_or(1.0) * length;
        let v0 = match (p.v0, p.epsilon, p.k) {
            (Some(v0), None, None) => v0 * energy,
            (None, Some(eps), k) => 2.0 * eps * energy * k.unwrap_or(1.0),
            (Some(_), _, _) => {
                return Err(
                    "params sets both V0 and the {epsilon, k} well-depth pair; choose one"
                        .into(),
                )
            }
            (None, None, Some(_)) => {
                return Err("params.k needs params.epsilon (the {epsilon, k} form)".into())
            }
            (None, None, None) => {
                return Err("params must set the well strength: either V0 or {epsilon, k}".into())
            }
        };
        cfg.params = PhysicalParams::new(hbar, mu, radius, a, v0).map_err(|e| e.to_string())?;
    }

    if let Some(molecules) = raw.molecules {
        for (name, mol) in molecules {
            let scaled = MoleculeParams {
                epsilon_depth: mol.epsilon_depth * energy,
                a: mol.a * length,
                reduced_mass: mol.reduced_mass * mass,
            };
            for (field, value) in [
                ("epsilon_depth", scaled.epsilon_depth),
                ("a", scaled.a),
                ("reduced_mass", scaled.reduced_mass),
            ] {
                if !(value > 0.0) || !value.is_finite() {
                    return Err(format!(
                        "molecules.{name}.{field} must be finite and > 0 (got {value})"
                    ));
                }
            }
            cfg.molecules.insert(name, scaled);
        }
    }

    if let Some(mode) = raw.mode {
        cfg.mode = ModeChoice::parse(&mode)?;
    }

    if let Some(grid) = raw.grid {
        if let Some(n) = grid.n {
            if n < 8 {
                return Err(format!("grid.N must be at least 8 (got {n})"));
            }
            cfg.grid_n = n;
        }
        if let Some(k) = grid.k_states {
            if k == 0 {
                return Err("grid.k_states must be at least 1".into());
            }
            cfg.k_states = k;
        }
    }

    if let Some(tol) = raw.tolerances {
        for (name, value, slot) in [
            ("eig_tol", tol.eig_tol, &mut cfg.eig_tol),
            ("verify_tol", tol.verify_tol, &mut cfg.verify_tol),
        ] {
            if let Some(value) = value {
                if !(value > 0.0) || !value.is_finite() {
                    return Err(format!(
                        "tolerances.{name} must be finite and > 0 (got {value})"
                    ));
                }
                *slot = value;
            }
        }
    }

    if let Some(out) = raw.output {
        if let Some(format) = out.format {
            cfg.format = Some(match format.as_str() {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                other => return Err(format!("output.format must be csv or json (got {other:?})")),
            });
        }
        cfg.out_path = out.path.map(PathBuf::from);
    }

    Ok(cfg)
}
