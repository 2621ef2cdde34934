//! Scenario configuration.
//!
//! A scenario file is TOML. Only the model is required; everything else
//! falls back to the preset's values or to the built-in defaults.
//!
//! ```toml
//! name = "chain3"            # used for the default output directory
//! mode = "level"             # or "transition"
//! output = "out/chain3"
//!
//! [model]
//! preset = "chain3"          # or give num_spins / couplings / fields
//! # num_spins = 3
//! # couplings = [[0, 1, 1.0], [1, 2, 1.0]]   # (i, j, J_ij), each pair once
//! # fields = [[0, 0.5]]                      # (i, h_i)
//! observable = [1]           # qubits of the X-string
//!
//! [grid]
//! tau = 0.2617993877991494
//! big_n = 96
//!
//! [noise]
//! shots = 0                  # 0 = exact expectation values
//! readout_flip = 0.0
//! seed = 1                   # required when shots > 0
//!
//! [spectral]
//! omega_step = 0.01
//! omega_max = 11.99          # default: π/τ − omega_step
//! threshold_fraction = 0.1
//! min_separation = 0.373     # default: max(4·omega_step, 6π/((2N+1)τ))
//! window = "none"            # or "hann"
//! normalize = false
//! plot = true
//!
//! [oracle]
//! spin_cap = 28
//!
//! [compare]
//! assert_levels = [0, -3, 3, -7, 7]
//! ```
//!
//! Couplings are per unordered pair: a Hamiltonian written as
//! ½ Σ_{i≠j} J_ij Z_i Z_j with symmetric J maps to one entry (i, j, J_ij).

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use qlevels_core::spectral::{
    default_min_separation, default_omega_max, DEFAULT_OMEGA_STEP, DEFAULT_THRESHOLD_FRACTION,
};
use qlevels_core::{
    Coupling, Field, IsingHamiltonian, NoiseConfig, PeakKind, Preset, TimeGrid, Window,
    XStringObservable,
};

use crate::error::{CliError, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    mode: Option<String>,
    output: Option<PathBuf>,
    model: Option<RawModel>,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    noise: RawNoise,
    #[serde(default)]
    spectral: RawSpectral,
    #[serde(default)]
    oracle: RawOracle,
    #[serde(default)]
    compare: RawCompare,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    preset: Option<String>,
    num_spins: Option<usize>,
    couplings: Option<Vec<(usize, usize, f64)>>,
    fields: Option<Vec<(usize, f64)>>,
    observable: Option<Vec<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    tau: Option<f64>,
    big_n: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    shots: Option<u32>,
    readout_flip: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectral {
    omega_step: Option<f64>,
    omega_max: Option<f64>,
    threshold_fraction: Option<f64>,
    min_separation: Option<f64>,
    window: Option<String>,
    normalize: Option<bool>,
    plot: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOracle {
    spin_cap: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCompare {
    assert_levels: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralConfig {
    pub omega_step: f64,
    pub omega_max: f64,
    pub threshold_fraction: f64,
    pub min_separation: f64,
    pub window: Window,
    pub normalize: bool,
    pub plot: bool,
}

/// A fully resolved scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub name: String,
    pub preset: Option<Preset>,
    pub hamiltonian: IsingHamiltonian,
    pub observable: XStringObservable,
    pub grid: TimeGrid,
    pub noise: NoiseConfig,
    pub spectral: SpectralConfig,
    pub mode: PeakKind,
    pub output: PathBuf,
    pub spin_cap: usize,
    pub assert_levels: Option<Vec<f64>>,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub shots: Option<u32>,
    pub readout_flip: Option<f64>,
    pub mode: Option<PeakKind>,
}

impl ScenarioConfig {
    /// Loads `source`, which is either a path to a TOML file or a preset
    /// name.
    pub fn load(source: &str, overrides: &Overrides) -> Result<Self> {
        let path = Path::new(source);
        if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Self::from_toml(&text, overrides)
        } else if let Some(preset) = Preset::from_name(source) {
            Self::from_preset(preset, overrides)
        } else {
            Err(CliError::Config(format!(
                "{source} is neither a config file nor a preset name"
            )))
        }
    }

    pub fn from_preset(preset: Preset, overrides: &Overrides) -> Result<Self> {
        let raw = RawConfig {
            model: Some(RawModel {
                preset: Some(preset.name().to_string()),
                ..Default::default()
            }),
            ..Default::default()
        };
        resolve(raw, overrides)
    }

    pub fn from_toml(text: &str, overrides: &Overrides) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        resolve(raw, overrides)
    }

    /// Frequency tolerance for matching a detected peak to a reference line:
    /// one grid step plus π/((2N+1)τ).
    pub fn omega_tolerance(&self) -> f64 {
        self.spectral.omega_step + self.grid.resolution()
    }
}

pub fn parse_mode(s: &str) -> Result<PeakKind> {
    match s {
        "level" => Ok(PeakKind::Level),
        "transition" => Ok(PeakKind::Transition),
        other => Err(CliError::Config(format!(
            "mode must be \"level\" or \"transition\", got {other:?}"
        ))),
    }
}

pub fn mode_name(mode: PeakKind) -> &'static str {
    match mode {
        PeakKind::Level => "level",
        PeakKind::Transition => "transition",
    }
}

fn parse_window(s: &str) -> Result<Window> {
    match s {
        "none" => Ok(Window::None),
        "hann" => Ok(Window::Hann),
        other => Err(CliError::Config(format!(
            "window must be \"none\" or \"hann\", got {other:?}"
        ))),
    }
}

fn resolve(raw: RawConfig, ov: &Overrides) -> Result<ScenarioConfig> {
    let model = raw
        .model
        .ok_or_else(|| CliError::Config("missing [model] section".into()))?;

    let preset = match &model.preset {
        Some(name) => Some(
            Preset::from_name(name)
                .ok_or_else(|| CliError::Config(format!("unknown preset {name:?}")))?,
        ),
        None => None,
    };

    let hamiltonian = match (preset, model.num_spins) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config(
                "give either model.preset or model.num_spins, not both".into(),
            ))
        }
        (Some(p), None) => {
            if model.couplings.is_some() || model.fields.is_some() {
                return Err(CliError::Config(
                    "model.couplings/fields cannot be combined with a preset".into(),
                ));
            }
            p.hamiltonian()
        }
        (None, Some(n)) => {
            let couplings = model
                .couplings
                .unwrap_or_default()
                .into_iter()
                .map(|(i, j, s)| Coupling::new(i, j, s))
                .collect();
            let fields = model
                .fields
                .unwrap_or_default()
                .into_iter()
                .map(|(i, h)| Field::new(i, h))
                .collect();
            IsingHamiltonian::new(n, couplings, fields)
                .map_err(|e| CliError::Config(e.to_string()))?
        }
        (None, None) => {
            return Err(CliError::Config(
                "model needs a preset or num_spins".into(),
            ))
        }
    };

    let observable = match (model.observable, preset) {
        (Some(q), _) => XStringObservable::new(q).map_err(|e| CliError::Config(e.to_string()))?,
        (None, Some(p)) => p.observable(),
        (None, None) => {
            return Err(CliError::Config(
                "model.observable is required for an explicit model".into(),
            ))
        }
    };
    observable
        .validate_for(hamiltonian.num_spins())
        .map_err(|e| CliError::Config(e.to_string()))?;

    let default_grid = preset
        .map(Preset::grid)
        .unwrap_or_else(|| TimeGrid::new(PI / 12.0, 96).expect("valid"));
    let grid = TimeGrid::new(
        raw.grid.tau.unwrap_or(default_grid.tau()),
        raw.grid.big_n.unwrap_or(default_grid.big_n()),
    )
    .map_err(|e| CliError::Config(e.to_string()))?;

    let noise = NoiseConfig {
        shots: ov.shots.or(raw.noise.shots).unwrap_or(0),
        readout_flip_prob: ov.readout_flip.or(raw.noise.readout_flip).unwrap_or(0.0),
        seed: ov.seed.or(raw.noise.seed),
    };
    noise
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let s = raw.spectral;
    let omega_step = s.omega_step.unwrap_or(DEFAULT_OMEGA_STEP);
    if !(omega_step > 0.0) {
        return Err(CliError::Config("spectral.omega_step must be positive".into()));
    }
    let nyquist_max = default_omega_max(&grid, omega_step);
    let omega_max = s.omega_max.map_or(nyquist_max, |m| m.min(nyquist_max));
    if !(omega_max > 0.0) {
        return Err(CliError::Config("spectral.omega_max must be positive".into()));
    }
    let spectral = SpectralConfig {
        omega_step,
        omega_max,
        threshold_fraction: s.threshold_fraction.unwrap_or(DEFAULT_THRESHOLD_FRACTION),
        min_separation: s
            .min_separation
            .unwrap_or_else(|| default_min_separation(&grid, omega_step)),
        window: s.window.as_deref().map(parse_window).transpose()?.unwrap_or_default(),
        normalize: s.normalize.unwrap_or(false),
        plot: s.plot.unwrap_or(true),
    };
    if !(spectral.threshold_fraction > 0.0 && spectral.threshold_fraction < 1.0) {
        return Err(CliError::Config("spectral.threshold_fraction must be in (0, 1)".into()));
    }

    let mode = match (ov.mode, raw.mode.as_deref()) {
        (Some(m), _) => m,
        (None, Some(s)) => parse_mode(s)?,
        (None, None) => PeakKind::Level,
    };

    let name = raw
        .name
        .or_else(|| preset.map(|p| p.name().to_string()))
        .unwrap_or_else(|| "custom".to_string());
    let output = ov
        .out
        .clone()
        .or(raw.output)
        .unwrap_or_else(|| PathBuf::from("out").join(&name));

    Ok(ScenarioConfig {
        name,
        preset,
        hamiltonian,
        observable,
        grid,
        noise,
        spectral,
        mode,
        output,
        spin_cap: raw.oracle.spin_cap.unwrap_or(qlevels_core::ising::DEFAULT_SPIN_CAP),
        assert_levels: raw.compare.assert_levels,
    })
}
