//! The three batch operations: simulate and read peaks (`run`), enumerate
//! the exact spectrum (`oracle`), and check one against the other
//! (`compare`).

use std::fmt::Write as _;
use std::path::PathBuf;

use qlevels_core::{
    dft, find_peaks, measure_series, peaks_to_levels, spectrum_with_cap, transition_spectrum,
    DftOptions, EnergyHistogram, PeakKind, PeakSet, ProtocolRun, Spectrum, TimeSeries,
};

use crate::config::{mode_name, ScenarioConfig};
use crate::error::Result;
use crate::output::{self, ORACLE_CSV};

pub struct RunOutcome {
    pub series: TimeSeries,
    pub spectrum: Spectrum,
    pub peaks: PeakSet,
    /// `(E, height)` in level mode, `(ω, height)` in transition mode.
    pub levels: Vec<(f64, f64)>,
    pub files: Vec<PathBuf>,
}

/// Simulates the protocol over the grid, transforms, detects peaks and
/// writes the run artifacts.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunOutcome> {
    let run = ProtocolRun::new(
        cfg.hamiltonian.clone(),
        cfg.observable.clone(),
        cfg.grid,
        cfg.noise,
        cfg.mode,
    )?;
    let series = measure_series(&run)?;
    let sp = &cfg.spectral;
    let spectrum = dft(
        &series,
        -sp.omega_max,
        sp.omega_max,
        sp.omega_step,
        DftOptions {
            window: sp.window,
            normalize: sp.normalize,
        },
    )?;
    let peaks = find_peaks(&spectrum, sp.threshold_fraction, sp.min_separation, cfg.mode)?;
    let levels = peaks_to_levels(&peaks, cfg.mode);

    let dir = &cfg.output;
    let mut files = vec![
        output::write_timeseries(dir, &series)?,
        output::write_spectrum(dir, &spectrum)?,
        output::write_peaks(dir, &peaks)?,
        output::write_levels(dir, &levels)?,
    ];
    if sp.plot {
        let path = dir.join(output::SPECTRUM_SVG);
        let title = format!("{}: Re A(ω), observable {}", cfg.name, cfg.observable);
        output::write_atomic(&path, output::render_svg(&spectrum, &peaks, &title).as_bytes())?;
        files.push(path);
    }
    Ok(RunOutcome {
        series,
        spectrum,
        peaks,
        levels,
        files,
    })
}

pub fn run_summary(cfg: &ScenarioConfig, outcome: &RunOutcome) -> String {
    let mut s = String::new();
    let terms: Vec<String> = cfg.hamiltonian.terms().map(|t| t.to_string()).collect();
    let _ = writeln!(s, "scenario    {}", cfg.name);
    let _ = writeln!(s, "H           {}", terms.join(" + "));
    let _ = writeln!(s, "observable  {}", cfg.observable);
    let _ = writeln!(
        s,
        "grid        tau = {:.6}, N = {} ({} points, T = {:.4})",
        cfg.grid.tau(),
        cfg.grid.big_n(),
        cfg.grid.len(),
        cfg.grid.half_span()
    );
    let _ = writeln!(
        s,
        "noise       shots = {}, readout flip = {}",
        cfg.noise.shots, cfg.noise.readout_flip_prob
    );
    let _ = writeln!(
        s,
        "spectral    step = {}, |omega| <= {:.4}, threshold = {}, min separation = {:.4}, window = {:?}",
        cfg.spectral.omega_step,
        cfg.spectral.omega_max,
        cfg.spectral.threshold_fraction,
        cfg.spectral.min_separation,
        cfg.spectral.window
    );
    let value_label = match cfg.mode {
        PeakKind::Level => "E = omega/2",
        PeakKind::Transition => "omega_ij",
    };
    let _ = writeln!(s, "mode        {}", mode_name(cfg.mode));
    let _ = writeln!(s);
    let _ = writeln!(s, "{:>12} {:>14} {:>14}", "omega", "Re A(omega)", value_label);
    for p in &outcome.peaks.peaks {
        let v = match cfg.mode {
            PeakKind::Level => p.omega / 2.0,
            PeakKind::Transition => p.omega,
        };
        let _ = writeln!(s, "{:>12.4} {:>14.4} {:>14.4}", p.omega, p.height, v);
    }
    let _ = writeln!(s);
    for f in &outcome.files {
        let _ = writeln!(s, "wrote {}", f.display());
    }
    s
}

pub struct OracleOutcome {
    pub histogram: EnergyHistogram,
    pub path: PathBuf,
}

/// Exhaustive enumeration of the Hamiltonian, written to
/// `oracle_spectrum.csv`.
pub fn run_oracle(cfg: &ScenarioConfig) -> Result<OracleOutcome> {
    let histogram = spectrum_with_cap(&cfg.hamiltonian, cfg.spin_cap)?;
    let path = output::write_oracle(&cfg.output, &histogram)?;
    Ok(OracleOutcome { histogram, path })
}

pub fn oracle_summary(outcome: &OracleOutcome) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>14} {:>12} {:>12}", "energy", "degeneracy", "weight");
    for (l, (_, w)) in outcome.histogram.levels().iter().zip(outcome.histogram.weights()) {
        let _ = writeln!(s, "{:>14.6} {:>12} {:>12.6}", l.energy, l.degeneracy, w);
    }
    let _ = writeln!(
        s,
        "symmetric under E -> -E: {}",
        outcome.histogram.is_symmetric(1e-9)
    );
    let _ = writeln!(s, "wrote {}", outcome.path.display());
    s
}

/// A detected value paired with the reference line it falls on.
#[derive(Debug, Clone, PartialEq)]
pub struct Match {
    pub detected: f64,
    pub reference: f64,
    /// Peak height divided by the window sum, comparable to `weight`.
    pub relative_height: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub tolerance: f64,
    pub matched: Vec<Match>,
    /// Reference `(value, weight)` lines with weight ≥ threshold not detected.
    pub missed: Vec<(f64, f64)>,
    /// Detected `(value, height)` pairs matching no reference line.
    pub spurious: Vec<(f64, f64)>,
    /// Disagreements between the published level set and the exact
    /// spectrum. Informational.
    pub published_discrepancies: Vec<String>,
    /// Failures of an explicitly asserted level set.
    pub assertion_failures: Vec<String>,
    pub text: String,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.missed.is_empty() && self.spurious.is_empty() && self.assertion_failures.is_empty()
    }
}

/// Matches the detected levels of a previous `run` against the `oracle`
/// artifacts in the same output directory and writes `compare_report.txt`.
///
/// In level mode the reference lines are the oracle energies, matched within
/// half the frequency tolerance. In transition mode they are the exact
/// frequencies E_s − E_{s⊕S} of the probe, matched within the full
/// tolerance.
pub fn compare(cfg: &ScenarioConfig) -> Result<CompareReport> {
    let detected: Vec<(f64, f64)> =
        output::read_table(&cfg.output.join(output::LEVELS_CSV), &["energy", "height"])?
            .into_iter()
            .map(|r| (r[0], r[1]))
            .collect();
    let oracle: Vec<(f64, f64)> =
        output::read_table(&cfg.output.join(ORACLE_CSV), &["energy", "degeneracy", "weight"])?
            .into_iter()
            .map(|r| (r[0], r[2]))
            .collect();

    let omega_tol = cfg.omega_tolerance();
    let (references, tol, unit) = match cfg.mode {
        PeakKind::Level => (oracle.clone(), omega_tol / 2.0, "E"),
        PeakKind::Transition => (
            transition_spectrum(&cfg.hamiltonian, &cfg.observable, cfg.spin_cap)?,
            omega_tol,
            "omega",
        ),
    };
    let height_scale = if cfg.spectral.normalize {
        1.0
    } else {
        cfg.spectral.window.total_weight(cfg.grid.big_n())
    };

    let mut matched = Vec::new();
    let mut spurious = Vec::new();
    let mut used = vec![false; references.len()];
    for &(value, height) in &detected {
        let nearest = references
            .iter()
            .enumerate()
            .filter(|(k, (r, _))| !used[*k] && (r - value).abs() <= tol)
            .min_by(|a, b| (a.1 .0 - value).abs().total_cmp(&(b.1 .0 - value).abs()));
        match nearest {
            Some((k, &(r, w))) => {
                used[k] = true;
                matched.push(Match {
                    detected: value,
                    reference: r,
                    relative_height: height / height_scale,
                    weight: w,
                });
            }
            None => spurious.push((value, height)),
        }
    }
    let missed: Vec<(f64, f64)> = references
        .iter()
        .zip(&used)
        .filter(|((_, w), &u)| !u && *w >= cfg.spectral.threshold_fraction)
        .map(|(&r, _)| r)
        .collect();

    let energy_tol = omega_tol / 2.0;
    let published_discrepancies = match (cfg.preset, cfg.mode) {
        (Some(p), PeakKind::Level) => set_discrepancies(
            p.published_levels(),
            &oracle,
            energy_tol,
            cfg.spectral.threshold_fraction,
        ),
        _ => Vec::new(),
    };

    let assertion_failures = match &cfg.assert_levels {
        Some(claimed) => {
            let mut f = Vec::new();
            for &c in claimed {
                if !detected.iter().any(|(d, _)| (d - c).abs() <= tol) {
                    f.push(format!("asserted {unit} = {c} not detected"));
                }
            }
            for &(d, _) in &detected {
                if !claimed.iter().any(|c| (d - c).abs() <= tol) {
                    f.push(format!("detected {unit} = {d} not in asserted set"));
                }
            }
            f
        }
        None => Vec::new(),
    };

    let mut report = CompareReport {
        tolerance: tol,
        matched,
        missed,
        spurious,
        published_discrepancies,
        assertion_failures,
        text: String::new(),
    };
    report.text = render_report(cfg, &report, unit, &oracle);
    output::write_atomic(&cfg.output.join(output::COMPARE_REPORT), report.text.as_bytes())?;
    Ok(report)
}

/// Claimed levels absent from the exact spectrum, and exact levels with
/// weight ≥ threshold absent from the claim.
fn set_discrepancies(claimed: &[f64], oracle: &[(f64, f64)], tol: f64, threshold: f64) -> Vec<String> {
    let mut out = Vec::new();
    for &c in claimed {
        if !oracle.iter().any(|(e, _)| (e - c).abs() <= tol) {
            out.push(format!("published level E = {c} is absent from the exact spectrum"));
        }
    }
    for &(e, w) in oracle {
        if w >= threshold && !claimed.iter().any(|c| (e - c).abs() <= tol) {
            out.push(format!(
                "exact level E = {e} (weight {w}) is absent from the published set"
            ));
        }
    }
    out
}

fn render_report(cfg: &ScenarioConfig, r: &CompareReport, unit: &str, oracle: &[(f64, f64)]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "compare {} (mode {}, tolerance ±{:.4} in {unit})",
        cfg.name,
        mode_name(cfg.mode),
        r.tolerance
    );
    let oracle_set: Vec<String> = oracle.iter().map(|(e, w)| format!("{e} ({w})")).collect();
    let _ = writeln!(s, "exact spectrum (E (weight)): {}", oracle_set.join(", "));
    let _ = writeln!(s);
    let _ = writeln!(s, "matched ({}):", r.matched.len());
    if !r.matched.is_empty() {
        let _ = writeln!(
            s,
            "  {:>12} {:>12} {:>14} {:>12}",
            "detected", "reference", "height/sum(w)", "weight"
        );
    }
    for m in &r.matched {
        let _ = writeln!(
            s,
            "  {:>12.4} {:>12.4} {:>14.4} {:>12.4}",
            m.detected, m.reference, m.relative_height, m.weight
        );
    }
    let _ = writeln!(s, "missed ({}):", r.missed.len());
    for (v, w) in &r.missed {
        let _ = writeln!(s, "  {unit} = {v:.4} (weight {w:.4})");
    }
    let _ = writeln!(s, "spurious ({}):", r.spurious.len());
    for (v, h) in &r.spurious {
        let _ = writeln!(s, "  {unit} = {v:.4} (height {h:.4})");
    }
    if let Some(p) = cfg.preset.filter(|_| cfg.mode == PeakKind::Level) {
        let claim: Vec<String> = p.published_levels().iter().map(|e| e.to_string()).collect();
        let _ = writeln!(s);
        let _ = writeln!(s, "published level set: {{{}}}", claim.join(", "));
        if r.published_discrepancies.is_empty() {
            let _ = writeln!(s, "  agrees with the exact spectrum");
        } else {
            for d in &r.published_discrepancies {
                let _ = writeln!(s, "  DISCREPANCY: {d}");
            }
            let _ = writeln!(s, "  the exact spectrum is taken as ground truth");
        }
    }
    if let Some(claimed) = &cfg.assert_levels {
        let c: Vec<String> = claimed.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(s);
        let _ = writeln!(s, "asserted set: {{{}}}", c.join(", "));
        if r.assertion_failures.is_empty() {
            let _ = writeln!(s, "  reproduced");
        }
        for f in &r.assertion_failures {
            let _ = writeln!(s, "  DISCREPANCY: {f}");
        }
    }
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "result: {} ({} matched, {} missed, {} spurious{})",
        if r.passed() { "PASS" } else { "FAIL" },
        r.matched.len(),
        r.missed.len(),
        r.spurious.len(),
        if r.assertion_failures.is_empty() {
            String::new()
        } else {
            format!(", {} assertion failures", r.assertion_failures.len())
        }
    );
    s
}
