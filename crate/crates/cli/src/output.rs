//! Artifact files. Every file is written to a temporary sibling and renamed
//! into place.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use qlevels_core::{EnergyHistogram, PeakSet, Spectrum, TimeSeries};

use crate::error::{CliError, Result};

pub const TIMESERIES_CSV: &str = "timeseries.csv";
pub const SPECTRUM_CSV: &str = "spectrum.csv";
pub const PEAKS_CSV: &str = "peaks.csv";
pub const LEVELS_CSV: &str = "levels.csv";
pub const ORACLE_CSV: &str = "oracle_spectrum.csv";
pub const SPECTRUM_SVG: &str = "spectrum.svg";
pub const COMPARE_REPORT: &str = "compare_report.txt";

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn csv_bytes<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| CliError::Config(format!("csv encoding: {e}"));
    w.write_record(header).map_err(ser)?;
    for row in rows {
        w.write_record(&row).map_err(ser)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Config(format!("csv encoding: {e}")))
}

pub fn write_timeseries(dir: &Path, series: &TimeSeries) -> Result<PathBuf> {
    let path = dir.join(TIMESERIES_CSV);
    let rows = series
        .samples()
        .map(|(n, t, v)| [n.to_string(), t.to_string(), v.to_string()]);
    write_atomic(&path, &csv_bytes(["n", "t", "a_value"], rows)?)?;
    Ok(path)
}

pub fn write_spectrum(dir: &Path, spectrum: &Spectrum) -> Result<PathBuf> {
    let path = dir.join(SPECTRUM_CSV);
    let rows = spectrum
        .omegas()
        .iter()
        .zip(spectrum.values())
        .map(|(w, v)| [w.to_string(), v.re.to_string(), v.im.to_string()]);
    write_atomic(&path, &csv_bytes(["omega", "re", "im"], rows)?)?;
    Ok(path)
}

pub fn write_peaks(dir: &Path, peaks: &PeakSet) -> Result<PathBuf> {
    let path = dir.join(PEAKS_CSV);
    let rows = peaks
        .peaks
        .iter()
        .map(|p| [p.omega.to_string(), p.height.to_string()]);
    write_atomic(&path, &csv_bytes(["omega", "height"], rows)?)?;
    Ok(path)
}

/// In transition mode the `energy` column holds the transition frequency.
pub fn write_levels(dir: &Path, levels: &[(f64, f64)]) -> Result<PathBuf> {
    let path = dir.join(LEVELS_CSV);
    let rows = levels.iter().map(|(e, h)| [e.to_string(), h.to_string()]);
    write_atomic(&path, &csv_bytes(["energy", "height"], rows)?)?;
    Ok(path)
}

pub fn write_oracle(dir: &Path, hist: &EnergyHistogram) -> Result<PathBuf> {
    let path = dir.join(ORACLE_CSV);
    let rows = hist
        .levels()
        .iter()
        .zip(hist.weights())
        .map(|(l, (_, w))| [l.energy.to_string(), l.degeneracy.to_string(), w.to_string()]);
    write_atomic(&path, &csv_bytes(["energy", "degeneracy", "weight"], rows)?)?;
    Ok(path)
}

/// Reads a CSV artifact, checking the header, and parses every field as f64.
pub fn read_table(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    if !path.is_file() {
        return Err(CliError::MissingArtifact(path.to_path_buf()));
    }
    let bad = |reason: String| CliError::BadArtifact {
        path: path.to_path_buf(),
        reason,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let found: Vec<String> = r
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if found != header {
        return Err(bad(format!("expected columns {header:?}, found {found:?}")));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            rec.iter()
                .map(|f| f.parse::<f64>().map_err(|e| bad(format!("{f:?}: {e}"))))
                .collect()
        })
        .collect()
}

/// Static line chart of Re A(ω) with the detected peaks marked.
pub fn render_svg(spectrum: &Spectrum, peaks: &PeakSet, title: &str) -> String {
    const W: f64 = 900.0;
    const H: f64 = 420.0;
    const PAD: f64 = 50.0;
    let xs = spectrum.omegas();
    let ys: Vec<f64> = spectrum.values().iter().map(|v| v.re).collect();
    let (x0, x1) = (xs[0], xs[xs.len() - 1].max(xs[0] + 1e-9));
    let y_max = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(1e-12);
    let y_min = ys.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let py = |y: f64| H - PAD - (y - y_min) / (y_max - y_min) * (H - 2.0 * PAD);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        W / 2.0,
        xml_escape(title)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{PAD}" y1="{y0:.2}" x2="{xe:.2}" y2="{y0:.2}" stroke="#999"/>"##,
        y0 = py(0.0),
        xe = W - PAD
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{yb:.2}" stroke="#999"/>"##,
        yb = H - PAD
    );
    for (x, label) in [(x0, x0), (0.5 * (x0 + x1), 0.5 * (x0 + x1)), (x1, x1)] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{:.2}</text>"#,
            px(x),
            H - PAD + 18.0,
            label
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">ω</text>"#,
        W / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{:.2}" font-family="sans-serif" font-size="12" transform="rotate(-90 14 {:.2})" text-anchor="middle">Re A(ω)</text>"#,
        H / 2.0,
        H / 2.0
    );
    let points: Vec<String> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        svg,
        r##"<polyline fill="none" stroke="#1f4e9a" stroke-width="1" points="{}"/>"##,
        points.join(" ")
    );
    for p in &peaks.peaks {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
            px(p.omega),
            py(p.height)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{:.2}</text>"#,
            px(p.omega),
            py(p.height) - 8.0,
            p.omega
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
