mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use qlevels_core::spectral::{default_min_separation, default_omega_max};
use qlevels_core::{
    characteristic_series_from_histogram, dft, find_peaks, peaks_to_levels, spectrum, DftOptions,
    PeakKind, TimeGrid, TimeSeries,
};

fn paper_grid() -> TimeGrid {
    TimeGrid::new(PI / 12.0, 96).unwrap()
}

fn arb_series(grid: TimeGrid) -> impl Strategy<Value = TimeSeries> {
    prop::collection::vec(-1.0..1.0f64, grid.len())
        .prop_map(move |v| TimeSeries::new(grid, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dft_is_linear(
        x in arb_series(TimeGrid::new(0.3, 20).unwrap()),
        y in arb_series(TimeGrid::new(0.3, 20).unwrap()),
        a in -3.0..3.0f64,
        b in -3.0..3.0f64,
    ) {
        let grid = x.grid();
        let combo = TimeSeries::new(
            grid,
            x.values().iter().zip(y.values()).map(|(p, q)| a * p + b * q).collect(),
        ).unwrap();
        let opts = DftOptions::default();
        let fx = dft(&x, -5.0, 5.0, 0.05, opts).unwrap();
        let fy = dft(&y, -5.0, 5.0, 0.05, opts).unwrap();
        let fc = dft(&combo, -5.0, 5.0, 0.05, opts).unwrap();
        for k in 0..fc.len() {
            let expect = fx.values()[k] * a + fy.values()[k] * b;
            prop_assert!((fc.values()[k] - expect).norm() < 1e-9);
        }
    }

    #[test]
    fn dft_of_real_series_is_hermitian(x in arb_series(TimeGrid::new(0.2, 30).unwrap())) {
        let s = dft(&x, -4.0, 4.0, 0.01, DftOptions::default()).unwrap();
        let m = s.len();
        for k in 0..m {
            prop_assert_eq!(s.omegas()[k], -s.omegas()[m - 1 - k]);
            prop_assert!((s.values()[k] - s.values()[m - 1 - k].conj()).norm() < 1e-9);
        }
    }

    #[test]
    fn peak_locations_invariant_under_positive_scaling(
        x in arb_series(TimeGrid::new(0.25, 40).unwrap()),
        c in 0.01..100.0f64,
    ) {
        let s = dft(&x, -6.0, 6.0, 0.01, DftOptions::default()).unwrap();
        let p = find_peaks(&s, 0.1, 0.04, PeakKind::Transition).unwrap();
        let q = find_peaks(&s.scaled(c), 0.1, 0.04, PeakKind::Transition).unwrap();
        prop_assert_eq!(p.omegas(), q.omegas());
    }

    /// Two cosine lines at least 4π/((2N+1)τ) apart are both recovered to
    /// within one grid step plus half a main-lobe width.
    #[test]
    fn resolution_law(
        w1 in 1.0..5.0f64,
        gap_factor in 1.0..4.0f64,
        a1 in 0.5..1.0f64,
        a2 in 0.5..1.0f64,
    ) {
        let grid = paper_grid();
        let step = 0.01;
        let sep = gap_factor * 4.0 * PI / (grid.len() as f64 * grid.tau());
        let w2 = w1 + sep;
        let x = TimeSeries::new(
            grid,
            grid.times().map(|t| a1 * (w1 * t).cos() + a2 * (w2 * t).cos()).collect(),
        ).unwrap();
        let s = dft(&x, 0.0, default_omega_max(&grid, step), step, DftOptions::default()).unwrap();
        let peaks = find_peaks(&s, 0.1, 4.0 * step, PeakKind::Transition).unwrap();
        let tol = step + grid.resolution();
        for w in [w1, w2] {
            prop_assert!(
                peaks.omegas().iter().any(|p| (p - w).abs() <= tol),
                "line {} not found in {:?}", w, peaks.omegas()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Levels read from the exact series are oracle energies, and every
    /// oracle energy with weight ≥ threshold is found.
    #[test]
    fn oracle_closure((h, _a) in arb_anticommuting_pair(5)) {
        let hist = spectrum(&h).unwrap();
        let e_max = hist.levels().iter().map(|l| l.energy.abs()).fold(0.0, f64::max);
        // keep every line 2E below Nyquist with margin
        let tau = PI / (2.0 * e_max + 3.0);
        let grid = TimeGrid::new(tau, 96).unwrap();
        let step = 0.01;
        let series = characteristic_series_from_histogram(&hist, grid).unwrap();
        let omega_max = default_omega_max(&grid, step);
        let s = dft(&series, -omega_max, omega_max, step, DftOptions::default()).unwrap();
        let threshold = 0.1;
        let peaks = find_peaks(&s, threshold, default_min_separation(&grid, step), PeakKind::Level).unwrap();
        let levels = peaks_to_levels(&peaks, PeakKind::Level);
        let tol = (step + grid.resolution()) / 2.0;
        for (e, _) in &levels {
            prop_assert!(
                hist.levels().iter().any(|l| (l.energy - e).abs() <= tol),
                "spurious level {} vs {:?}", e, hist.levels()
            );
        }
        for (e, w) in hist.weights() {
            if w >= threshold {
                prop_assert!(
                    levels.iter().any(|(d, _)| (d - e).abs() <= tol),
                    "missed level {} (weight {}) in {:?}", e, w, levels
                );
            }
        }
    }
}

#[test]
fn paper_presets_give_clean_level_sets() {
    for preset in qlevels_core::Preset::ALL {
        let grid = preset.grid();
        let hist = spectrum(&preset.hamiltonian()).unwrap();
        let series = characteristic_series_from_histogram(&hist, grid).unwrap();
        let wmax = default_omega_max(&grid, 0.01);
        let s = dft(&series, -wmax, wmax, 0.01, DftOptions::default()).unwrap();
        let peaks = find_peaks(&s, 0.1, default_min_separation(&grid, 0.01), PeakKind::Level).unwrap();
        let levels: Vec<f64> = peaks_to_levels(&peaks, PeakKind::Level).iter().map(|l| l.0).collect();
        let oracle: Vec<f64> = hist.levels().iter().map(|l| l.energy).collect();
        assert_eq!(levels.len(), oracle.len(), "{}: {levels:?}", preset.name());
        for (d, e) in levels.iter().zip(&oracle) {
            assert!((d - e).abs() < 0.03, "{}: {d} vs {e}", preset.name());
        }
    }
}

#[test]
fn hann_window_keeps_locations() {
    let grid = paper_grid();
    let x = TimeSeries::new(grid, grid.times().map(|t| 0.5 + 0.5 * (4.0 * t).cos()).collect()).unwrap();
    let opts = DftOptions { window: qlevels_core::Window::Hann, normalize: false };
    let s = dft(&x, -11.99, 11.99, 0.01, opts).unwrap();
    let peaks = find_peaks(&s, 0.1, 0.04, PeakKind::Level).unwrap();
    assert_eq!(peaks.omegas(), vec![-4.0, 0.0, 4.0]);
}
