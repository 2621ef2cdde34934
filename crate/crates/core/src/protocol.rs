//! Measurement protocols: circuit synthesis for `e^{−iHt}|+…+⟩` followed by
//! an X-string readout, and the sweep over a symmetric time grid.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ising::{anticommutation_violations, IsingHamiltonian, XStringObservable};
use crate::noise::{sample_parity, NoiseConfig};
use crate::spectral::PeakKind;
use crate::statevector::{Circuit, Gate, QuantumState};

/// Sampling times `t_n = n·τ` for `n = −N..=N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    tau: f64,
    big_n: usize,
}

impl TimeGrid {
    pub fn new(tau: f64, big_n: usize) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
        }
        if big_n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        Ok(Self { tau, big_n })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    /// Half-width `T = N·τ`.
    pub fn half_span(&self) -> f64 {
        self.big_n as f64 * self.tau
    }

    /// Number of samples, 2N + 1.
    pub fn len(&self) -> usize {
        2 * self.big_n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sample indices −N..=N.
    pub fn indices(&self) -> impl Iterator<Item = i64> + Clone {
        let n = self.big_n as i64;
        -n..=n
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.indices().map(move |n| n as f64 * self.tau)
    }

    /// Frequency resolution π/((2N+1)τ), half the Dirichlet main-lobe width.
    pub fn resolution(&self) -> f64 {
        std::f64::consts::PI / (self.len() as f64 * self.tau)
    }
}

/// Values A(t_n) on a [`TimeGrid`], stored from n = −N upward.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "series has {} values, grid needs {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at sample index `n` (−N..=N).
    pub fn value_at(&self, n: i64) -> Option<f64> {
        let k = n + self.grid.big_n as i64;
        usize::try_from(k).ok().and_then(|k| self.values.get(k).copied())
    }

    /// `(n, t_n, A(t_n))` triples in grid order.
    pub fn samples(&self) -> impl Iterator<Item = (i64, f64, f64)> + '_ {
        self.grid
            .indices()
            .zip(&self.values)
            .map(move |(n, &v)| (n, n as f64 * self.grid.tau, v))
    }
}

/// Everything needed to simulate one measured time series.
#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub hamiltonian: IsingHamiltonian,
    pub observable: XStringObservable,
    pub grid: TimeGrid,
    pub noise: NoiseConfig,
    pub mode: PeakKind,
}

impl ProtocolRun {
    /// Validates index consistency and, for level extraction, that the
    /// observable anticommutes with every Hamiltonian term.
    pub fn new(
        hamiltonian: IsingHamiltonian,
        observable: XStringObservable,
        grid: TimeGrid,
        noise: NoiseConfig,
        mode: PeakKind,
    ) -> Result<Self> {
        observable.validate_for(hamiltonian.num_spins())?;
        noise.validate()?;
        if mode == PeakKind::Level {
            if let Some(term) = anticommutation_violations(&hamiltonian, &observable).first() {
                return Err(Error::NotAnticommuting {
                    term: term.to_string(),
                });
            }
        }
        Ok(Self {
            hamiltonian,
            observable,
            grid,
            noise,
            mode,
        })
    }
}

/// Circuit whose Z-parity over the observable's qubits equals ⟨Â(t)⟩:
/// Hadamards on every qubit, then `CX(i→j)·RZ_j(2J t)·CX(i→j)` per coupling,
/// `RZ_i(2h t)` per field, and `RY(−π/2) = e^{iπσʸ/4}` on each observable
/// qubit so that σˣ is read out in the Z basis.
///
/// All terms commute, so the decomposition is exact; gates follow the
/// declaration order of the Hamiltonian.
pub fn build_circuit(h: &IsingHamiltonian, a: &XStringObservable, t: f64) -> Result<Circuit> {
    let n = h.num_spins();
    a.validate_for(n)?;
    let mut gates = Vec::with_capacity(n + 3 * h.couplings().len() + h.fields().len() + a.qubits().len());
    gates.extend((0..n).map(Gate::Hadamard));
    for c in h.couplings() {
        let cx = Gate::Cnot {
            control: c.i,
            target: c.j,
        };
        gates.extend([cx, Gate::Rz(c.j, 2.0 * c.strength * t), cx]);
    }
    for f in h.fields() {
        gates.push(Gate::Rz(f.site, 2.0 * f.strength * t));
    }
    gates.extend(a.qubits().iter().map(|&q| Gate::Ry(q, -FRAC_PI_2)));
    Circuit::from_gates(n, gates)
}

/// Simulates the protocol at every grid point and returns ⟨Â(t_n)⟩.
///
/// With `shots == 0` the parity is exact. Otherwise each grid point is
/// sampled from its own random stream keyed by `(seed, n)`, so the result is
/// independent of evaluation order.
pub fn measure_series(run: &ProtocolRun) -> Result<TimeSeries> {
    run.noise.validate()?;
    let qubits = run.observable.qubits();
    let indices: Vec<i64> = run.grid.indices().collect();
    let values = indices
        .par_iter()
        .map(|&n| {
            let t = n as f64 * run.grid.tau();
            let circuit = build_circuit(&run.hamiltonian, &run.observable, t)?;
            let mut state = QuantumState::zero(circuit.num_qubits())?;
            state.run(&circuit)?;
            if run.noise.shots == 0 {
                state.expectation_z_string(qubits)
            } else {
                sample_parity(&state.outcome_probabilities(), qubits, &run.noise, n as u64)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    TimeSeries::new(run.grid, values)
}
