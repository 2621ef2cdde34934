//! Dense state-vector simulation for the small gate set used by the
//! measurement protocols.
//!
//! Basis labels are little-endian: bit `k` of the amplitude index is the
//! state of qubit `k`. Global phase is not tracked; only probabilities and
//! expectation values are meaningful.
//!
//! Rotation conventions:
//!
//!   RZ(φ) = exp(−iφσᶻ/2),   RY(θ) = exp(−iθσʸ/2)

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register the simulator will allocate (2^26 amplitudes, 1 GiB).
pub const MAX_QUBITS: usize = 26;

/// A gate from the protocol gate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Hadamard(usize),
    /// Z rotation by the given angle in radians.
    Rz(usize, f64),
    /// Y rotation by the given angle in radians.
    Ry(usize, f64),
    PauliX(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    /// Qubits touched by the gate.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Hadamard(q) | Gate::Rz(q, _) | Gate::Ry(q, _) | Gate::PauliX(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rz(q, phi) => Gate::Rz(q, -phi),
            Gate::Ry(q, theta) => Gate::Ry(q, -theta),
            g => g,
        }
    }

    /// Checks the gate against a register of `num_qubits` qubits.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::InvalidGate {
                    gate: self.to_string(),
                    reason: format!("qubit {q} out of range for {num_qubits} qubits"),
                });
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::InvalidGate {
                    gate: self.to_string(),
                    reason: "control and target coincide".into(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Hadamard(q) => write!(f, "H({q})"),
            Gate::Rz(q, phi) => write!(f, "RZ({q}, {phi})"),
            Gate::Ry(q, theta) => write!(f, "RY({q}, {theta})"),
            Gate::PauliX(q) => write!(f, "X({q})"),
            Gate::Cnot { control, target } => write!(f, "CX({control}->{target})"),
        }
    }
}

/// An ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit from a gate list, validating every gate.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(num_qubits)?;
        }
        Ok(Self { num_qubits, gates })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The circuit that undoes this one: gates reversed and inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }
}

/// Pure state of `num_qubits` qubits as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// The computational basis state |0…0⟩.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// The computational basis state with the given little-endian label.
    pub fn basis(num_qubits: usize, label: usize) -> Result<Self> {
        check_register(num_qubits)?;
        let dim = 1usize << num_qubits;
        if label >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis label {label} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[label] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps an amplitude vector. The length must be a power of two and the
    /// vector must be normalized within 1e-10.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector length {dim} is not 2^n with n >= 1"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        check_register(num_qubits)?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Unnormalized(norm));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let amps = &mut self.amplitudes;
        match *gate {
            Gate::Hadamard(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for_each_pair(amps.len(), q, |i0, i1| {
                    let (a, b) = (amps[i0], amps[i1]);
                    amps[i0] = (a + b) * s;
                    amps[i1] = (a - b) * s;
                });
            }
            Gate::Rz(q, phi) => {
                let lo = Complex64::from_polar(1.0, -phi / 2.0);
                let hi = Complex64::from_polar(1.0, phi / 2.0);
                let bit = 1usize << q;
                for (i, a) in amps.iter_mut().enumerate() {
                    *a *= if i & bit == 0 { lo } else { hi };
                }
            }
            Gate::Ry(q, theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                for_each_pair(amps.len(), q, |i0, i1| {
                    let (a, b) = (amps[i0], amps[i1]);
                    amps[i0] = a * c - b * s;
                    amps[i1] = a * s + b * c;
                });
            }
            Gate::PauliX(q) => {
                for_each_pair(amps.len(), q, |i0, i1| amps.swap(i0, i1));
            }
            Gate::Cnot { control, target } => {
                let cbit = 1usize << control;
                for_each_pair(amps.len(), target, |i0, i1| {
                    if i0 & cbit != 0 {
                        amps.swap(i0, i1);
                    }
                });
            }
        }
        Ok(())
    }

    /// Runs every gate of `circuit` in order.
    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: circuit.num_qubits(),
                found: self.num_qubits,
            });
        }
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Exact ⟨Z_S⟩ for the parity over `qubits`:
    /// Σ_s (−1)^{parity of s on S} |a_s|².
    pub fn expectation_z_string(&self, qubits: &[usize]) -> Result<f64> {
        let mask = self.parity_mask(qubits)?;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let p = a.norm_sqr();
                if (i & mask).count_ones() % 2 == 0 {
                    p
                } else {
                    -p
                }
            })
            .sum())
    }

    /// Born-rule probabilities of every basis outcome.
    pub fn outcome_probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn parity_mask(&self, qubits: &[usize]) -> Result<usize> {
        if qubits.is_empty() {
            return Err(Error::InvalidArgument(
                "empty qubit set for a Z-string expectation".into(),
            ));
        }
        let mut mask = 0usize;
        for &q in qubits {
            if q >= self.num_qubits {
                return Err(Error::InvalidArgument(format!(
                    "qubit {q} out of range for {} qubits",
                    self.num_qubits
                )));
            }
            mask |= 1 << q;
        }
        Ok(mask)
    }
}

/// Functional form of [`QuantumState::apply_gate`].
pub fn apply_gate(state: &QuantumState, gate: &Gate) -> Result<QuantumState> {
    let mut out = state.clone();
    out.apply_gate(gate)?;
    Ok(out)
}

/// Functional form of [`QuantumState::run`].
pub fn run_circuit(circuit: &Circuit, initial: &QuantumState) -> Result<QuantumState> {
    let mut out = initial.clone();
    out.run(circuit)?;
    Ok(out)
}

fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 {
        return Err(Error::InvalidArgument("a register needs at least one qubit".into()));
    }
    if num_qubits > MAX_QUBITS {
        return Err(Error::ResourceCap {
            requested: num_qubits,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Visits every index pair (i, i | 1<<q) with bit q of i clear.
#[inline]
fn for_each_pair(dim: usize, q: usize, mut f: impl FnMut(usize, usize)) {
    let bit = 1usize << q;
    let mut base = 0;
    while base < dim {
        for i in base..base + bit {
            f(i, i | bit);
        }
        base += bit << 1;
    }
}
