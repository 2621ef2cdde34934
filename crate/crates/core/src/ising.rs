//! Diagonal Ising Hamiltonians, the anticommutation test for X-string
//! observables, and the two exact oracles built on enumeration: the
//! (energy, degeneracy) histogram and the characteristic time series.
//!
//! Units are ħ = 1. A basis bit `b` maps to the spin `s = 1 − 2b`, so
//! |0⟩ ↦ +1 and |1⟩ ↦ −1. Every unordered pair is stored once with its full
//! coupling, i.e. the usual ½ Σ_{i,j} J_ij double counting is folded in.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocol::{TimeGrid, TimeSeries};

/// Default enumeration cap on the number of spins.
pub const DEFAULT_SPIN_CAP: usize = 28;

/// Energies closer than this are merged into one level.
pub const ENERGY_MERGE_TOL: f64 = 1e-9;

const CHUNK_BITS: u32 = 16;

/// A `J σᶻ_i σᶻ_j` term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub i: usize,
    pub j: usize,
    pub strength: f64,
}

impl Coupling {
    pub fn new(i: usize, j: usize, strength: f64) -> Self {
        Self { i, j, strength }
    }
}

/// A local `h σᶻ_i` term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Field {
    pub site: usize,
    pub strength: f64,
}

impl Field {
    pub fn new(site: usize, strength: f64) -> Self {
        Self { site, strength }
    }
}

/// One term of an Ising Hamiltonian, used to report anticommutation failures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    Coupling(Coupling),
    Field(Field),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Coupling(c) => write!(f, "{}·Z{}·Z{}", c.strength, c.i, c.j),
            Term::Field(h) => write!(f, "{}·Z{}", h.strength, h.site),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsingHamiltonian {
    num_spins: usize,
    couplings: Vec<Coupling>,
    fields: Vec<Field>,
}

impl IsingHamiltonian {
    pub fn new(num_spins: usize, couplings: Vec<Coupling>, fields: Vec<Field>) -> Result<Self> {
        if num_spins == 0 || num_spins > 63 {
            return Err(Error::InvalidArgument(format!(
                "num_spins must be in 1..=63, got {num_spins}"
            )));
        }
        let mut pairs = BTreeSet::new();
        for c in &couplings {
            if c.i >= num_spins || c.j >= num_spins {
                return Err(Error::InvalidArgument(format!(
                    "coupling ({}, {}) out of range for {num_spins} spins",
                    c.i, c.j
                )));
            }
            if c.i == c.j {
                return Err(Error::InvalidArgument(format!(
                    "coupling ({}, {}) is a self-interaction",
                    c.i, c.j
                )));
            }
            if !pairs.insert((c.i.min(c.j), c.i.max(c.j))) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate coupling ({}, {})",
                    c.i, c.j
                )));
            }
            if !c.strength.is_finite() {
                return Err(Error::InvalidArgument("coupling strength is not finite".into()));
            }
        }
        let mut sites = BTreeSet::new();
        for h in &fields {
            if h.site >= num_spins {
                return Err(Error::InvalidArgument(format!(
                    "field site {} out of range for {num_spins} spins",
                    h.site
                )));
            }
            if !sites.insert(h.site) {
                return Err(Error::InvalidArgument(format!("duplicate field on site {}", h.site)));
            }
            if !h.strength.is_finite() {
                return Err(Error::InvalidArgument("field strength is not finite".into()));
            }
        }
        Ok(Self {
            num_spins,
            couplings,
            fields,
        })
    }

    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    /// All terms in declaration order: couplings first, then fields.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.couplings
            .iter()
            .copied()
            .map(Term::Coupling)
            .chain(self.fields.iter().copied().map(Term::Field))
    }

    /// Energy of a configuration given as one bit per spin (`true` = |1⟩).
    pub fn energy(&self, configuration: &[bool]) -> Result<f64> {
        if configuration.len() != self.num_spins {
            return Err(Error::DimensionMismatch {
                expected: self.num_spins,
                found: configuration.len(),
            });
        }
        let label = configuration
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &b)| acc | ((b as u64) << k));
        Ok(self.kernel().energy(label))
    }

    /// Energy of the basis state with the given little-endian label.
    pub fn energy_of_label(&self, label: u64) -> f64 {
        self.kernel().energy(label)
    }

    fn kernel(&self) -> EnergyKernel {
        EnergyKernel::new(self)
    }
}

/// Z-string terms as (bit mask, weight). A term contributes `+w` when the
/// masked bits have even parity and `−w` when odd, so
/// `E = Σw − 2 Σ_{odd} w`.
struct EnergyKernel {
    masks: Vec<u64>,
    weights: Vec<f64>,
    offset: f64,
}

impl EnergyKernel {
    fn new(h: &IsingHamiltonian) -> Self {
        let mut masks = Vec::new();
        let mut weights = Vec::new();
        for c in &h.couplings {
            masks.push((1u64 << c.i) | (1u64 << c.j));
            weights.push(c.strength);
        }
        for f in &h.fields {
            masks.push(1u64 << f.site);
            weights.push(f.strength);
        }
        let offset = weights.iter().sum();
        Self {
            masks,
            weights,
            offset,
        }
    }

    #[inline]
    fn energy(&self, label: u64) -> f64 {
        let mut odd = 0.0;
        for (&m, &w) in self.masks.iter().zip(&self.weights) {
            odd += w * ((label & m).count_ones() & 1) as f64;
        }
        // + 0.0 folds −0.0 into 0.0
        self.offset - 2.0 * odd + 0.0
    }
}

/// One distinct energy and how many basis states share it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: u64,
}

/// Exact spectrum of a diagonal Hamiltonian, sorted ascending by energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyHistogram {
    num_spins: usize,
    levels: Vec<Level>,
}

impl EnergyHistogram {
    pub fn num_spins(&self) -> usize {
        self.num_spins
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn total_degeneracy(&self) -> u64 {
        self.levels.iter().map(|l| l.degeneracy).sum()
    }

    /// `(energy, d_E / 2^n)` pairs.
    pub fn weights(&self) -> Vec<(f64, f64)> {
        let dim = (1u64 << self.num_spins) as f64;
        self.levels
            .iter()
            .map(|l| (l.energy, l.degeneracy as f64 / dim))
            .collect()
    }

    /// True when every level `(E, d)` has a partner `(−E, d)` within `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.levels.len();
        (0..n).all(|k| {
            let (a, b) = (self.levels[k], self.levels[n - 1 - k]);
            (a.energy + b.energy).abs() <= tol && a.degeneracy == b.degeneracy
        })
    }
}

/// Exhaustive spectrum with the default spin cap.
pub fn spectrum(h: &IsingHamiltonian) -> Result<EnergyHistogram> {
    spectrum_with_cap(h, DEFAULT_SPIN_CAP)
}

/// Enumerates all 2^n basis labels and groups their energies.
pub fn spectrum_with_cap(h: &IsingHamiltonian, cap: usize) -> Result<EnergyHistogram> {
    let n = h.num_spins;
    if n > cap {
        return Err(Error::ResourceCap { requested: n, cap });
    }
    let kernel = h.kernel();
    let levels = histogram_of(n, |label| kernel.energy(label));
    Ok(EnergyHistogram {
        num_spins: n,
        levels,
    })
}

/// Frequencies present in ⟨Â(t)⟩ for the start state |+…+⟩ and an X-string
/// Â on support S, with their weights:
///
///   A(t) = 2^{−n} Σ_s e^{i(E_s − E_{s⊕S})t}
///
/// No anticommutation is assumed. When {Â, H} = 0 the frequencies reduce to
/// 2E with the level weights d_E/2^n.
pub fn transition_spectrum(
    h: &IsingHamiltonian,
    a: &XStringObservable,
    cap: usize,
) -> Result<Vec<(f64, f64)>> {
    let n = h.num_spins;
    if n > cap {
        return Err(Error::ResourceCap { requested: n, cap });
    }
    a.validate_for(n)?;
    let mask: u64 = a.qubits().iter().map(|&q| 1u64 << q).sum();
    let kernel = h.kernel();
    let dim = (1u64 << n) as f64;
    Ok(histogram_of(n, |label| kernel.energy(label) - kernel.energy(label ^ mask) + 0.0)
        .into_iter()
        .map(|l| (l.energy, l.degeneracy as f64 / dim))
        .collect())
}

/// Groups `value(label)` over all 2^n labels into levels.
///
/// Labels are split into fixed-size chunks; each chunk is sorted and
/// run-length encoded, then chunks are merged by exact value and finally
/// grouped with [`ENERGY_MERGE_TOL`]. The result does not depend on how the
/// chunks are scheduled.
fn histogram_of(n: usize, value: impl Fn(u64) -> f64 + Sync) -> Vec<Level> {
    let total: u64 = 1 << n;
    let chunk_len: u64 = total.min(1 << CHUNK_BITS);
    let num_chunks = total / chunk_len;

    let runs = (0..num_chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk_len;
            let mut values: Vec<f64> = (start..start + chunk_len).map(&value).collect();
            values.sort_unstable_by(f64::total_cmp);
            run_length(&values)
        })
        .reduce(Vec::new, merge_runs);

    let mut levels: Vec<Level> = Vec::new();
    let mut group_start = f64::NEG_INFINITY;
    for (e, d) in runs {
        match levels.last_mut() {
            Some(last) if e - group_start <= ENERGY_MERGE_TOL => last.degeneracy += d,
            _ => {
                group_start = e;
                levels.push(Level {
                    energy: e,
                    degeneracy: d,
                });
            }
        }
    }
    levels
}

fn run_length(sorted: &[f64]) -> Vec<(f64, u64)> {
    let mut out: Vec<(f64, u64)> = Vec::new();
    for &e in sorted {
        match out.last_mut() {
            Some((v, d)) if *v == e => *d += 1,
            _ => out.push((e, 1)),
        }
    }
    out
}

fn merge_runs(a: Vec<(f64, u64)>, b: Vec<(f64, u64)>) -> Vec<(f64, u64)> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.total_cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A tensor product of σˣ over a non-empty qubit set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XStringObservable {
    qubits: Vec<usize>,
}

impl XStringObservable {
    pub fn new(qubits: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = qubits.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidArgument("X-string observable needs at least one qubit".into()));
        }
        Ok(Self {
            qubits: set.into_iter().collect(),
        })
    }

    /// Sorted, deduplicated qubit indices.
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn contains(&self, q: usize) -> bool {
        self.qubits.binary_search(&q).is_ok()
    }

    pub fn validate_for(&self, num_spins: usize) -> Result<()> {
        match self.qubits.last() {
            Some(&q) if q >= num_spins => Err(Error::InvalidArgument(format!(
                "observable qubit {q} out of range for {num_spins} spins"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for XStringObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.qubits.iter().map(|q| format!("X{q}")).collect();
        f.write_str(&parts.join("·"))
    }
}

/// Terms of `h` that do not anticommute with `a`.
///
/// σˣ_S anticommutes with a Z-string iff the overlap is odd. Distinct
/// Z-strings are linearly independent, so `{A, H} = 0` iff every term
/// anticommutes individually.
pub fn anticommutation_violations(h: &IsingHamiltonian, a: &XStringObservable) -> Vec<Term> {
    h.terms()
        .filter(|t| match t {
            Term::Coupling(c) => a.contains(c.i) == a.contains(c.j),
            Term::Field(f) => !a.contains(f.site),
        })
        .collect()
}

pub fn anticommutes(h: &IsingHamiltonian, a: &XStringObservable) -> bool {
    anticommutation_violations(h, a).is_empty()
}

/// Exact A(t) for initial state |+…+⟩ and an X-string that anticommutes
/// with `h`: A(t) = Σ_E (d_E/2^n) e^{2iEt}.
pub fn characteristic_series(h: &IsingHamiltonian, grid: TimeGrid) -> Result<TimeSeries> {
    characteristic_series_from_histogram(&spectrum(h)?, grid)
}

/// Same as [`characteristic_series`], reusing a precomputed histogram.
pub fn characteristic_series_from_histogram(
    hist: &EnergyHistogram,
    grid: TimeGrid,
) -> Result<TimeSeries> {
    let weights = hist.weights();
    let samples: Vec<(f64, f64)> = grid
        .times()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| {
            weights.iter().fold((0.0, 0.0), |(re, im), &(e, w)| {
                let (s, c) = (2.0 * e * t).sin_cos();
                (re + w * c, im + w * s)
            })
        })
        .collect();
    let worst_imag = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    if worst_imag > 1e-9 {
        return Err(Error::AsymmetricSpectrum(worst_imag));
    }
    TimeSeries::new(grid, samples.into_iter().map(|s| s.0).collect())
}
