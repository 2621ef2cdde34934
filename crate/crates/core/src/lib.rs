//! Energy levels from the time evolution of an anticommuting observable.
//!
//! For an observable Â with {Â, H} = 0 and a start state that is an Â
//! eigenstate, ⟨Â(t)⟩ oscillates at twice the energies of H. This crate
//! simulates the measurement circuits for diagonal Ising Hamiltonians,
//! transforms the sampled series, and reads the levels off the peaks. Exact
//! enumeration of the spectrum serves as the reference.

pub mod error;
pub mod ising;
pub mod noise;
pub mod presets;
pub mod protocol;
pub mod spectral;
pub mod statevector;

pub use error::{Error, Result};
pub use ising::{
    anticommutation_violations, anticommutes, characteristic_series,
    characteristic_series_from_histogram, spectrum, spectrum_with_cap, transition_spectrum, Coupling, EnergyHistogram,
    Field, IsingHamiltonian, Level, Term, XStringObservable,
};
pub use noise::{attenuation_factor, sample_parity, NoiseConfig};
pub use presets::Preset;
pub use protocol::{build_circuit, measure_series, ProtocolRun, TimeGrid, TimeSeries};
pub use spectral::{
    continuum_kernel, dft, find_peaks, peaks_to_levels, DftOptions, Peak, PeakKind, PeakSet,
    Spectrum, Window,
};
pub use statevector::{apply_gate, run_circuit, Circuit, Gate, QuantumState};
