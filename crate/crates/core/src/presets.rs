//! The five reference scenarios: Hamiltonian, probe observable and time grid.

use std::f64::consts::PI;

use crate::ising::{Coupling, Field, IsingHamiltonian, XStringObservable};
use crate::protocol::TimeGrid;

/// Single spin in a z field, H = ω₀ σᶻ₀.
pub fn spin_in_field(omega0: f64) -> IsingHamiltonian {
    IsingHamiltonian::new(1, vec![], vec![Field::new(0, omega0)]).expect("valid preset")
}

/// Open three-spin chain, H = J Z₀Z₁ + J Z₁Z₂.
pub fn chain3(j: f64) -> IsingHamiltonian {
    ring_or_chain(3, &[(0, 1, j), (1, 2, j)])
}

/// Four-spin plaquette with uniform couplings.
pub fn square4_iso(j: f64) -> IsingHamiltonian {
    ring_or_chain(4, &[(0, 1, j), (1, 2, j), (2, 3, j), (3, 0, j)])
}

/// Four-spin plaquette with the (0, 1) bond reversed; frustrated for J > 0.
pub fn square4_aniso(j: f64) -> IsingHamiltonian {
    ring_or_chain(4, &[(0, 1, -j), (1, 2, j), (2, 3, j), (3, 0, j)])
}

/// Six-spin lattice with seven bonds. Device qubits {0, 1, 2, 12, 13, 14}
/// are relabelled to {0, 1, 2, 3, 4, 5} (12→3, 13→4, 14→5).
pub fn lattice6(j: f64) -> IsingHamiltonian {
    ring_or_chain(
        6,
        &[(0, 1, j), (1, 2, j), (2, 3, j), (4, 3, j), (4, 5, j), (1, 4, j), (0, 5, j)],
    )
}

fn ring_or_chain(n: usize, bonds: &[(usize, usize, f64)]) -> IsingHamiltonian {
    let couplings = bonds.iter().map(|&(i, j, s)| Coupling::new(i, j, s)).collect();
    IsingHamiltonian::new(n, couplings, vec![]).expect("valid preset")
}

/// Named reference scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    SpinField,
    Chain3,
    Square4Iso,
    Square4Aniso,
    Lattice6,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::SpinField,
        Preset::Chain3,
        Preset::Square4Iso,
        Preset::Square4Aniso,
        Preset::Lattice6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::SpinField => "spin_field",
            Preset::Chain3 => "chain3",
            Preset::Square4Iso => "square4_iso",
            Preset::Square4Aniso => "square4_aniso",
            Preset::Lattice6 => "lattice6",
        }
    }

    pub fn from_name(name: &str) -> Option<Preset> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::SpinField => "spin in a z field, H = Z0, A = X0",
            Preset::Chain3 => "3-spin chain, H = Z0Z1 + Z1Z2, A = X1",
            Preset::Square4Iso => "4-spin square, uniform J, A = X0X2",
            Preset::Square4Aniso => "4-spin square, (0,1) bond reversed, A = X0X2",
            Preset::Lattice6 => "6-spin lattice, 7 bonds, A = X0X2X4",
        }
    }

    /// Hamiltonian with unit coupling (J = 1 or ω₀ = 1).
    pub fn hamiltonian(self) -> IsingHamiltonian {
        match self {
            Preset::SpinField => spin_in_field(1.0),
            Preset::Chain3 => chain3(1.0),
            Preset::Square4Iso => square4_iso(1.0),
            Preset::Square4Aniso => square4_aniso(1.0),
            Preset::Lattice6 => lattice6(1.0),
        }
    }

    pub fn observable(self) -> XStringObservable {
        let qubits: &[usize] = match self {
            Preset::SpinField => &[0],
            Preset::Chain3 => &[1],
            Preset::Square4Iso | Preset::Square4Aniso => &[0, 2],
            Preset::Lattice6 => &[0, 2, 4],
        };
        XStringObservable::new(qubits.iter().copied()).expect("non-empty")
    }

    /// τ = π/12, N = 96 (φ/2 swept over ±8π in steps of π/12), or the finer
    /// τ = π/24, N = 192 for the six-spin lattice.
    pub fn grid(self) -> TimeGrid {
        match self {
            Preset::Lattice6 => TimeGrid::new(PI / 24.0, 192),
            _ => TimeGrid::new(PI / 12.0, 96),
        }
        .expect("valid grid")
    }

    /// Energy levels reported for the hardware runs of each scenario. For the
    /// six-spin lattice the reported set {0, ±3, ±7} disagrees with exact
    /// enumeration, which gives {±1, ±3, ±7}.
    pub fn published_levels(self) -> &'static [f64] {
        match self {
            Preset::SpinField => &[-1.0, 1.0],
            Preset::Chain3 => &[-2.0, 0.0, 2.0],
            Preset::Square4Iso => &[-4.0, 0.0, 4.0],
            Preset::Square4Aniso => &[-2.0, 2.0],
            Preset::Lattice6 => &[-7.0, -3.0, 0.0, 3.0, 7.0],
        }
    }
}
