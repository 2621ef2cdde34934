//! Dense-matrix reference constructions and random instance generators
//! shared by the property suites. Nothing here calls into the bit-level
//! kernels it is used to check.

#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qlevels_core::{Coupling, Field, IsingHamiltonian, XStringObservable};

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|r| (0..dim).map(|k| c(if r == k { 1.0 } else { 0.0 })).collect())
        .collect()
}

pub fn pauli_x() -> Matrix {
    vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]
}

pub fn pauli_z() -> Matrix {
    vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(-1.0)]]
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// ⊗ of single-qubit operators, with qubit 0 as the least significant
/// factor (rightmost in the Kronecker product).
pub fn tensor(n: usize, op_on: impl Fn(usize) -> Matrix) -> Matrix {
    let mut m = vec![vec![c(1.0)]];
    for q in (0..n).rev() {
        m = kron(&m, &op_on(q));
    }
    m
}

pub fn z_string(n: usize, qubits: &[usize]) -> Matrix {
    tensor(n, |q| if qubits.contains(&q) { pauli_z() } else { identity(2) })
}

pub fn x_string(n: usize, qubits: &[usize]) -> Matrix {
    tensor(n, |q| if qubits.contains(&q) { pauli_x() } else { identity(2) })
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Matrix, s: f64) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn frobenius(a: &Matrix) -> f64 {
    a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn dense_hamiltonian(h: &IsingHamiltonian) -> Matrix {
    let n = h.num_spins();
    let dim = 1 << n;
    let mut m = vec![vec![c(0.0); dim]; dim];
    for cp in h.couplings() {
        m = add(&m, &scale(&z_string(n, &[cp.i, cp.j]), cp.strength));
    }
    for f in h.fields() {
        m = add(&m, &scale(&z_string(n, &[f.site]), f.strength));
    }
    m
}

/// ⟨ψ|M|ψ⟩.
pub fn quadratic_form(m: &Matrix, psi: &[Complex64]) -> Complex64 {
    let mut acc = c(0.0);
    for (i, row) in m.iter().enumerate() {
        let mv: Complex64 = row.iter().zip(psi).map(|(a, b)| a * b).sum();
        acc += psi[i].conj() * mv;
    }
    acc
}

/// Random Ising instance: every unordered pair is present with probability
/// 1/2, with integer couplings in ±{1, 2}; each site carries a field with
/// probability 1/3.
pub fn arb_hamiltonian(max_spins: usize) -> impl Strategy<Value = IsingHamiltonian> {
    (1..=max_spins).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let np = pairs.len();
        (
            Just(n),
            Just(pairs),
            prop::collection::vec((any::<bool>(), prop::sample::select(vec![-2.0, -1.0, 1.0, 2.0])), np),
            prop::collection::vec((0..3u8, prop::sample::select(vec![-1.0, 1.0, 2.0])), n),
        )
            .prop_map(|(n, pairs, picks, field_picks)| {
                let couplings = pairs
                    .iter()
                    .zip(picks)
                    .filter(|(_, (on, _))| *on)
                    .map(|(&(i, j), (_, s))| Coupling::new(i, j, s))
                    .collect();
                let fields = field_picks
                    .iter()
                    .enumerate()
                    .filter(|(_, (roll, _))| *roll == 0)
                    .map(|(q, &(_, s))| Field::new(q, s))
                    .collect();
                IsingHamiltonian::new(n, couplings, fields).unwrap()
            })
    })
}

/// Random non-empty X-string on `n` qubits.
pub fn arb_observable(n: usize) -> impl Strategy<Value = XStringObservable> {
    prop::collection::vec(any::<bool>(), n)
        .prop_filter("non-empty", |v| v.iter().any(|&b| b))
        .prop_map(|v| {
            XStringObservable::new(v.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| q)).unwrap()
        })
}

/// An (H, Â) pair with {Â, H} = 0 by construction: couplings only across the
/// cut between Â's support and its complement, fields only inside the
/// support. Couplings are integers in ±{1, 2, 3}; fields in ±{1, 2}.
pub fn arb_anticommuting_pair(
    max_spins: usize,
) -> impl Strategy<Value = (IsingHamiltonian, XStringObservable)> {
    (1..=max_spins)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<bool>(), n).prop_filter("non-empty", |v| v.iter().any(|&b| b)),
                prop::collection::vec(
                    (any::<bool>(), prop::sample::select(vec![-3.0, -2.0, -1.0, 1.0, 2.0, 3.0])),
                    n * n,
                ),
                prop::collection::vec((0..3u8, prop::sample::select(vec![-2.0, -1.0, 1.0, 2.0])), n),
            )
        })
        .prop_map(|(n, support, pair_picks, field_picks)| {
            let mut couplings = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let (on, s) = pair_picks[i * n + j];
                    if on && support[i] != support[j] {
                        couplings.push(Coupling::new(i, j, s));
                    }
                }
            }
            let fields = (0..n)
                .filter(|&q| support[q] && field_picks[q].0 == 0)
                .map(|q| Field::new(q, field_picks[q].1))
                .collect();
            let h = IsingHamiltonian::new(n, couplings, fields).unwrap();
            let a = XStringObservable::new((0..n).filter(|&q| support[q])).unwrap();
            (h, a)
        })
}
