//! Statevector simulation and fidelity metrics.

mod classical;
mod dense;
pub(crate) mod ops;
mod sparse;

pub use classical::{read_bits, simulate_basis, write_bits};
pub use dense::{simulate, StateVector, DEFAULT_QUBIT_BUDGET};
pub use sparse::{simulate_sparse, simulate_sparse_capped, SparseState};

use std::fmt::Write;
use std::ops::Range;

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// `|<a|b>|^2`.
pub fn fidelity_state(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::structural(format!("state dimensions {} and {} differ", a.len(), b.len())));
    }
    let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    Ok(ip.norm_sqr())
}

/// Squared Bhattacharyya coefficient `(sum_i sqrt(p_i q_i))^2`.
pub fn fidelity_prob(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::structural(format!("distribution lengths {} and {} differ", p.len(), q.len())));
    }
    if let Some(x) = p.iter().chain(q).find(|x| !(**x >= 0.0)) {
        return Err(Error::validation(format!("probability {x} is negative or NaN")));
    }
    let s: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    Ok(s * s)
}

/// `1 - |<a|b>|^2` for unit vectors, from `d = ||b - e^{i phi} a||^2` with the
/// phase aligned: `1 - F = d (1 - d / 4)`. Unlike `1 - fidelity_state` this
/// keeps relative accuracy when the infidelity is far below machine epsilon.
pub fn infidelity_state(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::structural(format!("state dimensions {} and {} differ", a.len(), b.len())));
    }
    let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
    let d: f64 = a.iter().zip(b).map(|(x, y)| (y - phase * x).norm_sqr()).sum();
    Ok((d * (1.0 - d / 4.0)).clamp(0.0, 1.0))
}

/// [`infidelity_state`] against a sparse state, with `target[i]` the amplitude
/// on basis index `i` and every index past the end of `target` zero.
pub fn infidelity_state_sparse(target: &[Complex64], s: &SparseState) -> f64 {
    let at = |k: u64| target.get(k as usize).copied().unwrap_or_default();
    let ip: Complex64 = s.iter().map(|(k, v)| at(k).conj() * v).sum();
    let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
    let inside: f64 = s.iter().map(|(k, v)| (v - phase * at(k)).norm_sqr()).sum();
    let outside: f64 = target
        .iter()
        .enumerate()
        .filter(|&(i, a)| a.norm_sqr() > 0.0 && s.amplitude(i as u64) == Complex64::default())
        .map(|(_, a)| a.norm_sqr())
        .sum();
    let d = inside + outside;
    (d * (1.0 - d / 4.0)).clamp(0.0, 1.0)
}

/// Amplitude updates a dense run of `c` would perform: fused ops times `2^n`.
pub fn dense_work(c: &Circuit) -> f64 {
    let mut ops = 0u64;
    ops::for_each_fused(c, |_| ops += 1);
    ops as f64 * (c.num_qubits() as f64).exp2()
}

/// `1 - F_prob` through the squared Hellinger distance `h = sum (sqrt p - sqrt q)^2`:
/// `1 - F = h (1 - h / 4)` for normalized distributions.
pub fn infidelity_prob(p: &[f64], q: &[f64]) -> Result<f64> {
    fidelity_prob(p, q)?;
    let h: f64 = p.iter().zip(q).map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2)).sum();
    Ok((h * (1.0 - h / 4.0)).clamp(0.0, 1.0))
}

fn marginal_index(i: u64, qubits: &Range<usize>) -> usize {
    ((i >> qubits.start) & ((1u64 << qubits.len()) - 1)) as usize
}

/// Distribution of the contiguous register `qubits` in a dense state.
pub fn address_marginal(state: &StateVector, qubits: Range<usize>) -> Vec<f64> {
    let mut out = vec![0.0; 1usize << qubits.len()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        out[marginal_index(i as u64, &qubits)] += a.norm_sqr();
    }
    out
}

pub fn address_marginal_sparse(state: &SparseState, qubits: Range<usize>) -> Vec<f64> {
    let mut out = vec![0.0; 1usize << qubits.len()];
    for (i, a) in state.iter() {
        out[marginal_index(i, &qubits)] += a.norm_sqr();
    }
    out
}

/// One `index re im` line per amplitude with modulus above `tol`.
pub fn dump_amplitudes(state: &StateVector, tol: f64) -> String {
    let mut s = String::new();
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm() > tol {
            writeln!(s, "{i} {} {}", a.re, a.im).unwrap();
        }
    }
    s
}
