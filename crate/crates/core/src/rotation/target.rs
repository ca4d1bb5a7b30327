use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// A real-amplitude state `sum_j alpha_j |j>` stored by its nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetState {
    n: usize,
    amps: BTreeMap<u64, f64>,
}

impl TargetState {
    /// Validates indices, finiteness and `sum alpha_j^2 = 1` within `1e-12`. Zero entries are dropped.
    pub fn new(n: usize, entries: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let s = Self::collect(n, entries)?;
        let norm: f64 = s.amps.values().map(|a| a * a).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(format!("squared amplitudes sum to {norm}, not 1")));
        }
        Ok(s)
    }

    /// Like [`TargetState::new`] but rescales to unit norm first.
    pub fn normalized(n: usize, entries: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let mut s = Self::collect(n, entries)?;
        let norm: f64 = s.amps.values().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::validation("state has no nonzero amplitude"));
        }
        for a in s.amps.values_mut() {
            *a /= norm;
        }
        Ok(s)
    }

    pub fn from_dense(amps: &[f64]) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::structural(format!("dense vector length {} is not a power of two", amps.len())));
        }
        let n = amps.len().trailing_zeros() as usize;
        Self::new(n, amps.iter().enumerate().map(|(i, &a)| (i as u64, a)))
    }

    fn collect(n: usize, entries: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        if n > 63 {
            return Err(Error::parameter(format!("{n} qubits exceeds the 63-qubit index range")));
        }
        let mut amps = BTreeMap::new();
        for (j, a) in entries {
            if !a.is_finite() {
                return Err(Error::validation(format!("amplitude {a} at index {j} is not finite")));
            }
            if j >> n != 0 {
                return Err(Error::structural(format!("index {j} out of range for {n} qubits")));
            }
            if a != 0.0 && amps.insert(j, a).is_some() {
                return Err(Error::structural(format!("duplicate index {j}")));
            }
        }
        Ok(TargetState { n, amps })
    }

    /// Unchecked constructor for intermediate states of the reduction loops.
    pub(crate) fn from_map(n: usize, amps: BTreeMap<u64, f64>) -> Self {
        TargetState { n, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Number of nonzero amplitudes.
    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, j: u64) -> f64 {
        self.amps.get(&j).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.amps.iter().map(|(&j, &a)| (j, a))
    }

    pub fn indices(&self) -> Vec<u64> {
        self.amps.keys().copied().collect()
    }

    pub(crate) fn map(&self) -> &BTreeMap<u64, f64> {
        &self.amps
    }

    /// Dense complex vector over `width >= n` qubits, extra qubits in `|0>`.
    pub fn to_complex(&self, width: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); 1usize << width.max(self.n)];
        for (&j, &a) in &self.amps {
            v[j as usize] = Complex64::new(a, 0.0);
        }
        v
    }

    /// `p_j = alpha_j^2` over all `2^n` indices.
    pub fn probabilities(&self) -> Vec<f64> {
        let mut p = vec![0.0; 1usize << self.n];
        for (&j, &a) in &self.amps {
            p[j as usize] = a * a;
        }
        p
    }
}
