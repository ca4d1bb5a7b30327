use num_complex::Complex64;

use super::ops::{for_each_fused, Op};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Default qubit budget for dense simulation.
pub const DEFAULT_QUBIT_BUDGET: usize = 26;

/// Dense statevector; amplitude `i` belongs to the basis state whose bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { num_qubits, amps }
    }

    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << num_qubits {
            return Err(Error::structural(format!(
                "{} amplitudes for {} qubits",
                amps.len(),
                num_qubits
            )));
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn apply(&mut self, op: &Op) {
        match *op {
            Op::Unitary { target, m, mask, value } => {
                let tb = 1usize << target;
                let (mask, value) = (mask as usize, value as usize);
                let zero = Complex64::new(0.0, 0.0);
                let is_x = m[0][0] == zero && m[1][1] == zero && m[0][1] == m[1][0] && m[0][1] == Complex64::new(1.0, 0.0);
                for (block, chunk) in self.amps.chunks_mut(2 * tb).enumerate() {
                    let (lo, hi) = chunk.split_at_mut(tb);
                    let base = block * 2 * tb;
                    if mask == 0 {
                        if is_x {
                            lo.swap_with_slice(hi);
                        } else {
                            for (a, b) in lo.iter_mut().zip(hi) {
                                let (x, y) = (*a, *b);
                                *a = m[0][0] * x + m[0][1] * y;
                                *b = m[1][0] * x + m[1][1] * y;
                            }
                        }
                        continue;
                    }
                    for (k, (a, b)) in lo.iter_mut().zip(hi).enumerate() {
                        if (base + k) & mask != value {
                            continue;
                        }
                        if is_x {
                            std::mem::swap(a, b);
                        } else {
                            let (x, y) = (*a, *b);
                            *a = m[0][0] * x + m[0][1] * y;
                            *b = m[1][0] * x + m[1][1] * y;
                        }
                    }
                }
            }
            Op::Swap { a, b, mask, value } => {
                let (ab, bb) = (1usize << a, 1usize << b);
                let (mask, value) = (mask as usize, value as usize);
                for i in 0..self.amps.len() {
                    if i & ab != 0 && i & bb == 0 && i & mask == value {
                        self.amps.swap(i, i ^ ab ^ bb);
                    }
                }
            }
        }
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.num_qubits() > self.num_qubits {
            return Err(Error::structural(format!(
                "circuit on {} qubits applied to a {}-qubit state",
                c.num_qubits(),
                self.num_qubits
            )));
        }
        for_each_fused(c, |op| self.apply(op));
        Ok(())
    }
}

/// Runs `c` on `|0...0>`; fails with [`Error::Capacity`] above `budget` qubits.
pub fn simulate(c: &Circuit, budget: usize) -> Result<StateVector> {
    if c.num_qubits() > budget {
        return Err(Error::Capacity { qubits: c.num_qubits(), budget });
    }
    let mut s = StateVector::zero(c.num_qubits());
    s.apply_circuit(c)?;
    Ok(s)
}
