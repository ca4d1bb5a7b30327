use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};

/// Runs a classical reversible circuit on one basis input, bit `q` of the
/// result being qubit `q`. Fails on non-permutation gates and on `AND`
/// targets that are not clean (or `ANDU` targets not holding the AND).
pub fn simulate_basis(c: &Circuit, input: &[bool]) -> Result<Vec<bool>> {
    if input.len() != c.num_qubits() {
        return Err(Error::structural(format!(
            "input has {} bits for a {}-qubit circuit",
            input.len(),
            c.num_qubits()
        )));
    }
    let mut v = input.to_vec();
    for (i, g) in c.gates().iter().enumerate() {
        let q = &g.qubits;
        match g.kind {
            GateKind::X => v[q[0]] ^= true,
            GateKind::Cnot => v[q[1]] ^= v[q[0]],
            GateKind::Toffoli => v[q[2]] ^= v[q[0]] & v[q[1]],
            GateKind::And => {
                if v[q[2]] {
                    return Err(Error::structural(format!("gate {i}: AND target is not clean")));
                }
                v[q[2]] = v[q[0]] & v[q[1]];
            }
            GateKind::AndUncompute => {
                if v[q[2]] != (v[q[0]] & v[q[1]]) {
                    return Err(Error::structural(format!("gate {i}: AND uncompute on a mismatched target")));
                }
                v[q[2]] = false;
            }
            GateKind::Swap => v.swap(q[0], q[1]),
            GateKind::CSwap => {
                if v[q[0]] {
                    v.swap(q[1], q[2]);
                }
            }
            ref k => return Err(Error::structural(format!("gate {i}: {k:?} is not a classical permutation"))),
        }
    }
    Ok(v)
}

/// Writes `value` into `bits[start..start + len]`, least significant first.
pub fn write_bits(bits: &mut [bool], start: usize, len: usize, value: u64) {
    for i in 0..len {
        bits[start + i] = value >> i & 1 == 1;
    }
}

pub fn read_bits(bits: &[bool], start: usize, len: usize) -> u64 {
    (0..len).map(|i| (bits[start + i] as u64) << i).sum()
}
