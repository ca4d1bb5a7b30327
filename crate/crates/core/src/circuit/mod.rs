//! Gate-level circuit representation, resource counting and the text format.

mod gate;
mod report;
mod text;

pub use gate::{Angle, Gate, GateKind};
pub use report::{count_resources, ResourceReport};

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegisterRole {
    Address,
    Alias,
    Keep,
    Random,
    Flag,
    Ancilla,
    Work,
    Data,
}

impl RegisterRole {
    pub fn name(&self) -> &'static str {
        match self {
            RegisterRole::Address => "address",
            RegisterRole::Alias => "alias",
            RegisterRole::Keep => "keep",
            RegisterRole::Random => "random",
            RegisterRole::Flag => "flag",
            RegisterRole::Ancilla => "ancilla",
            RegisterRole::Work => "work",
            RegisterRole::Data => "data",
        }
    }
}

impl fmt::Display for RegisterRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegisterRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "address" => RegisterRole::Address,
            "alias" => RegisterRole::Alias,
            "keep" => RegisterRole::Keep,
            "random" => RegisterRole::Random,
            "flag" => RegisterRole::Flag,
            "ancilla" => RegisterRole::Ancilla,
            "work" => RegisterRole::Work,
            "data" => RegisterRole::Data,
            other => return Err(Error::structural(format!("unknown register role `{other}`"))),
        })
    }
}

/// A contiguous block of qubits with a role. Qubit `start` is the least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    pub role: RegisterRole,
    pub start: usize,
    pub len: usize,
}

impl Register {
    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    pub fn qubits(&self) -> Vec<usize> {
        self.range().collect()
    }
}

/// An ordered gate list over `num_qubits` qubits. Qubit `q` is bit `q` of a basis index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, registers: Vec::new(), gates: Vec::new() }
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

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, role: RegisterRole) -> Option<&Register> {
        self.registers.iter().find(|r| r.role == role)
    }

    /// Appends `len` fresh qubits as a new register and returns their indices.
    pub fn alloc(&mut self, role: RegisterRole, len: usize) -> Vec<usize> {
        let start = self.num_qubits;
        self.num_qubits += len;
        if len > 0 {
            self.registers.push(Register { role, start, len });
        }
        (start..start + len).collect()
    }

    /// Declares a register over existing qubits.
    pub fn add_register(&mut self, role: RegisterRole, start: usize, len: usize) -> Result<()> {
        if start + len > self.num_qubits {
            return Err(Error::structural(format!(
                "register {role} [{start}, {}) exceeds {} qubits",
                start + len,
                self.num_qubits
            )));
        }
        if let Some(r) = self
            .registers
            .iter()
            .find(|r| r.start < start + len && start < r.start + r.len)
        {
            return Err(Error::structural(format!("register {role} overlaps register {}", r.role)));
        }
        self.registers.push(Register { role, start, len });
        Ok(())
    }

    pub fn push(&mut self, kind: GateKind, qubits: Vec<usize>) -> Result<()> {
        let g = Gate::new(kind, qubits);
        g.validate(self.num_qubits)?;
        self.gates.push(g);
        Ok(())
    }

    /// Like [`Circuit::push`] for operands built internally; panics on malformed input.
    pub(crate) fn add(&mut self, kind: GateKind, qubits: &[usize]) {
        let g = Gate::new(kind, qubits.to_vec());
        debug_assert!(g.validate(self.num_qubits).is_ok(), "bad gate {g}");
        self.gates.push(g);
    }

    pub(crate) fn add_gate(&mut self, g: Gate) {
        debug_assert!(g.validate(self.num_qubits).is_ok(), "bad gate {g}");
        self.gates.push(g);
    }

    pub(crate) fn clear_gates(&mut self) {
        self.gates.clear();
    }

    /// The gates in `range` on the same qubits and registers.
    pub fn slice(&self, range: Range<usize>) -> Circuit {
        Circuit { num_qubits: self.num_qubits, registers: self.registers.clone(), gates: self.gates[range].to_vec() }
    }

    /// Returns `a` followed by `b`, where qubit `i` of `b` is wired to qubit `mapping[i]`.
    ///
    /// The result spans `max(a.num_qubits, max(mapping) + 1)` qubits and keeps the
    /// registers of `a`.
    pub fn compose(a: &Circuit, b: &Circuit, mapping: &[usize]) -> Result<Circuit> {
        if mapping.len() != b.num_qubits {
            return Err(Error::structural(format!(
                "mapping has {} entries for a {}-qubit circuit",
                mapping.len(),
                b.num_qubits
            )));
        }
        for (i, m) in mapping.iter().enumerate() {
            if mapping[..i].contains(m) {
                return Err(Error::structural(format!("mapping sends two qubits to {m}")));
            }
        }
        let width = mapping.iter().map(|&m| m + 1).max().unwrap_or(0).max(a.num_qubits);
        let mut out = a.clone();
        out.num_qubits = width;
        out.gates.extend(b.gates.iter().map(|g| Gate {
            kind: g.kind.clone(),
            qubits: g.qubits.iter().map(|&q| mapping[q]).collect(),
        }));
        Ok(out)
    }

    /// Appends `other` on the identity wiring.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        let mapping: Vec<usize> = (0..other.num_qubits).collect();
        Circuit::compose(self, other, &mapping)
    }

    pub fn report(&self) -> ResourceReport {
        count_resources(self)
    }

    pub fn to_text(&self) -> String {
        text::write(self)
    }

    pub fn from_text(s: &str) -> Result<Circuit> {
        text::parse(s)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut c = Circuit::new(3);
        c.push(GateKind::H, vec![0]).unwrap();
        c.push(GateKind::Toffoli, vec![0, 1, 2]).unwrap();
        c.push(GateKind::T, vec![2]).unwrap();
        c
    }

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2);
        assert!(c.push(GateKind::Toffoli, vec![0, 1]).is_err());
        assert!(c.push(GateKind::Cnot, vec![0, 2]).is_err());
        assert!(c.is_empty());
    }

    #[test]
    fn compose_remaps_and_widens() {
        let a = sample();
        let mut b = Circuit::new(2);
        b.push(GateKind::Cnot, vec![0, 1]).unwrap();
        let c = Circuit::compose(&a, &b, &[4, 1]).unwrap();
        assert_eq!(c.num_qubits(), 5);
        assert_eq!(c.gates().last().unwrap().qubits, vec![4, 1]);
        assert!(Circuit::compose(&a, &b, &[1, 1]).is_err());
        assert!(Circuit::compose(&a, &b, &[1]).is_err());
    }

    #[test]
    fn registers_must_not_overlap() {
        let mut c = Circuit::new(4);
        c.add_register(RegisterRole::Address, 0, 2).unwrap();
        assert!(c.add_register(RegisterRole::Flag, 1, 1).is_err());
        assert!(c.add_register(RegisterRole::Flag, 3, 2).is_err());
        let anc = c.alloc(RegisterRole::Ancilla, 2);
        assert_eq!(anc, vec![4, 5]);
        assert_eq!(c.register(RegisterRole::Ancilla).unwrap().range(), 4..6);
    }
}
