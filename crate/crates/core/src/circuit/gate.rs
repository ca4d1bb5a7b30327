use std::f64::consts::FRAC_PI_4;
use std::fmt;

use crate::error::{Error, Result};

const EXACT_TOL: f64 = 1e-12;

/// A rotation angle in radians.
///
/// Angles within `1e-12` of an integer multiple of `pi/4` carry that multiple
/// (reduced mod 16, the period of `Ry`/`Rz` as unitaries) so that lowering can
/// route them to exact Clifford+T words without a tolerance check downstream.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    radians: f64,
    quarter_turns: Option<u8>,
}

impl Angle {
    pub fn new(radians: f64) -> Self {
        let m = (radians / FRAC_PI_4).round();
        let quarter_turns = if radians.is_finite() && (radians - m * FRAC_PI_4).abs() <= EXACT_TOL {
            Some((m as i64).rem_euclid(16) as u8)
        } else {
            None
        };
        Angle { radians, quarter_turns }
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    /// `Some(m)` when the angle is `m * pi/4` (mod `4 pi`).
    pub fn pi_quarters(&self) -> Option<u8> {
        self.quarter_turns
    }

    pub fn is_zero(&self) -> bool {
        self.quarter_turns == Some(0)
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle::new(r)
    }
}

/// Gate kinds of the logical and compiled gate sets.
///
/// Operand conventions (see [`Gate::qubits`]):
/// single-qubit gates act on `[q]`; `Cnot` is `[control, target]`;
/// `Toffoli`, `And` and `AndUncompute` are `[c0, c1, target]`; `Swap` is `[a, b]`;
/// `CSwap` is `[control, a, b]`; `McRy` and `UcRy` list the controls first and the
/// target last.
///
/// `And` is a Toffoli whose target is promised to start in `|0>`; `AndUncompute`
/// is its measurement-based inverse (target promised to hold `c0 & c1`, returned
/// to `|0>`), which costs no T gates.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Toffoli,
    Swap,
    CSwap,
    And,
    AndUncompute,
    Rz(Angle),
    Ry(Angle),
    /// Multi-controlled `Ry`; `mask[i]` is the required value of control `i`.
    McRy { angle: Angle, mask: Vec<bool> },
    /// Uniformly controlled `Ry`; `angles[y]` applies when control `i` holds bit `i` of `y`.
    UcRy { angles: Vec<Angle> },
}

impl GateKind {
    pub fn tag(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "CCX",
            GateKind::Swap => "SWAP",
            GateKind::CSwap => "CSWAP",
            GateKind::And => "AND",
            GateKind::AndUncompute => "ANDU",
            GateKind::Rz(_) => "RZ",
            GateKind::Ry(_) => "RY",
            GateKind::McRy { .. } => "MCRY",
            GateKind::UcRy { .. } => "UCRY",
        }
    }

    /// Required operand count, or `None` for the variable-arity rotations.
    pub fn fixed_arity(&self) -> Option<usize> {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Rz(_)
            | GateKind::Ry(_) => Some(1),
            GateKind::Cnot | GateKind::Swap => Some(2),
            GateKind::Toffoli | GateKind::CSwap | GateKind::And | GateKind::AndUncompute => Some(3),
            GateKind::McRy { .. } | GateKind::UcRy { .. } => None,
        }
    }

    /// Toffoli-equivalent count of this gate at the logical level.
    ///
    /// A multi-controlled rotation with `c >= 2` controls is charged `c - 1`, the
    /// length of the V-chain that computes the conjunction of its controls.
    pub fn toffoli_equivalents(&self) -> usize {
        match self {
            GateKind::Toffoli | GateKind::CSwap | GateKind::And => 1,
            GateKind::McRy { mask, .. } => mask.len().saturating_sub(1),
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate { kind, qubits }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let want = match &self.kind {
            GateKind::McRy { mask, .. } => mask.len() + 1,
            GateKind::UcRy { angles } => {
                if !angles.len().is_power_of_two() {
                    return Err(Error::structural(format!(
                        "UCRY angle table has {} entries, expected a power of two",
                        angles.len()
                    )));
                }
                angles.len().trailing_zeros() as usize + 1
            }
            k => k.fixed_arity().unwrap(),
        };
        if self.qubits.len() != want {
            return Err(Error::structural(format!(
                "{} expects {} operands, got {}",
                self.kind.tag(),
                want,
                self.qubits.len()
            )));
        }
        for (i, &q) in self.qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(Error::structural(format!(
                    "{} operand {} out of range for {} qubits",
                    self.kind.tag(),
                    q,
                    num_qubits
                )));
            }
            if self.qubits[..i].contains(&q) {
                return Err(Error::structural(format!("{} repeats operand {}", self.kind.tag(), q)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.tag())?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        match &self.kind {
            GateKind::Rz(a) | GateKind::Ry(a) => write!(f, " angle={}", a.radians())?,
            GateKind::McRy { angle, mask } => {
                write!(f, " angle={} mask=", angle.radians())?;
                for &b in mask {
                    f.write_str(if b { "1" } else { "0" })?;
                }
            }
            GateKind::UcRy { angles } => {
                f.write_str(" angles=")?;
                for (i, a) in angles.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", a.radians())?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}
