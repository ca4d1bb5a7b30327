//! Line-oriented circuit format:
//!
//! ```text
//! qubits 5
//! reg address 0 2
//! H 0
//! MCRY 0 1 4 angle=0.5 mask=10
//! ```
//!
//! Angles are printed with Rust's shortest round-trip `f64` formatting.
//! `#` starts a comment.

use super::{Angle, Circuit, Gate, GateKind, RegisterRole};
use crate::error::{Error, Result};

pub(super) fn write(c: &Circuit) -> String {
    let mut s = format!("qubits {}\n", c.num_qubits());
    for r in c.registers() {
        s.push_str(&format!("reg {} {} {}\n", r.role, r.start, r.len));
    }
    for g in c.gates() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

fn parse_f64(line: usize, v: &str) -> Result<f64> {
    let x: f64 = v.parse().map_err(|_| Error::parse(line, format!("bad angle `{v}`")))?;
    if !x.is_finite() {
        return Err(Error::parse(line, format!("non-finite angle `{v}`")));
    }
    Ok(x)
}

fn parse_usize(line: usize, v: &str) -> Result<usize> {
    v.parse().map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{v}`")))
}

pub(super) fn parse(src: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let head = toks.next().unwrap();
        if head == "qubits" {
            if circuit.is_some() {
                return Err(Error::parse(line, "duplicate `qubits` header"));
            }
            let n = parse_usize(line, toks.next().ok_or_else(|| Error::parse(line, "missing qubit count"))?)?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| Error::parse(line, "`qubits` header must come first"))?;
        if head == "reg" {
            let rest: Vec<&str> = toks.collect();
            if rest.len() != 3 {
                return Err(Error::parse(line, "expected `reg <role> <start> <len>`"));
            }
            let role: RegisterRole = rest[0].parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
            let start = parse_usize(line, rest[1])?;
            let len = parse_usize(line, rest[2])?;
            c.add_register(role, start, len).map_err(|e| Error::parse(line, e.to_string()))?;
            continue;
        }

        let mut qubits = Vec::new();
        let mut angle = None;
        let mut mask = None;
        let mut angles = None;
        for t in toks {
            if let Some(v) = t.strip_prefix("angle=") {
                angle = Some(parse_f64(line, v)?);
            } else if let Some(v) = t.strip_prefix("mask=") {
                let bits: Result<Vec<bool>> = v
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::parse(line, format!("bad mask `{v}`"))),
                    })
                    .collect();
                mask = Some(bits?);
            } else if let Some(v) = t.strip_prefix("angles=") {
                let list: Result<Vec<Angle>> = v.split(',').map(|a| parse_f64(line, a).map(Angle::new)).collect();
                angles = Some(list?);
            } else {
                qubits.push(parse_usize(line, t)?);
            }
        }
        let need_angle = |a: Option<f64>| a.map(Angle::new).ok_or_else(|| Error::parse(line, format!("{head} needs angle=")));
        let kind = match head {
            "X" => GateKind::X,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "SDG" => GateKind::Sdg,
            "T" => GateKind::T,
            "TDG" => GateKind::Tdg,
            "CNOT" => GateKind::Cnot,
            "CCX" => GateKind::Toffoli,
            "SWAP" => GateKind::Swap,
            "CSWAP" => GateKind::CSwap,
            "AND" => GateKind::And,
            "ANDU" => GateKind::AndUncompute,
            "RZ" => GateKind::Rz(need_angle(angle)?),
            "RY" => GateKind::Ry(need_angle(angle)?),
            "MCRY" => GateKind::McRy {
                angle: need_angle(angle)?,
                mask: mask.ok_or_else(|| Error::parse(line, "MCRY needs mask="))?,
            },
            "UCRY" => GateKind::UcRy { angles: angles.ok_or_else(|| Error::parse(line, "UCRY needs angles="))? },
            other => return Err(Error::parse(line, format!("unknown gate `{other}`"))),
        };
        let g = Gate::new(kind, qubits);
        g.validate(c.num_qubits()).map_err(|e| Error::parse(line, e.to_string()))?;
        c.add_gate(g);
    }
    circuit.ok_or_else(|| Error::parse(0, "empty circuit file"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut c = Circuit::new(2);
        c.alloc(RegisterRole::Ancilla, 3);
        c.add_register(RegisterRole::Address, 0, 2).unwrap();
        c.push(GateKind::Ry(Angle::new(0.1 + 0.2)), vec![0]).unwrap();
        c.push(GateKind::McRy { angle: Angle::new(-1e-300), mask: vec![true, false] }, vec![0, 3, 4])
            .unwrap();
        c.push(GateKind::UcRy { angles: vec![Angle::new(1.0), Angle::new(std::f64::consts::PI)] }, vec![1, 2])
            .unwrap();
        c.push(GateKind::AndUncompute, vec![0, 1, 2]).unwrap();
        let back = Circuit::from_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match Circuit::from_text("qubits 2\nH 0\nFOO 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match Circuit::from_text("qubits 2\n\nCNOT 0 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Circuit::from_text("H 0\n").is_err());
        assert!(Circuit::from_text("qubits 1\nRY 0\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = Circuit::from_text("# header\nqubits 1\n\nX 0 # flip\n").unwrap();
        assert_eq!(c.len(), 1);
    }
}
