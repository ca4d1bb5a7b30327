use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};

pub(crate) type Mat2 = [[Complex64; 2]; 2];

/// Primitive operations every gate lowers to: a controlled 2x2 unitary or a
/// controlled swap. A control set is `(mask, value)`: the op fires on basis
/// states `i` with `i & mask == value`.
#[derive(Clone, Debug)]
pub(crate) enum Op {
    Unitary { target: usize, m: Mat2, mask: u64, value: u64 },
    Swap { a: usize, b: usize, mask: u64, value: u64 },
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

pub(crate) fn rz(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, -s), c(0.0, 0.0)], [c(0.0, 0.0), c(co, s)]]
}

fn diag(phase: Complex64) -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), phase]]
}

const X: Mat2 = [[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]];

pub(crate) fn lower(g: &Gate, out: &mut Vec<Op>) {
    let q = &g.qubits;
    let bit = |i: usize| 1u64 << q[i];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = std::f64::consts::FRAC_PI_4;
    let single = |m: Mat2| Op::Unitary { target: q[0], m, mask: 0, value: 0 };
    match &g.kind {
        GateKind::X => out.push(single(X)),
        GateKind::H => out.push(single([[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]])),
        GateKind::S => out.push(single(diag(c(0.0, 1.0)))),
        GateKind::Sdg => out.push(single(diag(c(0.0, -1.0)))),
        GateKind::T => out.push(single(diag(c(t.cos(), t.sin())))),
        GateKind::Tdg => out.push(single(diag(c(t.cos(), -t.sin())))),
        GateKind::Rz(a) => out.push(single(rz(a.radians()))),
        GateKind::Ry(a) => out.push(single(ry(a.radians()))),
        GateKind::Cnot => out.push(Op::Unitary { target: q[1], m: X, mask: bit(0), value: bit(0) }),
        GateKind::Toffoli | GateKind::And | GateKind::AndUncompute => {
            let m = bit(0) | bit(1);
            out.push(Op::Unitary { target: q[2], m: X, mask: m, value: m })
        }
        GateKind::Swap => out.push(Op::Swap { a: q[0], b: q[1], mask: 0, value: 0 }),
        GateKind::CSwap => out.push(Op::Swap { a: q[1], b: q[2], mask: bit(0), value: bit(0) }),
        GateKind::McRy { angle, mask } => {
            let (mut mm, mut vv) = (0u64, 0u64);
            for (i, &want) in mask.iter().enumerate() {
                mm |= bit(i);
                if want {
                    vv |= bit(i);
                }
            }
            out.push(Op::Unitary { target: *q.last().unwrap(), m: ry(angle.radians()), mask: mm, value: vv });
        }
        GateKind::UcRy { angles } => {
            let k = q.len() - 1;
            let mm: u64 = (0..k).map(bit).sum();
            for (y, a) in angles.iter().enumerate() {
                let vv: u64 = (0..k).filter(|i| (y >> i) & 1 == 1).map(bit).sum();
                out.push(Op::Unitary { target: q[k], m: ry(a.radians()), mask: mm, value: vv });
            }
        }
    }
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

/// Streams the ops of `circuit`, multiplying each run of uncontrolled
/// single-qubit gates on one qubit into a single matrix. A pending run is
/// flushed as soon as a controlled op or swap touches its qubit.
pub(crate) fn for_each_fused(circuit: &Circuit, mut f: impl FnMut(&Op)) {
    let mut pending: Vec<Option<Mat2>> = vec![None; circuit.num_qubits()];
    let flush = |q: usize, pending: &mut Vec<Option<Mat2>>, f: &mut dyn FnMut(&Op)| {
        if let Some(m) = pending[q].take() {
            f(&Op::Unitary { target: q, m, mask: 0, value: 0 });
        }
    };
    let mut ops = Vec::new();
    for g in circuit.gates() {
        ops.clear();
        lower(g, &mut ops);
        for op in &ops {
            let touched = match *op {
                Op::Unitary { target, m, mask: 0, .. } => {
                    pending[target] = Some(match &pending[target] {
                        Some(p) => mul(&m, p),
                        None => m,
                    });
                    continue;
                }
                Op::Unitary { target, mask, .. } => mask | 1 << target,
                Op::Swap { a, b, mask, .. } => mask | 1 << a | 1 << b,
            };
            let mut bits = touched;
            while bits != 0 {
                let q = bits.trailing_zeros() as usize;
                flush(q, &mut pending, &mut f);
                bits &= bits - 1;
            }
            f(op);
        }
    }
    for q in 0..pending.len() {
        flush(q, &mut pending, &mut f);
    }
}

/// Matrix of a single-qubit gate word given in time order.
pub(crate) fn word_matrix(word: &[GateKind]) -> Mat2 {
    let mut m = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    let mut ops = Vec::new();
    for g in word {
        ops.clear();
        lower(&Gate::new(g.clone(), vec![0]), &mut ops);
        let Op::Unitary { m: u, .. } = ops[0] else { unreachable!("single-qubit word") };
        m = mul(&u, &m);
    }
    m
}
