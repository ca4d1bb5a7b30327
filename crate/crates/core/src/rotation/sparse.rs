use std::collections::BTreeMap;

use super::dense::branch_angle;
use super::TargetState;
use crate::circuit::{Angle, Circuit, GateKind};
use crate::error::Result;

/// One merge of the sparse routine, in preparation (forward) order.
struct MergeStep {
    rotation: (GateKind, Vec<usize>),
    cnots: Vec<(usize, usize)>,
}

fn bit(j: u64, q: usize) -> bool {
    j >> q & 1 == 1
}

/// Greedy isolation: fix the bit with the largest minority branch (lowest
/// index on ties) and descend into that minority branch until one index is
/// left. Returns the survivor and the fixed `(bit, value)` conditions in order.
fn isolate(support: &[u64], n: usize) -> (u64, Vec<(usize, bool)>) {
    let mut cand: Vec<u64> = support.to_vec();
    let mut fixed = Vec::new();
    while cand.len() > 1 {
        let (q, ones) = (0..n)
            .filter(|q| !fixed.iter().any(|&(f, _)| f == *q))
            .map(|q| (q, cand.iter().filter(|&&j| bit(j, q)).count()))
            .max_by(|a, b| {
                let ma = a.1.min(cand.len() - a.1);
                let mb = b.1.min(cand.len() - b.1);
                ma.cmp(&mb).then(b.0.cmp(&a.0))
            })
            .unwrap();
        let value = ones <= cand.len() - ones;
        fixed.push((q, value));
        cand.retain(|&j| bit(j, q) == value);
    }
    (cand[0], fixed)
}

fn matches(j: u64, conds: &[(usize, bool)]) -> bool {
    conds.iter().all(|&(q, v)| bit(j, q) == v)
}

fn merge_once(s: &mut BTreeMap<u64, f64>, n: usize) -> MergeStep {
    let support: Vec<u64> = s.keys().copied().collect();
    let (i0, mut fixed) = isolate(&support, n);
    let (q, _) = fixed.pop().expect("isolation fixes at least one bit");
    let i1 = support
        .iter()
        .copied()
        .find(|&j| j != i0 && matches(j, &fixed))
        .expect("the last fixed bit separated at least two indices");
    let (lo, hi) = if bit(i0, q) { (i1, i0) } else { (i0, i1) };
    let qb = 1u64 << q;

    let cnots: Vec<(usize, usize)> = (0..n).filter(|&d| d != q && bit(lo, d) != bit(hi, d)).map(|d| (q, d)).collect();
    let flip: u64 = cnots.iter().map(|&(_, d)| 1u64 << d).sum();
    let aligned: BTreeMap<u64, f64> = s
        .iter()
        .map(|(&j, &a)| (if bit(j, q) { j ^ flip } else { j }, a))
        .collect();
    debug_assert!(aligned.contains_key(&(lo | qb)));

    // Γ alone may still admit other indices; add distinguishing bits of `lo`
    // until the pair is the only thing the rotation touches.
    let mut conds = fixed;
    loop {
        let clash: Vec<u64> = aligned
            .keys()
            .copied()
            .filter(|&j| j & !qb != lo && matches(j, &conds))
            .collect();
        if clash.is_empty() {
            break;
        }
        let d = (0..n)
            .filter(|&d| d != q && !conds.iter().any(|&(c, _)| c == d))
            .max_by(|&a, &b| {
                let ka = clash.iter().filter(|&&j| bit(j, a) != bit(lo, a)).count();
                let kb = clash.iter().filter(|&&j| bit(j, b) != bit(lo, b)).count();
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .unwrap();
        conds.push((d, bit(lo, d)));
    }
    conds.sort();

    let (theta, r) = branch_angle(aligned[&lo], aligned[&(lo | qb)]);
    let angle = Angle::new(theta);
    let rotation = if conds.is_empty() {
        (GateKind::Ry(angle), vec![q])
    } else {
        let mut qubits: Vec<usize> = conds.iter().map(|&(c, _)| c).collect();
        qubits.push(q);
        (GateKind::McRy { angle, mask: conds.iter().map(|&(_, v)| v).collect() }, qubits)
    };

    let mut next = aligned;
    next.remove(&(lo | qb));
    next.insert(lo, r);
    *s = next;
    MergeStep { rotation, cnots }
}

/// Sparse rotation routine: merge pairs of occupied indices with CNOT
/// alignment and a multi-controlled `Ry` until one basis state remains.
pub fn synthesize_sparse(state: &TargetState) -> Result<Circuit> {
    TargetState::new(state.num_qubits(), state.iter())?;
    Ok(synthesize_sparse_unchecked(state))
}

pub(crate) fn synthesize_sparse_unchecked(state: &TargetState) -> Circuit {
    let n = state.num_qubits();
    let mut s = state.map().clone();
    let mut steps = Vec::new();
    while s.len() > 1 {
        let before = s.len();
        steps.push(merge_once(&mut s, n));
        assert_eq!(s.len() + 1, before, "sparse reduction must remove exactly one index per step");
    }
    let mut c = Circuit::new(n);
    let last = *s.keys().next().expect("nonempty support");
    for q in 0..n {
        if bit(last, q) {
            c.add(GateKind::X, &[q]);
        }
    }
    for step in steps.iter().rev() {
        c.add(step.rotation.0.clone(), &step.rotation.1);
        for &(ctl, tgt) in step.cnots.iter().rev() {
            c.add(GateKind::Cnot, &[ctl, tgt]);
        }
    }
    c
}
