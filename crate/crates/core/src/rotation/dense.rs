use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::sparse::synthesize_sparse_unchecked;
use super::TargetState;
use crate::circuit::{Angle, Circuit, GateKind};
use crate::error::Result;

const ANGLE_TOL: f64 = 1e-12;

/// Qubits on which the support takes both values.
pub(crate) fn active_qubits(support: &[u64], n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&q| {
            let ones = support.iter().filter(|&&j| j >> q & 1 == 1).count();
            ones > 0 && ones < support.len()
        })
        .collect()
}

/// Qubit minimizing `|#occupied(bit=0) - #occupied(bit=1)|` among qubits where
/// the support is not constant; ties go to the lowest index. `None` when the
/// support is constant on every qubit.
pub fn choose_pivot(support: &[u64], n: usize) -> Option<usize> {
    active_qubits(support, n).into_iter().min_by_key(|&q| {
        let ones = support.iter().filter(|&&j| j >> q & 1 == 1).count() as i64;
        ((support.len() as i64 - ones) - ones).abs()
    })
}

/// Angles of a uniformly controlled `Ry` on `pivot`.
///
/// `angles` maps a control pattern `y` (bit `i` is the value of `controls[i]`)
/// to `theta_y` in `[0, 2 pi)`. Patterns absent from the map do not occur in
/// the state and may be given any angle.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleTable {
    pub pivot: usize,
    pub controls: Vec<usize>,
    pub angles: BTreeMap<u64, f64>,
}

/// `theta = 2 atan2(a1, a0)` folded into `[0, 2 pi)`, with the matching signed
/// radius `r` such that `r (cos theta/2, sin theta/2) = (a0, a1)`.
pub(crate) fn branch_angle(a0: f64, a1: f64) -> (f64, f64) {
    let r = a0.hypot(a1);
    let mut theta = 2.0 * a1.atan2(a0);
    let mut sign = 1.0;
    if theta < 0.0 {
        theta += 2.0 * PI;
        sign = -1.0;
    }
    if theta >= 2.0 * PI {
        theta -= 2.0 * PI;
        sign = -sign;
    }
    (theta, sign * r)
}

fn pattern(j: u64, controls: &[usize]) -> u64 {
    controls.iter().enumerate().map(|(i, &c)| (j >> c & 1) << i).sum()
}

/// Angle table for merging `pivot` and the reduced state with the pivot cleared.
pub fn build_angle_table(state: &TargetState, pivot: usize) -> (AngleTable, TargetState) {
    let support = state.indices();
    let controls: Vec<usize> = active_qubits(&support, state.num_qubits())
        .into_iter()
        .filter(|&q| q != pivot)
        .collect();
    let pb = 1u64 << pivot;
    let mut pairs: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for (j, a) in state.iter() {
        let e = pairs.entry(j & !pb).or_insert((0.0, 0.0));
        if j & pb == 0 {
            e.0 = a;
        } else {
            e.1 = a;
        }
    }
    let mut angles = BTreeMap::new();
    let mut reduced = BTreeMap::new();
    for (base, (a0, a1)) in pairs {
        let (theta, r) = branch_angle(a0, a1);
        angles.insert(pattern(base, &controls), theta);
        reduced.insert(base, r);
    }
    (AngleTable { pivot, controls, angles }, TargetState::from_map(state.num_qubits(), reduced))
}

impl AngleTable {
    /// Drops every control on which the table is constant (absent patterns are wildcards).
    pub fn prune(&mut self) {
        let mut i = 0;
        while i < self.controls.len() {
            let bit = 1u64 << i;
            let constant = self.angles.iter().all(|(&y, &t)| {
                y & bit != 0 || self.angles.get(&(y | bit)).map_or(true, |&u| (t - u).abs() <= ANGLE_TOL)
            });
            if constant {
                self.controls.remove(i);
                let low = bit - 1;
                let mut merged = BTreeMap::new();
                for (&y, &t) in &self.angles {
                    merged.entry((y & low) | ((y >> 1) & !low)).or_insert(t);
                }
                self.angles = merged;
            } else {
                i += 1;
            }
        }
    }
}

/// Gray-code demultiplexing of a uniformly controlled `Ry` into `Ry` and CNOT.
///
/// With `c` controls it emits `2^c` rotations and `2^c` CNOTs (`c >= 1`);
/// `alpha_i = 2^-c sum_y (-1)^{popcount(y & gray(i))} theta_y`, and the CNOT
/// after rotation `i` is controlled by the bit where `gray(i)` and
/// `gray(i + 1 mod 2^c)` differ.
pub fn demux_ucry(table: &AngleTable, num_qubits: usize) -> Circuit {
    let mut c = Circuit::new(num_qubits);
    emit_demux(&mut c, table);
    c
}

pub(crate) fn emit_demux(c: &mut Circuit, table: &AngleTable) {
    let k = table.controls.len();
    let size = 1usize << k;
    let theta = |y: usize| table.angles.get(&(y as u64)).copied().unwrap_or(0.0);
    if k == 0 {
        c.add(GateKind::Ry(Angle::new(theta(0))), &[table.pivot]);
        return;
    }
    let gray = |i: usize| i ^ (i >> 1);
    for i in 0..size {
        let g = gray(i);
        let sum: f64 = (0..size)
            .map(|y| if (y & g).count_ones() % 2 == 0 { theta(y) } else { -theta(y) })
            .sum();
        c.add(GateKind::Ry(Angle::new(sum / size as f64)), &[table.pivot]);
        let flip = (gray(i) ^ gray((i + 1) % size)).trailing_zeros() as usize;
        c.add(GateKind::Cnot, &[table.controls[flip], table.pivot]);
    }
}

/// Dense rotation routine: repeatedly merge a pivot qubit into the rest with a
/// uniformly controlled `Ry` until at most one qubit remains unsettled, then
/// prepare the residual and replay the recorded steps in reverse.
pub fn synthesize_dense(state: &TargetState) -> Result<Circuit> {
    TargetState::new(state.num_qubits(), state.iter())?;
    Ok(dense_impl(state, true).0)
}

/// Dense routine that also returns the angle table of every step, in reduction order.
pub fn synthesize_dense_tables(state: &TargetState) -> Result<(Circuit, Vec<AngleTable>)> {
    TargetState::new(state.num_qubits(), state.iter())?;
    Ok(dense_impl(state, true))
}

pub(crate) fn dense_impl(state: &TargetState, prune: bool) -> (Circuit, Vec<AngleTable>) {
    let n = state.num_qubits();
    let mut steps: Vec<Circuit> = Vec::new();
    let mut tables = Vec::new();
    let mut s = state.clone();
    let mut active = active_qubits(&s.indices(), n).len();
    while active > 1 {
        let pivot = choose_pivot(&s.indices(), n).expect("active qubits imply a pivot");
        let (mut table, reduced) = build_angle_table(&s, pivot);
        if prune {
            table.prune();
        }
        steps.push(demux_ucry(&table, n));
        tables.push(table);
        s = reduced;
        let now = active_qubits(&s.indices(), n).len();
        assert_eq!(now + 1, active, "dense reduction must settle exactly one qubit per step");
        active = now;
    }
    let mut out = synthesize_sparse_unchecked(&s);
    for step in steps.iter().rev() {
        for g in step.gates() {
            out.add_gate(g.clone());
        }
    }
    (out, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{fidelity_state, simulate};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fidelity(c: &Circuit, t: &TargetState) -> f64 {
        let s = simulate(c, 26).unwrap();
        fidelity_state(s.amplitudes(), &t.to_complex(c.num_qubits())).unwrap()
    }

    fn random_state(n: usize, seed: u64, fill: f64) -> TargetState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<(u64, f64)> = (0..1u64 << n)
            .filter_map(|j| (rng.gen::<f64>() < fill).then(|| (j, rng.gen_range(-1.0..1.0))))
            .collect();
        TargetState::normalized(n, if entries.is_empty() { vec![(0, 1.0)] } else { entries }).unwrap()
    }

    #[test]
    fn pivot_examples() {
        assert_eq!(choose_pivot(&[0b001, 0b010, 0b100], 3), Some(0));
        assert_eq!(choose_pivot(&[0b00, 0b11], 2), Some(0));
        assert_eq!(choose_pivot(&[0b000], 3), None);
        assert_eq!(choose_pivot(&[0b01, 0b11, 0b10], 2), Some(0));
        assert_eq!(choose_pivot(&[0, 1, 2, 3, 5, 7], 3), Some(1));
    }

    #[test]
    fn branch_angles() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(branch_angle(h, h).0, PI / 2.0, epsilon = 1e-15);
        assert_eq!(branch_angle(1.0, 0.0), (0.0, 1.0));
        assert_abs_diff_eq!(branch_angle(0.0, 1.0).0, PI, epsilon = 1e-15);
        let (t, r) = branch_angle(-1.0, 0.0);
        assert_eq!((t, r), (0.0, -1.0));
        let (t, r) = branch_angle(0.6, -0.8);
        assert!((0.0..2.0 * PI).contains(&t));
        assert_abs_diff_eq!(r * (t / 2.0).cos(), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(r * (t / 2.0).sin(), -0.8, epsilon = 1e-15);
    }

    #[test]
    fn single_qubit_and_basis_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = synthesize_dense(&TargetState::new(1, [(0, h), (1, h)]).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        match &c.gates()[0].kind {
            GateKind::Ry(a) => assert_abs_diff_eq!(a.radians(), PI / 2.0, epsilon = 1e-15),
            k => panic!("unexpected {k:?}"),
        }
        let c = synthesize_dense(&TargetState::new(3, [(0, 1.0)]).unwrap()).unwrap();
        assert!(c.is_empty());
        let c = synthesize_dense(&TargetState::new(3, [(0b101, -1.0)]).unwrap()).unwrap();
        assert!(fidelity(&c, &TargetState::new(3, [(0b101, -1.0)]).unwrap()) > 1.0 - 1e-12);
    }

    #[test]
    fn rejects_unnormalized() {
        let s = TargetState::from_map(1, [(0, 0.5)].into_iter().collect());
        assert!(synthesize_dense(&s).is_err());
    }

    #[test]
    fn demux_one_control_matches_block_diagonal() {
        let table = AngleTable { pivot: 1, controls: vec![0], angles: [(0, 0.7), (1, 2.9)].into_iter().collect() };
        let c = demux_ucry(&table, 2);
        assert_eq!(c.report().count("RY"), 2);
        assert_eq!(c.report().count("CNOT"), 2);
        let mut reference = Circuit::new(2);
        reference.push(GateKind::UcRy { angles: vec![Angle::new(0.7), Angle::new(2.9)] }, vec![0, 1]).unwrap();
        for input in 0..4usize {
            let mut s1 = crate::sim::StateVector::zero(2);
            let mut s2 = crate::sim::StateVector::zero(2);
            let mut prep = Circuit::new(2);
            for q in 0..2 {
                if input >> q & 1 == 1 {
                    prep.push(GateKind::X, vec![q]).unwrap();
                }
            }
            s1.apply_circuit(&prep).unwrap();
            s2.apply_circuit(&prep).unwrap();
            s1.apply_circuit(&c).unwrap();
            s2.apply_circuit(&reference).unwrap();
            for i in 0..4 {
                assert_abs_diff_eq!((s1.amplitude(i) - s2.amplitude(i)).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn constant_table_is_pruned() {
        let mut t = AngleTable { pivot: 1, controls: vec![0], angles: [(0, 0.4), (1, 0.4)].into_iter().collect() };
        t.prune();
        assert!(t.controls.is_empty());
        assert_eq!(demux_ucry(&t, 2).len(), 1);
        let mut t = AngleTable {
            pivot: 0,
            controls: vec![1, 2],
            angles: [(0, 0.1), (1, 0.1), (2, 0.3)].into_iter().collect(),
        };
        t.prune();
        assert_eq!(t.controls, vec![2]);
        assert_eq!(t.angles, [(0, 0.1), (1, 0.3)].into_iter().collect());
    }

    #[test]
    fn random_dense_states() {
        for n in 1..=6 {
            for seed in 0..4 {
                let t = random_state(n, seed, 1.0);
                let c = synthesize_dense(&t).unwrap();
                assert!(fidelity(&c, &t) >= 1.0 - 1e-10, "n={n} seed={seed}");
                let gates = c.report();
                assert_eq!(gates.rotations() + gates.count("CNOT") + gates.count("X"), gates.total_gates);
            }
        }
    }

    #[test]
    fn pruning_does_not_change_output() {
        for n in 1..=4 {
            for seed in 0..10 {
                let t = random_state(n, 100 + seed, 0.5);
                let (a, _) = dense_impl(&t, true);
                let (b, _) = dense_impl(&t, false);
                let sa = simulate(&a, 26).unwrap();
                let sb = simulate(&b, 26).unwrap();
                assert!(fidelity_state(sa.amplitudes(), sb.amplitudes()).unwrap() > 1.0 - 1e-12);
                assert!(a.len() <= b.len());
            }
        }
    }
}
