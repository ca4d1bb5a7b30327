//! Lowering of logical circuits to Clifford+T.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use super::exact::{synthesize_exact, t_power_word, ExactUnitary};
use super::exactness::exactly_preparable;
use super::gridsynth::approximate_rz;
use super::ring::{ZOmega, ZOmegaI};
use crate::circuit::{Angle, Circuit, GateKind, RegisterRole, ResourceReport};
use crate::error::{Error, Result};
use crate::rotation::{emit_demux, AngleTable};

/// How Toffoli-type gates are lowered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ToffoliMode {
    /// Gidney's temporary AND (4 T) with a measurement-based uncompute (0 T).
    #[default]
    GidneyAndMeasured,
    /// The standard 7-T Toffoli network.
    Textbook7T,
}

impl FromStr for ToffoliMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gidney" | "gidney_and_measured" => Ok(ToffoliMode::GidneyAndMeasured),
            "textbook" | "textbook_7T" | "textbook_7t" => Ok(ToffoliMode::Textbook7T),
            other => Err(Error::parameter(format!("unknown Toffoli mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthesisConfig {
    /// Precision bits; rotations are synthesized to `eps = 2^-bits`.
    pub bits: u32,
    pub toffoli_mode: ToffoliMode,
    /// Leave non-exact rotations as `RZ` placeholders and charge
    /// `ceil(3 log2(1/eps)) + 11` T gates for each instead of synthesizing.
    pub cost_model: bool,
}

impl SynthesisConfig {
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > 40 {
            return Err(Error::parameter(format!("precision bits must be in 1..=40, got {bits}")));
        }
        Ok(SynthesisConfig { bits, toffoli_mode: ToffoliMode::default(), cost_model: false })
    }

    pub fn with_mode(mut self, mode: ToffoliMode) -> Self {
        self.toffoli_mode = mode;
        self
    }

    pub fn with_cost_model(mut self, on: bool) -> Self {
        self.cost_model = on;
        self
    }

    pub fn eps(&self) -> f64 {
        0.5f64.powi(self.bits as i32)
    }

    /// T-count charged per placeholder rotation in cost-model mode.
    pub fn placeholder_t(&self) -> usize {
        (3.0 * self.bits as f64).ceil() as usize + 11
    }
}

/// A single-qubit Clifford+T word for `Rz(theta)` (time order) and its error.
#[derive(Clone, Debug, PartialEq)]
pub struct RzSynthesis {
    pub word: Vec<GateKind>,
    pub distance: f64,
    pub exact: bool,
}

impl RzSynthesis {
    pub fn t_count(&self) -> usize {
        self.word.iter().filter(|g| matches!(g, GateKind::T | GateKind::Tdg)).count()
    }
}

type Memo = RwLock<HashMap<(u64, u64), Arc<RzSynthesis>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact Clifford+T word for `Rz(theta)` when `(cos theta/2, sin theta/2)` is ring-detected.
fn exact_rz_by_ring(theta: f64) -> Option<Vec<GateKind>> {
    let w = exactly_preparable((theta / 2.0).cos(), (theta / 2.0).sin())?;
    // phase * Ry(theta) = [[c, -s], [s, c]] over a common denominator.
    let k = w.amplitudes[0].k.max(w.amplitudes[1].k);
    let c = w.amplitudes[0].numerator_at(k);
    let s = w.amplitudes[1].numerator_at(k);
    let ry = [[c.clone(), -s.clone()], [s, c]];
    // Rz = H S^dagger Ry S H.
    let one = ZOmegaI::one();
    let mul = |a: &[[ZOmegaI; 2]; 2], b: &[[ZOmegaI; 2]; 2]| {
        let mut r = [[ZOmegaI::zero(), ZOmegaI::zero()], [ZOmegaI::zero(), ZOmegaI::zero()]];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
            }
        }
        r
    };
    let h = [[one.clone(), one.clone()], [one.clone(), -one.clone()]];
    let s_gate = [[one.clone(), ZOmegaI::zero()], [ZOmegaI::zero(), ZOmega::i()]];
    let s_dag = [[one.clone(), ZOmegaI::zero()], [ZOmegaI::zero(), -ZOmega::i()]];
    let m = mul(&mul(&mul(&mul(&h, &s_dag), &ry), &s_gate), &h);
    // two unnormalized Hadamards add a factor sqrt2^2
    let u = ExactUnitary::new(m, k + 2);
    u.is_unitary().then(|| synthesize_exact(&u))
}

/// Clifford+T approximation of `Rz(theta)` within phase-invariant distance `eps`.
///
/// Multiples of `pi/4` give the shortest `S`/`T` word exactly; other angles
/// whose half-angle state lies in `Z[i, 1/sqrt2]` are synthesized exactly;
/// the rest go through grid search. Results are memoized per `(theta, eps)`.
pub fn synthesize_rz(theta: f64, eps: f64) -> Result<Arc<RzSynthesis>> {
    if !(eps > 0.0) {
        return Err(Error::parameter(format!("eps must be positive, got {eps}")));
    }
    if let Some(m) = Angle::new(theta).pi_quarters() {
        return Ok(Arc::new(RzSynthesis { word: t_power_word(m % 8), distance: 0.0, exact: true }));
    }
    let key = (theta.to_bits(), eps.to_bits());
    if let Some(hit) = memo().read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let result = match exact_rz_by_ring(theta) {
        Some(word) => RzSynthesis { word, distance: 0.0, exact: true },
        None => {
            let r = approximate_rz(theta, eps.min(1.0))?;
            RzSynthesis { word: r.word, distance: r.distance, exact: false }
        }
    };
    let result = Arc::new(result);
    memo().write().unwrap().insert(key, result.clone());
    Ok(result)
}

/// Phase-invariant distance from a single-qubit word to `Rz(theta)`.
pub fn word_rz_distance(word: &[GateKind], theta: f64) -> f64 {
    matrix_rz_distance(&crate::sim::ops::word_matrix(word), theta)
}

/// Phase-invariant distance from a unitary `m` to `Rz(theta)`.
pub(crate) fn matrix_rz_distance(m: &[[num_complex::Complex64; 2]; 2], theta: f64) -> f64 {
    let z = num_complex::Complex64::from_polar(1.0, -theta / 2.0);
    // A = Rz^dagger M = e^{i phi} [[a, -b*], [b, a*]]; 2 - |tr A| is rewritten as
    // 4 (Im(a)^2 + |b|^2) / (2 + |tr A|) to avoid cancellation at small distances.
    let a00 = z.conj() * m[0][0];
    let a10 = z * m[1][0];
    let a11 = z * m[1][1];
    let a01 = z.conj() * m[0][1];
    let det = a00 * a11 - a01 * a10;
    let ph = num_complex::Complex64::from_polar(1.0, -det.arg() / 2.0);
    let (a, b) = (a00 * ph, a10 * ph);
    let tr = (a00 + a11).norm();
    (4.0 * (a.im * a.im + b.norm_sqr()) / (2.0 + tr)).sqrt()
}

/// `Ry(theta) = S H Rz(theta) H S^dagger`, emitted in time order.
pub fn rewrite_ry(theta: f64, eps: f64) -> Result<Vec<GateKind>> {
    let rz = synthesize_rz(theta, eps)?;
    let mut w = vec![GateKind::Sdg, GateKind::H];
    w.extend(rz.word.iter().cloned());
    w.extend([GateKind::H, GateKind::S]);
    Ok(w)
}

/// Counters collected while compiling.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompileStats {
    /// `Rz` occurrences lowered exactly (multiples of `pi/4` or ring-detected).
    pub exact_rotations: usize,
    /// `Rz` occurrences approximated by grid synthesis (`N_rot`).
    pub approximate_rotations: usize,
    /// `Rz` occurrences left as placeholders in cost-model mode.
    pub placeholder_rotations: usize,
    /// Literal T count plus the cost-model charge for placeholders.
    pub estimated_t: usize,
    /// T gates spent on rotations, placeholders charged at the cost-model rate.
    pub rotation_t: usize,
}

#[derive(Clone, Debug)]
pub struct CompiledCircuit {
    pub circuit: Circuit,
    pub report: ResourceReport,
    pub stats: CompileStats,
}

struct Lowerer {
    out: Circuit,
    mode: ToffoliMode,
    anc: Vec<usize>,
}

impl Lowerer {
    fn g(&mut self, k: GateKind, q: &[usize]) {
        self.out.add(k, q);
    }

    fn toffoli7(&mut self, a: usize, b: usize, t: usize) {
        use GateKind::*;
        self.g(H, &[t]);
        self.g(Cnot, &[b, t]);
        self.g(Tdg, &[t]);
        self.g(Cnot, &[a, t]);
        self.g(T, &[t]);
        self.g(Cnot, &[b, t]);
        self.g(Tdg, &[t]);
        self.g(Cnot, &[a, t]);
        self.g(T, &[b]);
        self.g(T, &[t]);
        self.g(H, &[t]);
        self.g(Cnot, &[a, b]);
        self.g(T, &[a]);
        self.g(Tdg, &[b]);
        self.g(Cnot, &[a, b]);
    }

    /// `t <- a & b` for `t` in `|0>`.
    fn and(&mut self, a: usize, b: usize, t: usize) {
        use GateKind::*;
        if self.mode == ToffoliMode::Textbook7T {
            return self.toffoli7(a, b, t);
        }
        self.g(H, &[t]);
        self.g(T, &[t]);
        self.g(Cnot, &[a, t]);
        self.g(Cnot, &[b, t]);
        self.g(Cnot, &[t, a]);
        self.g(Cnot, &[t, b]);
        self.g(Tdg, &[a]);
        self.g(Tdg, &[b]);
        self.g(T, &[t]);
        self.g(Cnot, &[t, a]);
        self.g(Cnot, &[t, b]);
        self.g(H, &[t]);
        self.g(S, &[t]);
    }

    fn and_uncompute(&mut self, a: usize, b: usize, t: usize) {
        if self.mode == ToffoliMode::Textbook7T {
            return self.toffoli7(a, b, t);
        }
        self.g(GateKind::AndUncompute, &[a, b, t]);
    }

    fn toffoli(&mut self, a: usize, b: usize, t: usize) {
        if self.mode == ToffoliMode::Textbook7T {
            return self.toffoli7(a, b, t);
        }
        let anc = self.anc[0];
        self.and(a, b, anc);
        self.g(GateKind::Cnot, &[anc, t]);
        self.and_uncompute(a, b, anc);
    }

    fn ry(&mut self, q: usize, theta: f64) {
        use GateKind::*;
        self.g(Sdg, &[q]);
        self.g(H, &[q]);
        self.g(Rz(Angle::new(theta)), &[q]);
        self.g(H, &[q]);
        self.g(S, &[q]);
    }

    fn cry(&mut self, c: usize, t: usize, theta: f64) {
        self.ry(t, theta / 2.0);
        self.g(GateKind::Cnot, &[c, t]);
        self.ry(t, -theta / 2.0);
        self.g(GateKind::Cnot, &[c, t]);
    }

    /// V-chain conjunction of `controls` into ancillas; returns the qubit holding it.
    fn chain(&mut self, controls: &[usize]) -> usize {
        let mut acc = controls[0];
        for (i, &c) in controls[1..].iter().enumerate() {
            let a = self.anc[i];
            self.and(acc, c, a);
            acc = a;
        }
        acc
    }

    fn unchain(&mut self, controls: &[usize]) {
        for i in (1..controls.len()).rev() {
            let prev = if i == 1 { controls[0] } else { self.anc[i - 2] };
            self.and_uncompute(prev, controls[i], self.anc[i - 1]);
        }
    }

    fn mcx(&mut self, controls: &[usize], t: usize) {
        match controls.len() {
            0 => self.g(GateKind::X, &[t]),
            1 => self.g(GateKind::Cnot, &[controls[0], t]),
            2 => self.toffoli(controls[0], controls[1], t),
            _ => {
                let acc = self.chain(controls);
                self.g(GateKind::Cnot, &[acc, t]);
                self.unchain(controls);
            }
        }
    }

    fn mcry(&mut self, controls: &[usize], mask: &[bool], t: usize, theta: f64) {
        let negated: Vec<usize> = controls.iter().zip(mask).filter(|(_, &m)| !m).map(|(&c, _)| c).collect();
        for &q in &negated {
            self.g(GateKind::X, &[q]);
        }
        match controls.len() {
            0 => self.ry(t, theta),
            1 => self.cry(controls[0], t, theta),
            _ => {
                let acc = self.chain(controls);
                self.cry(acc, t, theta);
                self.unchain(controls);
            }
        }
        for &q in &negated {
            self.g(GateKind::X, &[q]);
        }
    }

    fn lower(&mut self, kind: &GateKind, q: &[usize]) {
        use GateKind::*;
        match kind {
            X | H | S | Sdg | T | Tdg | Cnot => self.g(kind.clone(), q),
            Rz(_) => self.g(kind.clone(), q),
            Ry(a) => self.ry(q[0], a.radians()),
            Toffoli => self.toffoli(q[0], q[1], q[2]),
            And => self.and(q[0], q[1], q[2]),
            AndUncompute => self.and_uncompute(q[0], q[1], q[2]),
            Swap => {
                self.g(Cnot, &[q[0], q[1]]);
                self.g(Cnot, &[q[1], q[0]]);
                self.g(Cnot, &[q[0], q[1]]);
            }
            CSwap => {
                self.g(Cnot, &[q[2], q[1]]);
                self.toffoli(q[0], q[1], q[2]);
                self.g(Cnot, &[q[2], q[1]]);
            }
            McRy { angle, mask } => {
                let (ctl, t) = q.split_at(q.len() - 1);
                self.mcry(ctl, mask, t[0], angle.radians());
            }
            UcRy { angles } => {
                let (ctl, t) = q.split_at(q.len() - 1);
                let table = AngleTable {
                    pivot: t[0],
                    controls: ctl.to_vec(),
                    angles: angles.iter().enumerate().map(|(y, a)| (y as u64, a.radians())).collect(),
                };
                let mut tmp = Circuit::new(self.out.num_qubits());
                emit_demux(&mut tmp, &table);
                for g in tmp.gates() {
                    self.lower(&g.kind, &g.qubits);
                }
            }
        }
    }
}

fn ancillas_needed(c: &Circuit, mode: ToffoliMode) -> usize {
    c.gates()
        .iter()
        .map(|g| match &g.kind {
            GateKind::Toffoli | GateKind::CSwap if mode == ToffoliMode::GidneyAndMeasured => 1,
            GateKind::McRy { mask, .. } => mask.len().saturating_sub(1),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Lowers `c` to `{X, H, S, Sdg, T, Tdg, CNOT, ANDU}` (plus `RZ` placeholders in
/// cost-model mode). Ancillas for V-chains and Toffoli lowering are appended
/// after the input qubits as an `ancilla` register; they start and end in `|0>`.
pub fn compile_with_stats(c: &Circuit, cfg: &SynthesisConfig) -> Result<CompiledCircuit> {
    if cfg.bits == 0 {
        return Err(Error::parameter("precision bits must be at least 1"));
    }
    let eps = cfg.eps();
    let mut base = c.clone();
    base.clear_gates();
    let anc = base.alloc(RegisterRole::Ancilla, ancillas_needed(c, cfg.toffoli_mode));
    let mut lw = Lowerer { out: base, mode: cfg.toffoli_mode, anc };
    for g in c.gates() {
        lw.lower(&g.kind, &g.qubits);
    }
    let lowered = lw.out;

    // Synthesize every distinct non-trivial angle once, in parallel.
    let mut angles: Vec<f64> = lowered
        .gates()
        .iter()
        .filter_map(|g| match &g.kind {
            GateKind::Rz(a) if a.pi_quarters().is_none() => Some(a.radians()),
            _ => None,
        })
        .collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    angles.dedup_by(|a, b| a.to_bits() == b.to_bits());
    let table: HashMap<u64, Option<Arc<RzSynthesis>>> = angles
        .par_iter()
        .map(|&th| {
            let r = if cfg.cost_model {
                exact_rz_by_ring(th).map(|word| Arc::new(RzSynthesis { word, distance: 0.0, exact: true }))
            } else {
                Some(synthesize_rz(th, eps)?)
            };
            Ok((th.to_bits(), r))
        })
        .collect::<Result<_>>()?;

    let mut out = lowered.clone();
    out.clear_gates();
    let mut stats = CompileStats::default();
    for g in lowered.gates() {
        match &g.kind {
            GateKind::Rz(a) => {
                let word = match a.pi_quarters() {
                    Some(m) => {
                        stats.exact_rotations += 1;
                        t_power_word(m % 8)
                    }
                    None => match &table[&a.radians().to_bits()] {
                        Some(r) => {
                            if r.exact {
                                stats.exact_rotations += 1;
                            } else {
                                stats.approximate_rotations += 1;
                            }
                            r.word.clone()
                        }
                        None => {
                            stats.placeholder_rotations += 1;
                            stats.rotation_t += cfg.placeholder_t();
                            out.add_gate(g.clone());
                            continue;
                        }
                    },
                };
                stats.rotation_t += word.iter().filter(|k| matches!(k, GateKind::T | GateKind::Tdg)).count();
                for k in word {
                    out.add(k, &g.qubits);
                }
            }
            _ => out.add_gate(g.clone()),
        }
    }
    let report = out.report();
    stats.estimated_t = report.compiled_t + stats.placeholder_rotations * cfg.placeholder_t();
    Ok(CompiledCircuit { circuit: out, report, stats })
}

pub fn compile_circuit(c: &Circuit, cfg: &SynthesisConfig) -> Result<(Circuit, ResourceReport)> {
    let r = compile_with_stats(c, cfg)?;
    Ok((r.circuit, r.report))
}

/// A single Toffoli on qubits `(0, 1) -> 2`, lowered in `mode` (qubit 3 is the AND ancilla).
pub fn lower_toffoli(mode: ToffoliMode) -> Circuit {
    let mut c = Circuit::new(3);
    c.add(GateKind::Toffoli, &[0, 1, 2]);
    compile_circuit(&c, &SynthesisConfig::new(1).unwrap().with_mode(mode)).unwrap().0
}

/// A `controls`-controlled X on qubits `0..controls -> controls`, lowered through a V-chain.
pub fn lower_mcx(controls: usize, mode: ToffoliMode) -> Circuit {
    let mut c = Circuit::new(controls + 1);
    let anc = c.alloc(RegisterRole::Ancilla, controls.saturating_sub(1).max(usize::from(controls == 2)));
    let ctl: Vec<usize> = (0..controls).collect();
    let mut lw = Lowerer { out: c, mode, anc };
    lw.mcx(&ctl, controls);
    lw.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{fidelity_state, simulate, StateVector};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn basis_prep(n: usize, input: usize) -> Circuit {
        let mut c = Circuit::new(n);
        for q in 0..n {
            if input >> q & 1 == 1 {
                c.add(GateKind::X, &[q]);
            }
        }
        c
    }

    fn run(width: usize, prep: &Circuit, body: &Circuit) -> StateVector {
        let mut s = StateVector::zero(width);
        s.apply_circuit(prep).unwrap();
        s.apply_circuit(body).unwrap();
        s
    }

    #[test]
    fn gidney_and_is_exact_on_clean_target() {
        let mut lw = Lowerer { out: Circuit::new(3), mode: ToffoliMode::GidneyAndMeasured, anc: vec![] };
        lw.and(0, 1, 2);
        assert_eq!(lw.out.report().compiled_t, 4);
        // superposed controls check relative phases too
        let mut prep = Circuit::new(3);
        prep.add(GateKind::H, &[0]);
        prep.add(GateKind::H, &[1]);
        let got = run(3, &prep, &lw.out);
        let mut want_c = Circuit::new(3);
        want_c.add(GateKind::Toffoli, &[0, 1, 2]);
        let want = run(3, &prep, &want_c);
        for i in 0..8 {
            assert!((got.amplitude(i) - want.amplitude(i)).norm() < 1e-12, "index {i}");
        }
    }

    #[test]
    fn textbook_toffoli_matches_unitary() {
        let low = lower_toffoli(ToffoliMode::Textbook7T);
        assert_eq!(low.report().compiled_t, 7);
        let mut reference = Circuit::new(3);
        reference.add(GateKind::Toffoli, &[0, 1, 2]);
        let mut prep = Circuit::new(3);
        for q in 0..3 {
            prep.add(GateKind::H, &[q]);
            prep.add(GateKind::T, &[q]);
        }
        let a = run(3, &prep, &low);
        let b = run(3, &prep, &reference);
        for i in 0..8 {
            assert!((a.amplitude(i) - b.amplitude(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn toffoli_costs() {
        assert_eq!(lower_toffoli(ToffoliMode::GidneyAndMeasured).report().compiled_t, 4);
        assert_eq!(lower_toffoli(ToffoliMode::Textbook7T).report().compiled_t, 7);
    }

    #[test]
    fn three_controlled_x_v_chain() {
        let c = lower_mcx(3, ToffoliMode::GidneyAndMeasured);
        assert_eq!(c.num_qubits(), 6);
        assert_eq!(c.register(RegisterRole::Ancilla).unwrap().len, 2);
        assert_eq!(c.report().compiled_t, 8);
        for input in 0..16usize {
            let s = run(6, &basis_prep(6, input), &c);
            let want = if input & 7 == 7 { input ^ 8 } else { input };
            assert!((s.amplitude(want) - Complex64::new(1.0, 0.0)).norm() < 1e-12, "input {input}");
        }
    }

    #[test]
    fn clifford_input_is_unchanged() {
        let mut c = Circuit::new(3);
        c.add(GateKind::H, &[0]);
        c.add(GateKind::Cnot, &[0, 1]);
        c.add(GateKind::S, &[2]);
        c.add(GateKind::X, &[1]);
        let (out, rep) = compile_circuit(&c, &SynthesisConfig::new(10).unwrap()).unwrap();
        assert_eq!(out.gates(), c.gates());
        assert_eq!(rep.compiled_t, 0);
        assert_eq!(rep.histogram, c.report().histogram);
    }

    #[test]
    fn exact_ry_has_no_t() {
        let mut c = Circuit::new(1);
        c.add(GateKind::Ry(Angle::new(PI / 2.0)), &[0]);
        let r = compile_with_stats(&c, &SynthesisConfig::new(10).unwrap()).unwrap();
        assert_eq!(r.report.compiled_t, 0);
        assert_eq!(r.stats.exact_rotations, 1);
        let s = simulate(&r.circuit, 4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [Complex64::new(h, 0.0), Complex64::new(h, 0.0)];
        assert!(fidelity_state(s.amplitudes(), &want).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn ry_rewrite() {
        let w = rewrite_ry(0.0, 1e-3).unwrap();
        assert_eq!(w, vec![GateKind::Sdg, GateKind::H, GateKind::H, GateKind::S]);
        let w = rewrite_ry(PI, 1e-3).unwrap();
        let m = crate::sim::ops::word_matrix(&w);
        // -iY = [[0, -1], [1, 0]]
        let target = [[Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)], [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]];
        let tr: Complex64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| target[i][j].conj() * m[i][j]).sum();
        assert!((tr.norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rz_examples() {
        assert!(synthesize_rz(0.0, 1e-3).unwrap().word.is_empty());
        assert_eq!(synthesize_rz(PI / 4.0, 1e-3).unwrap().word, vec![GateKind::T]);
        let eps = 0.5f64.powi(10);
        let r = synthesize_rz(0.1, eps).unwrap();
        assert!(!r.exact);
        assert!(word_rz_distance(&r.word, 0.1) <= eps);
        assert!(r.t_count() <= 4 * 10 + 20);
        assert!(synthesize_rz(0.1, 0.0).is_err());
        assert!(synthesize_rz(0.1, -0.5).is_err());
    }

    #[test]
    fn ring_detected_angle_is_exact() {
        // Rz(pi/4) half-angle state is exact; so is 2 atan2 of a T-state amplitude pair
        let r = synthesize_rz(PI / 4.0 + 2.0 * PI, 1e-3).unwrap();
        assert!(r.exact);
        let theta = 2.0 * (0.5f64.sqrt() * (PI / 8.0).sin()).atan2((PI / 8.0).cos());
        let r = synthesize_rz(theta, 1e-3);
        assert!(r.is_ok());
    }

    #[test]
    fn cost_model_placeholders() {
        let mut c = Circuit::new(1);
        c.add(GateKind::Ry(Angle::new(0.3)), &[0]);
        let cfg = SynthesisConfig::new(8).unwrap().with_cost_model(true);
        let r = compile_with_stats(&c, &cfg).unwrap();
        assert_eq!(r.stats.placeholder_rotations, 1);
        assert_eq!(r.stats.estimated_t, 35);
        assert_eq!(r.report.count("RZ"), 1);
    }

    #[test]
    fn controlled_rotations_compile_faithfully() {
        let mut c = Circuit::new(4);
        c.add(GateKind::H, &[0]);
        c.add(GateKind::H, &[1]);
        c.add(GateKind::H, &[2]);
        c.add(GateKind::McRy { angle: Angle::new(0.9), mask: vec![true, false, true] }, &[0, 1, 2, 3]);
        c.add(GateKind::UcRy { angles: vec![Angle::new(0.2), Angle::new(-1.1)] }, &[3, 0]);
        c.add(GateKind::CSwap, &[3, 1, 2]);
        let cfg = SynthesisConfig::new(16).unwrap();
        let r = compile_with_stats(&c, &cfg).unwrap();
        let allowed = ["X", "H", "S", "SDG", "T", "TDG", "CNOT", "ANDU"];
        assert!(r.report.histogram.keys().all(|k| allowed.contains(&k.as_str())));
        let logical = simulate(&c, 26).unwrap();
        let compiled = simulate(&r.circuit, 26).unwrap();
        let mut embedded = vec![Complex64::default(); compiled.amplitudes().len()];
        embedded[..16].copy_from_slice(logical.amplitudes());
        let f = fidelity_state(&embedded, compiled.amplitudes()).unwrap();
        let budget = r.stats.approximate_rotations as f64 * cfg.eps();
        assert!(f >= 1.0 - budget * budget - 1e-9, "f = {f}");
    }
}
