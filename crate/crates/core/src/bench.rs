//! Matched-precision sweeps: one `b` drives both the rotation synthesis
//! tolerance `2^-b` and the alias-table bit width.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;

use crate::alias::{
    alias_circuit, alias_resources, build_alias_table, realized_marginal_f64, AliasBackend,
};
use crate::circuit::{Circuit, GateKind, RegisterRole, ResourceReport};
use crate::cliffordt::{compile_with_stats, SynthesisConfig, ToffoliMode};
use crate::error::{Error, Result};
use crate::rotation::{synthesize_dense, synthesize_sparse, TargetState};
use crate::sim::{
    address_marginal_sparse, dense_work, infidelity_prob, infidelity_state, infidelity_state_sparse, simulate, simulate_sparse,
    simulate_sparse_capped, DEFAULT_QUBIT_BUDGET,
};
use crate::states::{BenchmarkSpec, Family};

pub const CSV_HEADER: [&str; 12] = [
    "family",
    "n",
    "seed",
    "method",
    "b",
    "t_proxy",
    "compiled_T",
    "total_gates",
    "qubits",
    "infidelity",
    "fidelity_kind",
    "synth_time_ms",
];

/// Sampling pipelines are simulated when `n + b` is at most this; larger ones
/// use the exact realized marginal.
const SAMPLING_SIM_BITS: usize = 12;

/// Rotation rows try the sparse simulator up to this many basis states.
const SPARSE_SUPPORT_CAP: usize = 1 << 16;

/// Dense fallback limit in amplitude updates, about a minute on one core.
const DENSE_WORK_CAP: f64 = 2.75e11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Dense,
    Sparse,
    Qrom,
    SelectSwap,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Dense, Method::Sparse, Method::Qrom, Method::SelectSwap];

    pub fn is_sampling(&self) -> bool {
        matches!(self, Method::Qrom | Method::SelectSwap)
    }

    fn alias_backend(&self) -> Option<AliasBackend> {
        match self {
            Method::Qrom => Some(AliasBackend::Qrom),
            Method::SelectSwap => Some(AliasBackend::SelectSwap),
            _ => None,
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dense" => Method::Dense,
            "sparse" => Method::Sparse,
            "qrom" => Method::Qrom,
            "selectswap" => Method::SelectSwap,
            other => return Err(Error::parameter(format!("unknown method `{other}`"))),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dense => "dense",
            Method::Sparse => "sparse",
            Method::Qrom => "qrom",
            Method::SelectSwap => "selectswap",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FidelityKind {
    State,
    Prob,
}

impl fmt::Display for FidelityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FidelityKind::State => "state",
            FidelityKind::Prob => "prob",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Largest compiled circuit simulated densely for rotation rows.
    pub budget_qubits: usize,
    pub toffoli_mode: ToffoliMode,
    /// Charge non-exact rotations by the cost model instead of synthesizing them.
    pub cost_model: bool,
    /// Evaluate infidelity; `false` gives counts only.
    pub simulate: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            budget_qubits: DEFAULT_QUBIT_BUDGET,
            toffoli_mode: ToffoliMode::GidneyAndMeasured,
            cost_model: false,
            simulate: true,
        }
    }
}

/// One `(instance, method, b)` measurement.
///
/// `t_proxy` is the logical proxy (T gates plus four per Toffoli-equivalent)
/// with every rotation charged the T gates of its synthesized word;
/// `compiled_t` counts literal T gates after lowering in the configured
/// Toffoli mode. `infidelity` is `None` when the instance is too large to
/// evaluate (or rotations were only cost-modelled).
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub method: Method,
    pub b: u32,
    pub t_proxy: usize,
    pub compiled_t: usize,
    pub total_gates: usize,
    pub qubits: usize,
    pub infidelity: Option<f64>,
    pub fidelity_kind: FidelityKind,
    pub synth_time_ms: f64,
}

impl SweepRow {
    pub fn record(&self) -> [String; 12] {
        [
            self.family.clone(),
            self.n.to_string(),
            self.seed.to_string(),
            self.method.to_string(),
            self.b.to_string(),
            self.t_proxy.to_string(),
            self.compiled_t.to_string(),
            self.total_gates.to_string(),
            self.qubits.to_string(),
            self.infidelity.map_or("NA".to_string(), |v| format!("{v:.15e}")),
            self.fidelity_kind.to_string(),
            format!("{:.3}", self.synth_time_ms),
        ]
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.record()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// `p_j = alpha_j^2` over all `2^n` indices.
pub fn distribution(state: &TargetState) -> Vec<f64> {
    let mut p = vec![0.0; 1usize << state.num_qubits()];
    for (j, a) in state.iter() {
        p[j as usize] = a * a;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    p
}

/// Logical circuit of one method: rotation circuits ignore `b`; sampling
/// circuits quantize the alias table to `b` bits.
pub fn synthesize(state: &TargetState, method: Method, b: u32) -> Result<Circuit> {
    match method {
        Method::Dense => synthesize_dense(state),
        Method::Sparse => synthesize_sparse(state),
        Method::Qrom | Method::SelectSwap => {
            let table = build_alias_table(&distribution(state), b)?;
            Ok(alias_circuit(&table, method.alias_backend().expect("sampling method"))?.0)
        }
    }
}

fn prototype(tag: &str) -> Option<GateKind> {
    Some(match tag {
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
        _ => return None,
    })
}

/// Compiled counts of a rotation-free logical histogram, obtained by lowering one
/// prototype per gate tag and scaling.
pub fn lowered_report(logical: &ResourceReport, mode: ToffoliMode) -> Result<ResourceReport> {
    type Table = HashMap<(String, ToffoliMode), (BTreeMap<String, usize>, usize)>;
    static CACHE: OnceLock<std::sync::Mutex<Table>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    let mut extra = 0;
    for (tag, &count) in &logical.histogram {
        let key = (tag.clone(), mode);
        let cached = cache.lock().expect("cache lock").get(&key).cloned();
        let (h, anc) = match cached {
            Some(v) => v,
            None => {
                let kind = prototype(tag)
                    .ok_or_else(|| Error::Compile(format!("no closed-form lowering for `{tag}`")))?;
                let arity = kind.fixed_arity().expect("prototype gates have fixed arity");
                let mut c = Circuit::new(arity);
                c.push(kind, (0..arity).collect())?;
                let out = compile_with_stats(&c, &SynthesisConfig::new(1)?.with_mode(mode))?;
                let v = (out.report.histogram.clone(), out.report.qubits - arity);
                cache.lock().expect("cache lock").insert(key, v.clone());
                v
            }
        };
        extra = extra.max(anc);
        for (t, k) in h {
            *hist.entry(t).or_insert(0) += k * count;
        }
    }
    Ok(ResourceReport::from_histogram(hist, logical.qubits + extra))
}

/// Sparse first, since ancilla-heavy circuits often keep a small support; then
/// dense while the work stays bounded; otherwise unavailable.
fn rotation_infidelity(state: &TargetState, c: &Circuit, cfg: &SweepConfig) -> Result<Option<f64>> {
    let target = state.to_complex(state.num_qubits());
    let work = dense_work(c);
    // Past a sixteenth of the full space the dense path is faster anyway.
    let cap = if work <= DENSE_WORK_CAP { SPARSE_SUPPORT_CAP.min(1 << c.num_qubits().saturating_sub(4)) } else { SPARSE_SUPPORT_CAP };
    match simulate_sparse_capped(c, cap) {
        Ok(Some(s)) => return Ok(Some(infidelity_state_sparse(&target, &s))),
        Ok(None) | Err(Error::Capacity { .. }) => {}
        Err(e) => return Err(e),
    }
    if work > DENSE_WORK_CAP {
        return Ok(None);
    }
    let sv = simulate(c, cfg.budget_qubits)?;
    Ok(Some(infidelity_state(&state.to_complex(c.num_qubits()), sv.amplitudes())?))
}

fn rotation_row(state: &TargetState, method: Method, b: u32, cfg: &SweepConfig) -> Result<RowCore> {
    let start = Instant::now();
    let logical = synthesize(state, method, b)?;
    let scfg = SynthesisConfig::new(b)?.with_mode(cfg.toffoli_mode).with_cost_model(cfg.cost_model);
    let compiled = compile_with_stats(&logical, &scfg)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let infidelity = if cfg.simulate && !cfg.cost_model && compiled.circuit.num_qubits() <= cfg.budget_qubits {
        rotation_infidelity(state, &compiled.circuit, cfg)?
    } else {
        None
    };
    Ok(RowCore {
        t_proxy: logical.report().t_proxy + compiled.stats.rotation_t,
        compiled_t: compiled.stats.estimated_t,
        total_gates: compiled.report.total_gates,
        qubits: compiled.report.qubits,
        infidelity,
        kind: FidelityKind::State,
        ms: elapsed,
    })
}

fn sampling_row(state: &TargetState, method: Method, b: u32, cfg: &SweepConfig) -> Result<RowCore> {
    let backend = method.alias_backend().expect("sampling method");
    let start = Instant::now();
    let p = distribution(state);
    let table = build_alias_table(&p, b)?;
    let logical = alias_resources(&table, backend)?;
    let lowered = lowered_report(&logical, cfg.toffoli_mode)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let infidelity = if !cfg.simulate {
        None
    } else {
        let mut marginal = None;
        if table.address_bits() + b as usize <= SAMPLING_SIM_BITS {
            let (c, _) = alias_circuit(&table, backend)?;
            // Wide SelectSwap workspaces can exceed the sparse index width.
            match simulate_sparse(&c) {
                Ok(s) => {
                    let addr = c.register(RegisterRole::Address).map_or(0..0, |r| r.range());
                    marginal = Some(address_marginal_sparse(&s, addr));
                }
                Err(Error::Capacity { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let marginal = marginal.unwrap_or_else(|| realized_marginal_f64(&table));
        Some(infidelity_prob(&p, &marginal)?)
    };
    Ok(RowCore {
        t_proxy: logical.t_proxy,
        compiled_t: lowered.compiled_t,
        total_gates: lowered.total_gates,
        qubits: lowered.qubits,
        infidelity,
        kind: FidelityKind::Prob,
        ms: elapsed,
    })
}

struct RowCore {
    t_proxy: usize,
    compiled_t: usize,
    total_gates: usize,
    qubits: usize,
    infidelity: Option<f64>,
    kind: FidelityKind,
    ms: f64,
}

/// One sweep point on an already generated state.
pub fn run_point(spec: &BenchmarkSpec, state: &TargetState, method: Method, b: u32, cfg: &SweepConfig) -> Result<SweepRow> {
    if b == 0 {
        return Err(Error::parameter("b must be at least 1"));
    }
    let core = if method.is_sampling() {
        sampling_row(state, method, b, cfg)?
    } else {
        rotation_row(state, method, b, cfg)?
    };
    Ok(SweepRow {
        family: spec.label(),
        n: state.num_qubits(),
        seed: spec.seed,
        method,
        b,
        t_proxy: core.t_proxy,
        compiled_t: core.compiled_t,
        total_gates: core.total_gates,
        qubits: core.qubits,
        infidelity: core.infidelity,
        fidelity_kind: core.kind,
        synth_time_ms: core.ms,
    })
}

/// Every `(method, b)` pair on the instance, run in parallel and returned in
/// `(method, b)` order.
pub fn run_sweep(spec: &BenchmarkSpec, methods: &[Method], bs: &[u32], cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if methods.is_empty() {
        return Err(Error::parameter("no methods given"));
    }
    if bs.is_empty() || bs.contains(&0) {
        return Err(Error::parameter("b values must be nonempty and at least 1"));
    }
    let state = spec.generate()?;
    let mut jobs: Vec<(Method, u32)> = methods.iter().flat_map(|&m| bs.iter().map(move |&b| (m, b))).collect();
    jobs.sort_unstable();
    jobs.dedup();
    jobs.par_iter().map(|&(m, b)| run_point(spec, &state, m, b, cfg)).collect()
}

/// Sweep plan for the Magnus family: sampling methods at `k = 1..=6`, rotation
/// methods at `k = 3..=6`, all at `b in {11, 18, 25}`.
pub fn magnus_plan(methods: &[Method]) -> Vec<(BenchmarkSpec, Vec<Method>)> {
    (1..=6)
        .filter_map(|k| {
            let ms: Vec<Method> = methods.iter().copied().filter(|m| m.is_sampling() || k >= 3).collect();
            let spec = BenchmarkSpec::new(Family::Magnus, 0, k, 0).ok()?;
            (!ms.is_empty()).then_some((spec, ms))
        })
        .collect()
}

pub const MAGNUS_BITS: [u32; 3] = [11, 18, 25];

/// Rows sorted by instance, then method, then `b`.
pub fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| {
        (&a.family, a.n, a.seed, a.method, a.b).cmp(&(&b.family, b.n, b.seed, b.method, b.b))
    });
}
