//! Acceptance checks runnable from the command line (`qsprep verify`).
//!
//! Each check is numbered; [`parse_tags`] accepts `all`, `quick`, single
//! numbers and ranges such as `4-7`.

use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alias::{
    build_alias_table, build_qrom, build_selectswap, optimal_lambda, prepare_alias_state, realized_marginal,
    realized_marginal_f64, AliasBackend, LookupBackend, LookupSpec,
};
use crate::bench::{run_sweep, write_csv, Method, SweepConfig, CSV_HEADER};
use crate::circuit::{Circuit, RegisterRole};
use crate::cliffordt::{compile_with_stats, exactly_preparable, synthesize_rz, word_rz_distance, SynthesisConfig};
use crate::error::{Error, Result};
use crate::rotation::{synthesize_dense, synthesize_sparse, TargetState};
use crate::sim::{
    address_marginal_sparse, fidelity_prob, fidelity_state, read_bits, simulate, simulate_basis, simulate_sparse,
    write_bits, DEFAULT_QUBIT_BUDGET,
};
use crate::states::{gen_dicke, gen_magnus, gen_t_friendly, gen_w, magnus_index, magnus_qubits, permutations, BenchmarkSpec, Family};

pub const CHECKS: [(u8, &str); 14] = [
    (1, "single-qubit compare-swap cost 4b+4"),
    (2, "quantization error bound"),
    (3, "bit width from target infidelity"),
    (4, "circuit marginal equals realized marginal"),
    (5, "lookup basis equivalence"),
    (6, "lambda optimizer"),
    (7, "rotation logical correctness"),
    (8, "compiled rotation accuracy"),
    (9, "Rz synthesis contract"),
    (10, "T-friendly exactness"),
    (11, "SelectSwap never costs more than QROM"),
    (12, "support sizes"),
    (13, "Magnus coefficients"),
    (14, "THC toy bench smoke"),
];

const QUICK: [u8; 6] = [1, 2, 3, 6, 12, 13];

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({}; {:.1} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Check ids selected by a comma-separated tag list.
pub fn parse_tags(tags: &str) -> Result<Vec<u8>> {
    let mut ids = Vec::new();
    for tag in tags.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tag {
            "all" => ids.extend(CHECKS.iter().map(|c| c.0)),
            "quick" => ids.extend(QUICK),
            _ => {
                let bad = || Error::parameter(format!("unknown verify tag `{tag}`"));
                let (lo, hi) = match tag.split_once('-') {
                    Some((a, b)) => (a.parse::<u8>().map_err(|_| bad())?, b.parse::<u8>().map_err(|_| bad())?),
                    None => {
                        let v = tag.parse::<u8>().map_err(|_| bad())?;
                        (v, v)
                    }
                };
                if lo == 0 || hi as usize > CHECKS.len() || lo > hi {
                    return Err(bad());
                }
                ids.extend(lo..=hi);
            }
        }
    }
    if ids.is_empty() {
        return Err(Error::parameter("no verify tags given"));
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

pub fn run_check(id: u8) -> CheckOutcome {
    let title = CHECKS.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let start = Instant::now();
    let result = match id {
        1 => check_single_qubit_cost(),
        2 => check_error_bound(),
        3 => check_bits_for_eta(),
        4 => check_circuit_marginal(),
        5 => check_lookup(),
        6 => check_lambda(),
        7 => check_rotation_logical(),
        8 => check_compiled_accuracy(),
        9 => check_rz_contract(),
        10 => check_t_friendly(),
        11 => check_backend_order(),
        12 => check_supports(),
        13 => check_magnus(),
        14 => check_thc_smoke(),
        _ => Err(Error::parameter(format!("no check numbered {id}"))),
    };
    let (passed, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { id, title, passed, detail, elapsed: start.elapsed() }
}

/// `Ok(Ok(detail))` passes, `Ok(Err(detail))` fails.
type Verdict = Result<std::result::Result<String, String>>;

fn verdict(ok: bool, detail: String) -> Verdict {
    Ok(if ok { Ok(detail) } else { Err(detail) })
}

fn single_qubit_ensemble() -> Vec<[f64; 2]> {
    (0..100u64)
        .map(|seed| {
            let p0: f64 = ChaCha8Rng::seed_from_u64(seed).gen();
            [p0, 1.0 - p0]
        })
        .collect()
}

fn check_single_qubit_cost() -> Verdict {
    for b in 1..=12u32 {
        for backend in [AliasBackend::Qrom, AliasBackend::SelectSwap] {
            let prep = prepare_alias_state(&[0.3, 0.7], b, backend)?;
            let got = prep.compare_swap_report.t_proxy;
            if got != 4 * b as usize + 4 {
                return verdict(false, format!("{backend} b = {b}: t_proxy {got}"));
            }
        }
    }
    verdict(true, "b = 1..12, both backends".into())
}

fn check_error_bound() -> Verdict {
    let mut worst_gap = f64::INFINITY;
    for p in single_qubit_ensemble() {
        for b in 1..=12u32 {
            let table = build_alias_table(&p, b)?;
            let delta = BigRational::new(1.into(), num_bigint::BigInt::from(1u64 << b));
            for (j, q) in realized_marginal(&table).iter().enumerate() {
                let exact = BigRational::from_f64(p[j]).expect("finite probability");
                if (q - &exact).abs() > delta {
                    return verdict(false, format!("p = {p:?}, b = {b}: bin {j} off by more than 2^-b"));
                }
            }
            let f = fidelity_prob(&p, &realized_marginal_f64(&table))?;
            let bound = (1.0 - 0.5f64.powi(b as i32)).powi(2);
            if f < bound {
                return verdict(false, format!("p = {p:?}, b = {b}: F_prob {f} below {bound}"));
            }
            worst_gap = worst_gap.min(f - bound);
        }
    }
    verdict(true, format!("100 distributions x 12 widths, min F_prob slack {worst_gap:.3e}"))
}

fn check_bits_for_eta() -> Verdict {
    for eta in [1e-1, 1e-2, 1e-3] {
        let b = (2.0f64 / eta).log2().ceil() as u32;
        for p in single_qubit_ensemble() {
            let f = fidelity_prob(&p, &realized_marginal_f64(&build_alias_table(&p, b)?))?;
            if f < 1.0 - eta {
                return verdict(false, format!("eta = {eta}, b = {b}, p = {p:?}: F_prob {f}"));
            }
        }
    }
    verdict(true, "eta in {1e-1, 1e-2, 1e-3}".into())
}

fn check_circuit_marginal() -> Verdict {
    let mut worst: f64 = 0.0;
    for n in 1..=3usize {
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + seed);
            let raw: Vec<f64> = (0..1 << n).map(|_| rng.gen::<f64>()).collect();
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            for b in 1..=5u32 {
                for backend in [AliasBackend::Qrom, AliasBackend::SelectSwap] {
                    let prep = prepare_alias_state(&p, b, backend)?;
                    let sim = address_marginal_sparse(&simulate_sparse(&prep.circuit)?, prep.address_qubits());
                    for (x, y) in sim.iter().zip(realized_marginal_f64(&prep.table)) {
                        worst = worst.max((x - y).abs());
                    }
                }
            }
        }
    }
    verdict(worst <= 1e-9, format!("max deviation {worst:.3e}"))
}

fn lookup_matches(c: &Circuit, spec: &LookupSpec) -> Result<bool> {
    let n = spec.address_bits();
    let w = spec.width();
    let data = c.register(RegisterRole::Data).map_or(n, |r| r.start);
    for j in 0..spec.len() as u64 {
        for z in 0..1u64 << w {
            let mut bits = vec![false; c.num_qubits()];
            write_bits(&mut bits, 0, n, j);
            write_bits(&mut bits, data, w, z);
            let out = simulate_basis(c, &bits)?;
            if read_bits(&out, 0, n) != j || read_bits(&out, data, w) != z ^ spec.words()[j as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_lookup() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = 0;
    for l in [1usize, 2, 4, 8, 16] {
        for w in 1..=4usize {
            for _ in 0..5 {
                let words: Vec<u64> = (0..l).map(|_| rng.gen_range(0..1u64 << w)).collect();
                let mut backends = vec![LookupBackend::Qrom];
                backends.extend((0..=l.trailing_zeros()).map(|e| LookupBackend::SelectSwap(1 << e)));
                for backend in backends {
                    let spec = LookupSpec::new(words.clone(), w, backend)?;
                    let c = match backend {
                        LookupBackend::Qrom => build_qrom(&spec)?,
                        LookupBackend::SelectSwap(_) => build_selectswap(&spec)?,
                    };
                    if !lookup_matches(&c, &spec)? {
                        return verdict(false, format!("L = {l}, w = {w}, {backend:?}, words {words:?}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    verdict(true, format!("{cases} lookups"))
}

fn check_lambda() -> Verdict {
    for l in 2..=4096usize {
        for w in 1..=32usize {
            let cost = |lambda: usize| 4 * l.div_ceil(lambda) + 8 * lambda * w;
            let mut best = 1;
            for e in 1..=l.next_power_of_two().trailing_zeros() {
                if cost(1 << e) < cost(best) {
                    best = 1 << e;
                }
            }
            let got = optimal_lambda(l, w);
            if cost(got) != cost(best) || got != best {
                return verdict(false, format!("L = {l}, w = {w}: got {got}, scan {best}"));
            }
        }
    }
    verdict(true, "L = 2..4096, w = 1..32".into())
}

fn logical_instances() -> Result<Vec<(String, TargetState)>> {
    let mut out = Vec::new();
    let mut push = |spec: BenchmarkSpec| -> Result<()> {
        let name = format!("{} n={} k={} seed={}", spec.family, spec.n, spec.k, spec.seed);
        out.push((name, spec.generate()?));
        Ok(())
    };
    for n in 1..=8 {
        push(BenchmarkSpec::new(Family::W, n, 0, 0)?)?;
        for k in 1..n {
            push(BenchmarkSpec::new(Family::Dicke, n, k, 0)?)?;
        }
        push(BenchmarkSpec::new(Family::TFriendly, n, 0, n as u64)?)?;
        if n >= 2 {
            for family in [Family::DenseRandom, Family::SparseUniform, Family::SparseRandom] {
                push(BenchmarkSpec::new(family, n, 0, n as u64)?)?;
            }
        }
    }
    for n in 3..=8 {
        push(BenchmarkSpec::new(Family::Syk, n, 0, 1)?)?;
    }
    for k in 1..=4 {
        push(BenchmarkSpec::new(Family::Magnus, 0, k, 0)?)?;
    }
    push(BenchmarkSpec::new(Family::ThcToy, 8, 0, 0)?)?;
    Ok(out)
}

fn check_rotation_logical() -> Verdict {
    let mut worst: f64 = 0.0;
    let instances = logical_instances()?;
    for (name, state) in &instances {
        for (label, c) in [("dense", synthesize_dense(state)?), ("sparse", synthesize_sparse(state)?)] {
            let sv = simulate(&c, DEFAULT_QUBIT_BUDGET)?;
            let f = fidelity_state(sv.amplitudes(), &state.to_complex(c.num_qubits()))?;
            worst = worst.max(1.0 - f);
            if f < 1.0 - 1e-10 {
                return verdict(false, format!("{name} {label}: F_state {f}"));
            }
        }
    }
    verdict(true, format!("{} instances, max infidelity {worst:.3e}", instances.len()))
}

fn check_compiled_accuracy() -> Verdict {
    let states = [
        ("w8", gen_w(8)?),
        ("dicke8_2", gen_dicke(8, 2)?),
        ("dense_random8", BenchmarkSpec::new(Family::DenseRandom, 8, 0, 1)?.generate()?),
    ];
    let mut lines = Vec::new();
    for (name, state) in &states {
        let logical = synthesize_dense(state)?;
        for b in [6u32, 10, 14] {
            let out = compile_with_stats(&logical, &SynthesisConfig::new(b)?)?;
            let sv = simulate(&out.circuit, DEFAULT_QUBIT_BUDGET)?;
            let f = fidelity_state(sv.amplitudes(), &state.to_complex(out.circuit.num_qubits()))?;
            let n_rot = out.stats.approximate_rotations as f64;
            let bound = 1.0 - (n_rot * 0.5f64.powi(b as i32)).powi(2) - 1e-9;
            if f < bound {
                return verdict(false, format!("{name} b = {b}: F_state {f} < {bound}"));
            }
            lines.push(format!("{name}/b{b}: 1-F {:.2e}", 1.0 - f));
        }
    }
    verdict(true, lines.join(", "))
}

fn check_rz_contract() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let angles: Vec<f64> = (0..200).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    let (mut sx, mut sy, mut sxx, mut sxy, mut m) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for b in [5i32, 10, 15, 20] {
        let eps = 0.5f64.powi(b);
        for &theta in &angles {
            let r = synthesize_rz(theta, eps)?;
            let d = word_rz_distance(&r.word, theta);
            if d > eps {
                return verdict(false, format!("theta = {theta}, eps = 2^-{b}: distance {d}"));
            }
            let (x, y) = (b as f64, r.t_count() as f64);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            m += 1.0;
        }
    }
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    verdict(slope <= 4.5, format!("T-count slope {slope:.3} per bit"))
}

fn check_t_friendly() -> Verdict {
    let mut count = 0;
    for n in 2..=6usize {
        for seed in 0..5u64 {
            let (state, stages) = gen_t_friendly(n, seed)?;
            for stage in &stages {
                for &theta in &stage.angles {
                    if exactly_preparable((theta / 2.0).cos(), (theta / 2.0).sin()).is_none() {
                        return verdict(false, format!("n = {n}, seed = {seed}: angle {theta} not exact"));
                    }
                }
            }
            let out = compile_with_stats(&synthesize_dense(&state)?, &SynthesisConfig::new(10)?)?;
            let sv = simulate(&out.circuit, DEFAULT_QUBIT_BUDGET)?;
            let f = fidelity_state(sv.amplitudes(), &state.to_complex(out.circuit.num_qubits()))?;
            if (1.0 - f).abs() > 1e-12 || out.stats.approximate_rotations != 0 {
                return verdict(false, format!("n = {n}, seed = {seed}: F_state {f}"));
            }
            count += 1;
        }
    }
    verdict(true, format!("{count} instances exact"))
}

fn check_backend_order() -> Verdict {
    let mut specs = Vec::new();
    specs.push(BenchmarkSpec::new(Family::W, 8, 0, 0)?);
    for k in [2, 3] {
        specs.push(BenchmarkSpec::new(Family::Dicke, 8, k, 0)?);
    }
    for family in [Family::DenseRandom, Family::SparseUniform, Family::SparseRandom, Family::TFriendly] {
        specs.push(BenchmarkSpec::new(family, 8, 0, 0)?);
    }
    for k in 1..=4 {
        specs.push(BenchmarkSpec::new(Family::Magnus, 0, k, 0)?);
    }
    specs.push(BenchmarkSpec::new(Family::ThcToy, 8, 0, 0)?);
    for n in 3..=8 {
        specs.push(BenchmarkSpec::new(Family::Syk, n, 0, 0)?);
    }
    let cfg = SweepConfig { simulate: false, ..SweepConfig::default() };
    let bs: Vec<u32> = (4..=12).collect();
    let mut pairs = 0;
    for spec in &specs {
        let rows = run_sweep(spec, &[Method::Qrom, Method::SelectSwap], &bs, &cfg)?;
        let (q, s) = rows.split_at(bs.len());
        for (a, b) in q.iter().zip(s) {
            if b.t_proxy > a.t_proxy {
                return verdict(false, format!("{} b = {}: selectswap {} > qrom {}", spec.label(), a.b, b.t_proxy, a.t_proxy));
            }
            pairs += 1;
        }
    }
    verdict(true, format!("{pairs} row pairs"))
}

fn check_supports() -> Verdict {
    let checks = [
        ("w8", gen_w(8)?.support(), 8),
        ("dicke8_2", gen_dicke(8, 2)?.support(), 28),
        ("dicke8_3", gen_dicke(8, 3)?.support(), 56),
    ];
    for (name, got, want) in checks {
        if got != want {
            return verdict(false, format!("{name}: support {got}, expected {want}"));
        }
    }
    let mut fact = 1;
    for k in 1..=6usize {
        fact *= k;
        let s = gen_magnus(k)?.support();
        if s != fact {
            return verdict(false, format!("magnus{k}: support {s}, expected {fact}"));
        }
    }
    let occupied = |k: usize| -> Result<(usize, usize)> { Ok((gen_magnus(k)?.support(), 1 << magnus_qubits(k))) };
    let ok = occupied(3)? == (6, 64) && occupied(4)? == (24, 256);
    verdict(ok, "w8, dicke8 k = 2, 3, magnus k = 1..6".into())
}

fn check_magnus() -> Verdict {
    for k in 1..=5usize {
        let state = gen_magnus(k)?;
        let coefficient = |p: &[usize]| {
            let mut d = 0;
            for i in 0..p.len().saturating_sub(1) {
                if p[i] > p[i + 1] {
                    d += 1;
                }
            }
            let mut binom = 1.0;
            for i in 0..d {
                binom = binom * (k - 1 - i) as f64 / (i + 1) as f64;
            }
            (if d % 2 == 0 { 1.0 } else { -1.0 }) / (k as f64 * binom)
        };
        let perms = permutations(k);
        let reference: f64 = perms.iter().map(|p| coefficient(p).powi(2)).sum::<f64>().sqrt();
        for p in &perms {
            let got = state.amplitude(magnus_index(p)) * reference;
            let want = coefficient(p);
            if (got - want).abs() > 1e-12 * want.abs() {
                return verdict(false, format!("k = {k}, perm {p:?}: {got} vs {want}"));
            }
        }
    }
    verdict(true, "k = 1..5".into())
}

fn check_thc_smoke() -> Verdict {
    let spec = BenchmarkSpec::new(Family::ThcToy, 8, 0, 0)?;
    let bs: Vec<u32> = (4..=8).collect();
    let rows = run_sweep(&spec, &Method::ALL, &bs, &SweepConfig::default())?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    let text = String::from_utf8(buf).map_err(|e| Error::validation(e.to_string()))?;
    let mut lines = text.lines();
    let header_ok = lines.next() == Some(CSV_HEADER.join(",").as_str());
    let body: Vec<&str> = lines.collect();
    let complete = body.iter().all(|l| l.split(',').count() == CSV_HEADER.len() && l.split(',').all(|f| !f.is_empty()));
    verdict(
        header_ok && complete && body.len() == 4 * bs.len(),
        format!("{} rows, schema {}", body.len(), if header_ok && complete { "complete" } else { "broken" }),
    )
}
