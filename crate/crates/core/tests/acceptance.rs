//! Acceptance criteria 1-14, one test each. Every test writes a
//! `criterion N: PASS|FAIL` line straight to stdout (visible without
//! `--nocapture`) before asserting.

use std::collections::HashMap;
use std::io::Write;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsprep::alias::{
    alias_circuit, build_alias_table, build_qrom, build_selectswap, optimal_lambda, realized_marginal, AliasBackend,
    AliasTable, LookupBackend, LookupSpec,
};
use qsprep::bench::{run_sweep, Method, SweepConfig};
use qsprep::cliffordt::{compile_with_stats, exactly_preparable, synthesize_rz, SynthesisConfig};
use qsprep::rotation::{synthesize_dense, synthesize_sparse};
use qsprep::states::{gen_dicke, gen_magnus, gen_t_friendly, gen_w, magnus_index, magnus_qubits, permutations, BenchmarkSpec, Family};
use qsprep::{Circuit, GateKind, RegisterRole, TargetState};

fn report(id: u32, ok: bool, detail: &str) {
    let line = format!("criterion {id}: {} - {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

// ---------------------------------------------------------------------------
// Reference sparse simulator, written directly from the gate definitions.

type State = HashMap<u64, Complex64>;
type M2 = [[Complex64; 2]; 2];

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gate_matrix(kind: &GateKind) -> Option<M2> {
    let z = cx(0.0, 0.0);
    let one = cx(1.0, 0.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Some(match kind {
        GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::And | GateKind::AndUncompute => [[z, one], [one, z]],
        GateKind::H => [[cx(r, 0.0), cx(r, 0.0)], [cx(r, 0.0), cx(-r, 0.0)]],
        GateKind::S => [[one, z], [z, cx(0.0, 1.0)]],
        GateKind::Sdg => [[one, z], [z, cx(0.0, -1.0)]],
        GateKind::T => [[one, z], [z, cx(r, r)]],
        GateKind::Tdg => [[one, z], [z, cx(r, -r)]],
        GateKind::Rz(a) => {
            let h = a.radians() / 2.0;
            [[Complex64::from_polar(1.0, -h), z], [z, Complex64::from_polar(1.0, h)]]
        }
        GateKind::Ry(a) => ry(a.radians()),
        _ => return None,
    })
}

fn ry(theta: f64) -> M2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[cx(c, 0.0), cx(-s, 0.0)], [cx(s, 0.0), cx(c, 0.0)]]
}

/// Applies `m` to `target` on basis states where `fires` holds.
fn apply(state: &State, target: usize, m: &M2, fires: impl Fn(u64) -> bool) -> State {
    let mut out = State::with_capacity(state.len());
    let t = 1u64 << target;
    for (&i, &a) in state {
        if !fires(i) {
            *out.entry(i).or_default() += a;
            continue;
        }
        let col = ((i & t) != 0) as usize;
        *out.entry(i & !t).or_default() += m[0][col] * a;
        *out.entry(i | t).or_default() += m[1][col] * a;
    }
    out.retain(|_, a| a.norm_sqr() > 1e-32);
    out
}

fn run_circuit(c: &Circuit) -> State {
    let mut s = State::new();
    s.insert(0, cx(1.0, 0.0));
    for g in c.gates() {
        let q = &g.qubits;
        let on = |i: u64, k: usize| (i >> q[k]) & 1 == 1;
        s = match &g.kind {
            GateKind::Cnot => apply(&s, q[1], &gate_matrix(&g.kind).unwrap(), |i| on(i, 0)),
            GateKind::Toffoli | GateKind::And | GateKind::AndUncompute => {
                apply(&s, q[2], &gate_matrix(&g.kind).unwrap(), |i| on(i, 0) && on(i, 1))
            }
            GateKind::Swap | GateKind::CSwap => {
                let (ctl, a, b) = if q.len() == 3 { (Some(q[0]), q[1], q[2]) } else { (None, q[0], q[1]) };
                s.into_iter()
                    .map(|(i, amp)| {
                        let fire = ctl.map_or(true, |c| (i >> c) & 1 == 1);
                        let (x, y) = ((i >> a) & 1, (i >> b) & 1);
                        if fire && x != y {
                            (i ^ (1 << a) ^ (1 << b), amp)
                        } else {
                            (i, amp)
                        }
                    })
                    .collect()
            }
            GateKind::McRy { angle, mask } => {
                let target = *q.last().unwrap();
                apply(&s, target, &ry(angle.radians()), |i| mask.iter().enumerate().all(|(k, &want)| on(i, k) == want))
            }
            GateKind::UcRy { angles } => {
                let target = *q.last().unwrap();
                let k = q.len() - 1;
                let mut out = State::new();
                for (y, a) in angles.iter().enumerate() {
                    let part: State =
                        s.iter().filter(|(&i, _)| (0..k).all(|j| on(i, j) == ((y >> j) & 1 == 1))).map(|(&i, &v)| (i, v)).collect();
                    for (i, v) in apply(&part, target, &ry(a.radians()), |_| true) {
                        *out.entry(i).or_default() += v;
                    }
                }
                out
            }
            kind => apply(&s, q[0], &gate_matrix(kind).unwrap(), |_| true),
        };
    }
    s
}

/// `|<target|psi>|^2` with the target embedded on the low qubits.
fn state_fidelity(state: &State, target: &TargetState) -> f64 {
    let ip: Complex64 = target.iter().map(|(j, a)| state.get(&j).copied().unwrap_or_default() * a).sum();
    ip.norm_sqr()
}

fn address_marginal(state: &State, start: usize, len: usize) -> Vec<f64> {
    let mut out = vec![0.0; 1 << len];
    for (&i, a) in state {
        out[((i >> start) & ((1 << len) - 1)) as usize] += a.norm_sqr();
    }
    out
}

// ---------------------------------------------------------------------------
// Alias oracles.

/// Exact address distribution of the quantized alias pipeline: bin `i` keeps
/// itself with probability `keep_i / 2^b` and defers to `alias_i` otherwise.
fn oracle_marginal(table: &AliasTable) -> Vec<BigRational> {
    let l = table.len();
    let scale = BigInt::from(1u64) << table.bits();
    let mut out = vec![BigRational::zero(); l];
    for i in 0..l {
        let keep = BigRational::new(BigInt::from(table.keep()[i]), scale.clone());
        let weight = BigRational::new(BigInt::one(), BigInt::from(l));
        out[i] += &keep * &weight;
        out[table.alias()[i]] += (BigRational::one() - keep) * weight;
    }
    out
}

fn bhattacharyya_sq(p: &[f64], q: &[f64]) -> f64 {
    let s: f64 = p.iter().zip(q).map(|(a, b)| (a * b).sqrt()).sum();
    s * s
}

fn single_qubit_ensemble() -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..100)
        .map(|_| {
            let p0: f64 = rng.gen();
            [p0, 1.0 - p0]
        })
        .collect()
}

fn proxy_of(gates: &[qsprep::Gate]) -> usize {
    gates
        .iter()
        .map(|g| match g.kind {
            GateKind::T | GateKind::Tdg => 1,
            GateKind::Toffoli | GateKind::CSwap | GateKind::And => 4,
            _ => 0,
        })
        .sum()
}

#[test]
fn criterion_01_single_qubit_compare_swap_cost() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for b in 1..=12u32 {
        let table = build_alias_table(&[0.3, 0.7], b).unwrap();
        for backend in [AliasBackend::Qrom, AliasBackend::SelectSwap] {
            let (c, split) = alias_circuit(&table, backend).unwrap();
            let got = proxy_of(&c.gates()[split..]);
            if got != 4 * b as usize + 4 {
                bad.push(format!("{backend} b={b}: {got}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(1, bad.is_empty() && secs < 1.0, &format!("t_proxy = 4b + 4 for b = 1..12 both backends {bad:?} ({secs:.2} s)"));
}

#[test]
fn criterion_02_quantization_error_bound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in single_qubit_ensemble() {
        for b in 1..=12u32 {
            let table = build_alias_table(&p, b).unwrap();
            let realized = realized_marginal(&table);
            if realized != oracle_marginal(&table) {
                failures.push(format!("p={p:?} b={b}: realized marginal disagrees with oracle"));
            }
            let delta = BigRational::new(BigInt::one(), BigInt::from(1u64) << b);
            let exact: Vec<BigRational> = p.iter().map(|&x| BigRational::from_f64(x).unwrap()).collect();
            let max_dev = realized.iter().zip(&exact).map(|(a, b)| (a - b).abs()).max().unwrap();
            if max_dev > delta {
                failures.push(format!("p={p:?} b={b}: deviation {max_dev}"));
            }
            let q: Vec<f64> = realized.iter().map(|r| r.to_f64().unwrap()).collect();
            let f = bhattacharyya_sq(&p, &q);
            if f < (1.0 - 0.5f64.powi(b as i32)).powi(2) {
                failures.push(format!("p={p:?} b={b}: F_prob {f}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(2, failures.is_empty() && secs < 5.0, &format!("100 distributions x b = 1..12, failures {failures:?} ({secs:.2} s)"));
}

#[test]
fn criterion_03_bits_from_infidelity_target() {
    let start = Instant::now();
    let mut worst = Vec::new();
    let mut ok = true;
    for eta in [1e-1f64, 1e-2, 1e-3] {
        let b = (2.0 / eta).log2().ceil() as u32;
        let mut min_f = f64::INFINITY;
        for p in single_qubit_ensemble() {
            let table = build_alias_table(&p, b).unwrap();
            let q: Vec<f64> = oracle_marginal(&table).iter().map(|r| r.to_f64().unwrap()).collect();
            min_f = min_f.min(bhattacharyya_sq(&p, &q));
        }
        ok &= min_f >= 1.0 - eta;
        worst.push(format!("eta={eta} b={b} min F={min_f:.9}"));
    }
    let secs = start.elapsed().as_secs_f64();
    report(3, ok && secs < 1.0, &format!("{} ({secs:.2} s)", worst.join(", ")));
}

#[test]
fn criterion_04_circuit_marginal_matches_oracle() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for n in 1..=3usize {
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(77 + 100 * n as u64 + seed);
            let raw: Vec<f64> = (0..1 << n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            for b in 1..=5u32 {
                let table = build_alias_table(&p, b).unwrap();
                let oracle: Vec<f64> = oracle_marginal(&table).iter().map(|r| r.to_f64().unwrap()).collect();
                for backend in [AliasBackend::Qrom, AliasBackend::SelectSwap] {
                    let (c, _) = alias_circuit(&table, backend).unwrap();
                    let addr = c.register(RegisterRole::Address).unwrap();
                    let sim = address_marginal(&run_circuit(&c), addr.start, addr.len);
                    for (x, y) in sim.iter().zip(&oracle) {
                        worst = worst.max((x - y).abs());
                    }
                    runs += 1;
                }
            }
        }
    }
    report(4, worst <= 1e-9, &format!("{runs} pipelines, max |sim - oracle| = {worst:.3e} ({:.1} s)", start.elapsed().as_secs_f64()));
}

// ---------------------------------------------------------------------------
// Classical reversible evaluator for lookup circuits.

fn eval_classical(c: &Circuit, mut v: Vec<bool>) -> Vec<bool> {
    for g in c.gates() {
        let q = &g.qubits;
        match g.kind {
            GateKind::X => v[q[0]] = !v[q[0]],
            GateKind::Cnot => v[q[1]] ^= v[q[0]],
            GateKind::Toffoli => v[q[2]] ^= v[q[0]] && v[q[1]],
            GateKind::And => {
                assert!(!v[q[2]], "AND onto a dirty target");
                v[q[2]] = v[q[0]] && v[q[1]];
            }
            GateKind::AndUncompute => {
                assert_eq!(v[q[2]], v[q[0]] && v[q[1]], "AND uncompute mismatch");
                v[q[2]] = false;
            }
            GateKind::Swap => v.swap(q[0], q[1]),
            GateKind::CSwap if v[q[0]] => v.swap(q[1], q[2]),
            GateKind::CSwap => {}
            ref other => panic!("lookup contains non-classical gate {other:?}"),
        }
    }
    v
}

#[test]
fn criterion_05_lookup_basis_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for l in [1usize, 2, 4, 8, 16] {
        for w in 1..=4usize {
            for _ in 0..5 {
                let words: Vec<u64> = (0..l).map(|_| rng.gen_range(0..1u64 << w)).collect();
                let mut backends = vec![LookupBackend::Qrom];
                let mut lambda = 1;
                while lambda <= l {
                    backends.push(LookupBackend::SelectSwap(lambda));
                    lambda *= 2;
                }
                for backend in backends {
                    let spec = LookupSpec::new(words.clone(), w, backend).unwrap();
                    let c = match backend {
                        LookupBackend::Qrom => build_qrom(&spec).unwrap(),
                        LookupBackend::SelectSwap(_) => build_selectswap(&spec).unwrap(),
                    };
                    let n = l.trailing_zeros() as usize;
                    let data = c.register(RegisterRole::Data).map_or(n, |r| r.start);
                    for j in 0..l {
                        for z in 0..1usize << w {
                            let mut v = vec![false; c.num_qubits()];
                            for i in 0..n {
                                v[i] = (j >> i) & 1 == 1;
                            }
                            for i in 0..w {
                                v[data + i] = (z >> i) & 1 == 1;
                            }
                            let out = eval_classical(&c, v);
                            let addr: usize = (0..n).map(|i| (out[i] as usize) << i).sum();
                            let got: u64 = (0..w).map(|i| (out[data + i] as u64) << i).sum();
                            if addr != j || got != z as u64 ^ words[j] {
                                failures.push(format!("L={l} w={w} {backend:?} j={j} z={z}"));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    report(
        5,
        failures.is_empty(),
        &format!("{checked} basis inputs, failures {:?} ({:.1} s)", &failures[..failures.len().min(5)], start.elapsed().as_secs_f64()),
    );
}

#[test]
fn criterion_06_lambda_optimizer() {
    let start = Instant::now();
    let mut mismatches = 0;
    for l in 2..=4096usize {
        for w in 1..=32usize {
            let cost = |lambda: usize| 4 * ((l + lambda - 1) / lambda) + 8 * lambda * w;
            let best = (0..=13).map(|e| 1usize << e).min_by_key(|&lam| (cost(lam), lam)).unwrap();
            if optimal_lambda(l, w) != best {
                mismatches += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(6, mismatches == 0 && secs < 5.0, &format!("{mismatches} mismatches over L = 2..4096, w = 1..32 ({secs:.2} s)"));
}

// ---------------------------------------------------------------------------
// Rotation methods.

fn popcount_state(n: usize, k: usize) -> Vec<(u64, f64)> {
    let support: Vec<u64> = (0..1u64 << n).filter(|i| i.count_ones() as usize == k).collect();
    let a = 1.0 / (support.len() as f64).sqrt();
    support.into_iter().map(|i| (i, a)).collect()
}

fn assert_same_state(state: &TargetState, want: &[(u64, f64)]) {
    let got: Vec<(u64, f64)> = state.iter().collect();
    assert_eq!(got.len(), want.len());
    for ((i, a), (j, b)) in got.iter().zip(want) {
        assert!(i == j && (a - b).abs() <= 1e-15, "amplitude {i}: {a} vs {b}");
    }
}

#[test]
fn criterion_07_rotation_logical_correctness() {
    let start = Instant::now();
    let mut cases: Vec<(String, TargetState)> = Vec::new();
    for n in 1..=8usize {
        let w = gen_w(n).unwrap();
        assert_same_state(&w, &popcount_state(n, 1));
        cases.push((format!("w{n}"), w));
        for k in 1..n {
            let d = gen_dicke(n, k).unwrap();
            assert_same_state(&d, &popcount_state(n, k));
            cases.push((format!("dicke{n}_{k}"), d));
        }
        cases.push((format!("t_friendly{n}"), gen_t_friendly(n, 3).unwrap().0));
        if n >= 2 {
            for family in [Family::DenseRandom, Family::SparseUniform, Family::SparseRandom] {
                let spec = BenchmarkSpec::new(family.clone(), n, 0, 11).unwrap();
                cases.push((format!("{family}{n}"), spec.generate().unwrap()));
            }
        }
    }
    for n in 3..=8 {
        cases.push((format!("syk{n}"), BenchmarkSpec::new(Family::Syk, n, 0, 2).unwrap().generate().unwrap()));
    }
    for k in 1..=4 {
        cases.push((format!("magnus{k}"), gen_magnus(k).unwrap()));
    }
    cases.push(("thc_toy".into(), BenchmarkSpec::new(Family::ThcToy, 8, 0, 0).unwrap().generate().unwrap()));

    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (name, state) in &cases {
        for (method, c) in [("dense", synthesize_dense(state).unwrap()), ("sparse", synthesize_sparse(state).unwrap())] {
            let f = state_fidelity(&run_circuit(&c), state);
            worst = worst.max(1.0 - f);
            if f < 1.0 - 1e-10 {
                failures.push(format!("{name}/{method}: {f}"));
            }
        }
    }
    report(
        7,
        failures.is_empty(),
        &format!("{} instances x 2 methods, max infidelity {worst:.3e}, failures {failures:?} ({:.1} s)", cases.len(), start.elapsed().as_secs_f64()),
    );
}

#[test]
fn criterion_08_compiled_rotation_accuracy() {
    let start = Instant::now();
    let states = [
        ("w8", gen_w(8).unwrap()),
        ("dicke8_2", gen_dicke(8, 2).unwrap()),
        ("dense_random8", BenchmarkSpec::new(Family::DenseRandom, 8, 0, 7).unwrap().generate().unwrap()),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, state) in &states {
        let logical = synthesize_dense(state).unwrap();
        for b in [6u32, 10, 14] {
            let compiled = compile_with_stats(&logical, &SynthesisConfig::new(b).unwrap()).unwrap();
            let f = state_fidelity(&run_circuit(&compiled.circuit), state);
            let n_rot = compiled.stats.approximate_rotations as f64;
            let bound = 1.0 - (n_rot * 0.5f64.powi(b as i32)).powi(2) - 1e-9;
            ok &= f >= bound;
            lines.push(format!("{name}/b{b}: N_rot {n_rot} 1-F {:.3e}", 1.0 - f));
        }
    }
    report(8, ok, &format!("{} ({:.1} s)", lines.join(", "), start.elapsed().as_secs_f64()));
}

fn word_unitary(word: &[GateKind]) -> M2 {
    let mut m = [[cx(1.0, 0.0), cx(0.0, 0.0)], [cx(0.0, 0.0), cx(1.0, 0.0)]];
    for g in word {
        let u = gate_matrix(g).expect("single-qubit word");
        let mut r = [[cx(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = u[i][0] * m[0][j] + u[i][1] * m[1][j];
            }
        }
        m = r;
    }
    m
}

/// `min_phi ||U - e^{i phi} Rz(theta)||`, through `W = Rz^dagger U` scaled into
/// SU(2) and `2 - 2|Re a| = 2 (Im(a)^2 + |b|^2) / (1 + |Re a|)`.
fn phase_invariant_distance(word: &[GateKind], theta: f64) -> f64 {
    let u = word_unitary(word);
    let e = Complex64::from_polar(1.0, theta / 2.0);
    let w = [[e * u[0][0], e * u[0][1]], [e.conj() * u[1][0], e.conj() * u[1][1]]];
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let s = det.sqrt();
    let (a, b) = (w[0][0] / s, w[1][0] / s);
    let d2 = 2.0 * (a.im * a.im + b.norm_sqr()) / (1.0 + a.re.abs());
    d2.max(0.0).sqrt()
}

#[test]
fn criterion_09_rz_synthesis_contract() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let angles: Vec<f64> = (0..200).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
    let mut points = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for bits in [5i32, 10, 15, 20] {
        let eps = 0.5f64.powi(bits);
        for &theta in &angles {
            let r = synthesize_rz(theta, eps).unwrap();
            worst_ratio = worst_ratio.max(phase_invariant_distance(&r.word, theta) / eps);
            let t = r.word.iter().filter(|g| matches!(g, GateKind::T | GateKind::Tdg)).count();
            points.push((bits as f64, t as f64));
        }
    }
    let m = points.len() as f64;
    let (mx, my) = (points.iter().map(|p| p.0).sum::<f64>() / m, points.iter().map(|p| p.1).sum::<f64>() / m);
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    report(
        9,
        worst_ratio <= 1.0 && slope <= 4.5,
        &format!("max distance/eps {worst_ratio:.4}, T slope {slope:.3} per bit ({:.1} s)", start.elapsed().as_secs_f64()),
    );
}

#[test]
fn criterion_10_t_friendly_exactness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=6usize {
        for seed in 0..5u64 {
            let (state, stages) = gen_t_friendly(n, seed).unwrap();
            for st in &stages {
                for &theta in &st.angles {
                    if exactly_preparable((theta / 2.0).cos(), (theta / 2.0).sin()).is_none() {
                        failures.push(format!("n={n} seed={seed}: angle {theta}"));
                    }
                }
            }
            let compiled = compile_with_stats(&synthesize_dense(&state).unwrap(), &SynthesisConfig::new(12).unwrap()).unwrap();
            let f = state_fidelity(&run_circuit(&compiled.circuit), &state);
            if (1.0 - f).abs() > 1e-12 {
                failures.push(format!("n={n} seed={seed}: F_state {f}"));
            }
            count += 1;
        }
    }
    report(10, failures.is_empty(), &format!("{count} instances, failures {failures:?} ({:.1} s)", start.elapsed().as_secs_f64()));
}

#[test]
fn criterion_11_selectswap_never_worse_than_qrom() {
    let start = Instant::now();
    let mut specs = vec![
        BenchmarkSpec::new(Family::W, 8, 0, 0).unwrap(),
        BenchmarkSpec::new(Family::Dicke, 8, 2, 0).unwrap(),
        BenchmarkSpec::new(Family::Dicke, 8, 3, 0).unwrap(),
        BenchmarkSpec::new(Family::ThcToy, 8, 0, 0).unwrap(),
    ];
    for family in [Family::DenseRandom, Family::SparseUniform, Family::SparseRandom, Family::TFriendly] {
        for seed in 0..3 {
            specs.push(BenchmarkSpec::new(family.clone(), 8, 0, seed).unwrap());
        }
    }
    for k in 1..=4 {
        specs.push(BenchmarkSpec::new(Family::Magnus, 0, k, 0).unwrap());
    }
    for n in 3..=8 {
        specs.push(BenchmarkSpec::new(Family::Syk, n, 0, 0).unwrap());
    }
    let bs: Vec<u32> = (4..=12).collect();
    let cfg = SweepConfig { simulate: false, ..SweepConfig::default() };
    let mut violations = Vec::new();
    let mut pairs = 0;
    for spec in &specs {
        let rows = run_sweep(spec, &[Method::Qrom, Method::SelectSwap], &bs, &cfg).unwrap();
        for b in &bs {
            let find = |m: Method| rows.iter().find(|r| r.method == m && r.b == *b).unwrap().t_proxy;
            let (q, s) = (find(Method::Qrom), find(Method::SelectSwap));
            if s > q {
                violations.push(format!("{} b={b}: {s} > {q}", spec.label()));
            }
            pairs += 1;
        }
    }
    report(11, violations.is_empty(), &format!("{pairs} row pairs, violations {violations:?} ({:.1} s)", start.elapsed().as_secs_f64()));
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_12_support_sizes() {
    let start = Instant::now();
    let mut ok = gen_w(8).unwrap().support() == 8
        && gen_dicke(8, 2).unwrap().support() as u64 == binomial(8, 2)
        && gen_dicke(8, 3).unwrap().support() as u64 == binomial(8, 3)
        && binomial(8, 2) == 28
        && binomial(8, 3) == 56;
    let mut fact = 1;
    for k in 1..=6usize {
        fact *= k;
        ok &= gen_magnus(k).unwrap().support() == fact;
    }
    let frac = |k: usize| BigRational::new(BigInt::from(gen_magnus(k).unwrap().support()), BigInt::from(1u64) << magnus_qubits(k));
    ok &= frac(3) == BigRational::new(6.into(), 64.into()) && frac(4) == BigRational::new(24.into(), 256.into());
    let secs = start.elapsed().as_secs_f64();
    report(12, ok && secs < 1.0, &format!("W8 8, D8^2 28, D8^3 56, Magnus k!, fractions {} and {} ({secs:.2} s)", frac(3), frac(4)));
}

#[test]
fn criterion_13_magnus_coefficients() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for k in 1..=5usize {
        let state = gen_magnus(k).unwrap();
        // Independent pairwise descent scan and exact coefficient.
        let coefficient = |perm: &[usize]| -> BigRational {
            let d = (0..k.saturating_sub(1)).filter(|&i| perm[i] > perm[i + 1]).count() as u64;
            let sign = if d % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(k as u64 * binomial(k as u64 - 1, d)))
        };
        let identity: Vec<usize> = (0..k).collect();
        let base = coefficient(&identity);
        let base_amp = state.amplitude(magnus_index(&identity));
        let perms = permutations(k);
        assert_eq!(perms.len(), (1..=k).product::<usize>());
        for p in &perms {
            let want = (coefficient(p) / &base).to_f64().unwrap();
            let got = state.amplitude(magnus_index(p)) / base_amp;
            worst = worst.max((got - want).abs() / want.abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(13, worst <= 1e-12 && secs < 5.0, &format!("k = 1..5, max relative error {worst:.2e} ({secs:.2} s)"));
}

#[test]
fn criterion_14_thc_toy_bench_smoke() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("thc.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_qsprep"))
        .args(["bench", "--family", "thc_toy", "--n", "8", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    let secs = start.elapsed().as_secs_f64();
    let text = std::fs::read_to_string(&out).unwrap_or_default();
    let mut lines = text.lines();
    let header = "family,n,seed,method,b,t_proxy,compiled_T,total_gates,qubits,infidelity,fidelity_kind,synth_time_ms";
    let header_ok = lines.next() == Some(header);
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let complete = rows.iter().all(|r| {
        r.len() == 12
            && r[0] == "thc_toy"
            && r[1] == "8"
            && (5..=8).all(|i| r[i].parse::<u64>().is_ok())
            && r[9].parse::<f64>().map_or(false, |v| (0.0..=1.0).contains(&v))
            && (r[10] == "state") == (r[3] == "dense" || r[3] == "sparse")
    });
    report(
        14,
        status.success() && header_ok && complete && rows.len() == 4 * 9 && secs < 600.0,
        &format!("{} rows, header {}, schema {} ({secs:.1} s)", rows.len(), header_ok, if complete { "complete" } else { "broken" }),
    );
}
