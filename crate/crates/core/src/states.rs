//! Benchmark target states: W and Dicke states, synthetic random states,
//! T-friendly dense states, THC coefficient states, the real SYK surrogate and
//! Magnus permutation states.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, so a `(family, n, seed)`
//! triple always yields bitwise-identical amplitudes.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::GateKind;
use crate::cliffordt::{compile_with_stats, exactly_preparable, SynthesisConfig};
use crate::error::{Error, Result};
use crate::rotation::{synthesize_dense, TargetState};
use crate::sim::{fidelity_state, simulate};

/// Largest support a generator will materialize.
const MAX_SUPPORT: usize = 1 << 24;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(r: &mut ChaCha8Rng) -> f64 {
    r.sample(StandardNormal)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `1/sqrt(n) sum_i |2^i>`.
pub fn gen_w(n: usize) -> Result<TargetState> {
    gen_dicke_unchecked(n, 1, "W state")
}

/// Uniform superposition over all weight-`k` strings of `n` bits, `0 < k < n`.
pub fn gen_dicke(n: usize, k: usize) -> Result<TargetState> {
    if k == 0 || k >= n {
        return Err(Error::parameter(format!("Dicke state needs 0 < k < n, got n = {n}, k = {k}")));
    }
    gen_dicke_unchecked(n, k, "Dicke state")
}

fn gen_dicke_unchecked(n: usize, k: usize, what: &str) -> Result<TargetState> {
    if n == 0 || n > 63 {
        return Err(Error::parameter(format!("{what} needs 1 <= n <= 63, got {n}")));
    }
    let size = binomial(n, k);
    if size > MAX_SUPPORT as u128 {
        return Err(Error::parameter(format!("{what} support {size} is too large to materialize")));
    }
    let amp = 1.0 / (size as f64).sqrt();
    let mut entries = Vec::with_capacity(size as usize);
    // Gosper's hack walks the weight-k words in increasing order.
    let mut x: u64 = (1u64 << k) - 1;
    while x >> n == 0 {
        entries.push((x, amp));
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    TargetState::normalized(n, entries)
}

fn check_synthetic(n: usize) -> Result<()> {
    if !(2..=26).contains(&n) {
        return Err(Error::parameter(format!("synthetic states need 2 <= n <= 26, got {n}")));
    }
    Ok(())
}

fn random_support(n: usize, size: usize, r: &mut ChaCha8Rng) -> Vec<u64> {
    let mut idx: Vec<u64> = sample(r, 1usize << n, size).into_iter().map(|i| i as u64).collect();
    idx.sort_unstable();
    idx
}

fn gaussian_on(n: usize, support: Vec<u64>, r: &mut ChaCha8Rng) -> Result<TargetState> {
    let entries: Vec<(u64, f64)> = support.into_iter().map(|j| (j, normal(r))).collect();
    TargetState::normalized(n, entries)
}

/// Standard-normal amplitudes on `2^(n-1)` uniformly chosen indices.
pub fn gen_dense_random(n: usize, seed: u64) -> Result<TargetState> {
    check_synthetic(n)?;
    let mut r = rng(seed);
    let support = random_support(n, 1 << (n - 1), &mut r);
    gaussian_on(n, support, &mut r)
}

/// `n` indices with amplitude `1/sqrt(n)` each.
pub fn gen_sparse_uniform(n: usize, seed: u64) -> Result<TargetState> {
    check_synthetic(n)?;
    let mut r = rng(seed);
    let amp = 1.0 / (n as f64).sqrt();
    TargetState::normalized(n, random_support(n, n, &mut r).into_iter().map(|j| (j, amp)))
}

/// Standard-normal amplitudes on `n` uniformly chosen indices.
pub fn gen_sparse_random(n: usize, seed: u64) -> Result<TargetState> {
    check_synthetic(n)?;
    let mut r = rng(seed);
    let support = random_support(n, n, &mut r);
    gaussian_on(n, support, &mut r)
}

/// Angles `theta` in `(0, pi)` whose state `Ry(theta)|0>` is reachable from `|0>`
/// by a Clifford+T word with at most 8 T gates, up to a global phase.
pub fn t_friendly_library() -> &'static [f64] {
    static LIB: OnceLock<Vec<f64>> = OnceLock::new();
    LIB.get_or_init(|| {
        let mut r = rng(0x7f7f);
        let mut lib: Vec<f64> = Vec::new();
        for _ in 0..4000 {
            let mut word = Vec::new();
            let mut t = 0;
            for _ in 0..r.gen_range(1..24) {
                let g = match r.gen_range(0..3) {
                    0 => GateKind::H,
                    1 => GateKind::S,
                    _ if t < 8 => {
                        t += 1;
                        GateKind::T
                    }
                    _ => GateKind::H,
                };
                word.push(g);
            }
            let m = crate::sim::ops::word_matrix(&word);
            let (a0, a1) = (m[0][0], m[1][0]);
            let pivot = if a0.norm() >= a1.norm() { a0 } else { a1 };
            let ph = pivot.conj() / pivot.norm();
            let (b0, b1) = (a0 * ph, a1 * ph);
            if b0.im.abs() > 1e-12 || b1.im.abs() > 1e-12 {
                continue;
            }
            let mut theta = 2.0 * b1.re.atan2(b0.re);
            theta = theta.rem_euclid(2.0 * PI);
            if theta > PI {
                theta = 2.0 * PI - theta;
            }
            if theta < 1e-9 || theta > PI - 1e-9 || lib.iter().any(|&x| (x - theta).abs() < 1e-9) {
                continue;
            }
            if exactly_preparable((theta / 2.0).cos(), (theta / 2.0).sin()).is_some() {
                lib.push(theta);
            }
        }
        lib.sort_by(f64::total_cmp);
        lib
    })
}

/// One stage of the T-friendly template: `Ry(theta_y)` on `target` where `y` is
/// the pattern of `controls` (bit `i` of `y` is control `i`).
#[derive(Clone, Debug, PartialEq)]
pub struct TFriendlyStage {
    pub target: usize,
    pub controls: Vec<usize>,
    pub angles: Vec<f64>,
}

/// Dense template run forward with library angles.
///
/// Qubit `n - 1` is rotated first, then every lower qubit `t` receives a
/// uniformly controlled rotation whose branch angles are
/// `base + s * step * (-1)^{parity(y)}` over at most three of the qubits above
/// it, with `base`, `step` and `base +- step` in the library. Branch angles stay
/// in `(0, pi)`, so the dense routine recovers them without sign folds and its
/// Gray-code demultiplexer sees only `base` and `+-step`. Each instance is checked
/// end to end and redrawn (by advancing the generator) in the rare case the
/// compiled circuit is not exact.
pub fn gen_t_friendly(n: usize, seed: u64) -> Result<(TargetState, Vec<TFriendlyStage>)> {
    if !(1..=20).contains(&n) {
        return Err(Error::parameter(format!("T-friendly states need 1 <= n <= 20, got {n}")));
    }
    let mut r = rng(seed);
    for _ in 0..64 {
        let (state, schedule) = t_friendly_candidate(n, &mut r)?;
        if n > 10 || t_friendly_verified(&state) {
            return Ok((state, schedule));
        }
    }
    Err(Error::Compile("no exactly compilable T-friendly instance found".into()))
}

fn t_friendly_candidate(n: usize, r: &mut ChaCha8Rng) -> Result<(TargetState, Vec<TFriendlyStage>)> {
    let lib = t_friendly_library();
    let mut schedule = Vec::new();
    let mut amps = vec![0.0f64; 1 << n];
    let top = n - 1;
    let theta = lib[r.gen_range(0..lib.len())];
    amps[0] = (theta / 2.0).cos();
    amps[1 << top] = (theta / 2.0).sin();
    schedule.push(TFriendlyStage { target: top, controls: vec![], angles: vec![theta] });
    for t in (0..top).rev() {
        let above: Vec<usize> = (t + 1..n).collect();
        let take = r.gen_range(0..=above.len().min(3));
        let mut controls: Vec<usize> = sample(r, above.len(), take).into_iter().map(|i| above[i]).collect();
        controls.sort_unstable();
        let base = lib[r.gen_range(0..lib.len())];
        let steps: Vec<f64> = lib
            .iter()
            .copied()
            .filter(|&s| base - s > 1e-9 && base + s < PI - 1e-9)
            .filter(|&s| lib.iter().any(|&x| (x - (base - s)).abs() < 1e-9))
            .filter(|&s| lib.iter().any(|&x| (x - (base + s)).abs() < 1e-9))
            .collect();
        if steps.is_empty() {
            controls.clear();
        }
        let angles: Vec<f64> = if controls.is_empty() {
            vec![base]
        } else {
            let step = steps[r.gen_range(0..steps.len())] * if r.gen::<bool>() { 1.0 } else { -1.0 };
            (0..1usize << controls.len())
                .map(|y| if y.count_ones() % 2 == 0 { base + step } else { base - step })
                .collect()
        };
        for x in 0..1usize << n {
            if x >> t & 1 == 1 || amps[x] == 0.0 {
                continue;
            }
            let y: usize = controls.iter().enumerate().map(|(i, &c)| (x >> c & 1) << i).sum();
            let th = angles[y];
            let a = amps[x];
            amps[x] = a * (th / 2.0).cos();
            amps[x | 1 << t] = a * (th / 2.0).sin();
        }
        schedule.push(TFriendlyStage { target: t, controls, angles });
    }
    Ok((TargetState::normalized(n, amps.iter().enumerate().map(|(j, &a)| (j as u64, a)))?, schedule))
}

fn t_friendly_verified(state: &TargetState) -> bool {
    let Ok(c) = synthesize_dense(state) else { return false };
    let cfg = SynthesisConfig::new(10).expect("valid bits").with_cost_model(true);
    let Ok(out) = compile_with_stats(&c, &cfg) else { return false };
    if out.stats.placeholder_rotations > 0 || out.stats.approximate_rotations > 0 {
        return false;
    }
    let Ok(sv) = simulate(&out.circuit, 26) else { return false };
    let want = state.to_complex(out.circuit.num_qubits());
    fidelity_state(sv.amplitudes(), &want).is_ok_and(|f| f >= 1.0 - 1e-12)
}

/// THC coefficients `t_l` (`l < n_orb`) and `xi_{mu nu}` (`mu, nu < M`).
#[derive(Clone, Debug, PartialEq)]
pub struct ThcCoefficients {
    pub m: usize,
    pub n_orb: usize,
    pub t: Vec<f64>,
    /// Row-major `M x M`.
    pub xi: Vec<f64>,
}

impl ThcCoefficients {
    pub fn zeros(m: usize, n_orb: usize) -> Self {
        ThcCoefficients { m, n_orb, t: vec![0.0; n_orb], xi: vec![0.0; m * m] }
    }

    /// Toy instance with `n_orb = 16`, `M = 15`.
    ///
    /// `t`, `chi` (`n_orb x M`) and `xi` are standard normal, `xi` is
    /// symmetrized, and the columns of `chi` are normalized with their squared
    /// norms absorbed as `xi_{mu nu} c_mu^2 c_nu^2` (each factor appears twice in
    /// the two-body term).
    pub fn toy(seed: u64) -> Self {
        let (m, n_orb) = (15, 16);
        let mut r = rng(seed);
        let t: Vec<f64> = (0..n_orb).map(|_| normal(&mut r)).collect();
        let chi: Vec<f64> = (0..n_orb * m).map(|_| normal(&mut r)).collect();
        let raw: Vec<f64> = (0..m * m).map(|_| normal(&mut r)).collect();
        let col_sq: Vec<f64> = (0..m).map(|mu| (0..n_orb).map(|p| chi[p * m + mu].powi(2)).sum()).collect();
        let mut xi = vec![0.0; m * m];
        for mu in 0..m {
            for nu in 0..m {
                let sym = 0.5 * (raw[mu * m + nu] + raw[nu * m + mu]);
                xi[mu * m + nu] = sym * col_sq[mu] * col_sq[nu];
            }
        }
        ThcCoefficients { m, n_orb, t, xi }
    }

    pub fn lambda(&self) -> f64 {
        self.t.iter().map(|v| v.abs()).sum::<f64>() + 0.5 * self.xi.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Bits per index slot, enough for `l < n_orb` and `mu, nu <= M`.
    pub fn slot_bits(&self) -> usize {
        let size = self.n_orb.max(self.m + 1).max(2);
        size.next_power_of_two().trailing_zeros() as usize
    }

    /// Coefficient state on `2 * slot_bits` qubits: `sqrt(|t_l| / lambda)` at
    /// `(l, M)` and `sqrt(|xi| / (2 lambda))` at `(mu, nu)`, slot `mu` high.
    pub fn state(&self) -> Result<TargetState> {
        let lambda = self.lambda();
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::validation("THC coefficients are all zero"));
        }
        let s = self.slot_bits();
        let mut amps: BTreeMap<u64, f64> = BTreeMap::new();
        let mut put = |hi: usize, lo: usize, v: f64| -> Result<()> {
            if v == 0.0 {
                return Ok(());
            }
            let idx = ((hi as u64) << s) | lo as u64;
            if amps.insert(idx, v).is_some() {
                return Err(Error::structural(format!("THC address collision at index {idx}")));
            }
            Ok(())
        };
        for (l, &t) in self.t.iter().enumerate() {
            put(l, self.m, (t.abs() / lambda).sqrt())?;
        }
        for mu in 0..self.m {
            for nu in 0..self.m {
                put(mu, nu, (self.xi[mu * self.m + nu].abs() / (2.0 * lambda)).sqrt())?;
            }
        }
        TargetState::normalized(2 * s, amps)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `M n_orb` header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let (Some(m), Some(n_orb), 2) = (
            h.first().and_then(|v| v.parse::<usize>().ok()),
            h.get(1).and_then(|v| v.parse::<usize>().ok()),
            h.len(),
        ) else {
            return Err(Error::parse(hl, "header must be `M n_orb`"));
        };
        if m == 0 || n_orb == 0 || m > 1 << 15 || n_orb > 1 << 15 {
            return Err(Error::parse(hl, "M and n_orb must be in 1..=32768"));
        }
        let mut c = ThcCoefficients::zeros(m, n_orb);
        let mut seen_t = vec![false; n_orb];
        let mut seen_xi = vec![false; m * m];
        let value = |ln: usize, s: &str| -> Result<f64> {
            let v: f64 = s.parse().map_err(|_| Error::parse(ln, format!("bad value `{s}`")))?;
            if !v.is_finite() {
                return Err(Error::parse(ln, "value is not finite"));
            }
            Ok(v)
        };
        let index = |ln: usize, s: &str, bound: usize| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(i) if i < bound => Ok(i),
                _ => Err(Error::parse(ln, format!("index `{s}` out of range 0..{bound}"))),
            }
        };
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            match f.as_slice() {
                ["t", l, v] => {
                    let l = index(ln, l, n_orb)?;
                    if std::mem::replace(&mut seen_t[l], true) {
                        return Err(Error::parse(ln, format!("duplicate t {l}")));
                    }
                    c.t[l] = value(ln, v)?;
                }
                ["xi", mu, nu, v] => {
                    let (mu, nu) = (index(ln, mu, m)?, index(ln, nu, m)?);
                    if std::mem::replace(&mut seen_xi[mu * m + nu], true) {
                        return Err(Error::parse(ln, format!("duplicate xi {mu} {nu}")));
                    }
                    c.xi[mu * m + nu] = value(ln, v)?;
                }
                _ => return Err(Error::parse(ln, "expected `t l value` or `xi mu nu value`")),
            }
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

impl fmt::Display for ThcCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.m, self.n_orb)?;
        for (l, v) in self.t.iter().enumerate() {
            if *v != 0.0 {
                writeln!(f, "t {l} {v:?}")?;
            }
        }
        for mu in 0..self.m {
            for nu in 0..self.m {
                let v = self.xi[mu * self.m + nu];
                if v != 0.0 {
                    writeln!(f, "xi {mu} {nu} {v:?}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn gen_thc_toy(seed: u64) -> Result<TargetState> {
    ThcCoefficients::toy(seed).state()
}

pub fn load_thc_coefficients(path: &Path) -> Result<TargetState> {
    ThcCoefficients::load(path)?.state()
}

/// `gamma_a |x>` under Jordan-Wigner: `gamma_{2j} = Z..Z X_j`, `gamma_{2j+1} = Z..Z Y_j`.
fn majorana_apply(a: usize, x: usize) -> (Complex64, usize) {
    let j = a / 2;
    let parity = (x & ((1 << j) - 1)).count_ones() % 2;
    let mut c = Complex64::new(if parity == 0 { 1.0 } else { -1.0 }, 0.0);
    if a % 2 == 1 {
        c *= if x >> j & 1 == 0 { Complex64::i() } else { -Complex64::i() };
    }
    (c, x ^ (1 << j))
}

/// Dense SYK Hamiltonian on `n` modes: `C(2n, 4)^{-1/2} sum J_abcd g_a g_b g_c g_d`
/// over `a < b < c < d`, with standard-normal couplings drawn in lexicographic order.
pub fn syk_hamiltonian(n: usize, seed: u64) -> Result<DMatrix<Complex64>> {
    if !(3..=10).contains(&n) {
        return Err(Error::parameter(format!("SYK surrogate needs 3 <= n <= 10, got {n}")));
    }
    let nm = 2 * n;
    let dim = 1usize << n;
    let scale = 1.0 / (binomial(nm, 4) as f64).sqrt();
    let mut r = rng(seed);
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for a in 0..nm {
        for b in a + 1..nm {
            for c in b + 1..nm {
                for d in c + 1..nm {
                    let j = normal(&mut r) * scale;
                    for x in 0..dim {
                        let mut amp = Complex64::new(j, 0.0);
                        let mut y = x;
                        for g in [d, c, b, a] {
                            let (f, z) = majorana_apply(g, y);
                            amp *= f;
                            y = z;
                        }
                        h[(y, x)] += amp;
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Ground state of [`syk_hamiltonian`] with the phase fixed so its largest entry is
/// real and positive, then `Re(v) / |Re(v)|`; entries below `1e-12` are dropped.
pub fn gen_syk_surrogate(n: usize, seed: u64) -> Result<TargetState> {
    let (_, v) = syk_ground_state(n, seed)?;
    let big = v.iter().enumerate().fold(0, |best, (i, z)| if z.norm() > v[best].norm() + 1e-12 { i } else { best });
    let ph = v[big].conj() / v[big].norm();
    let re: Vec<f64> = v.iter().map(|z| (z * ph).re).collect();
    let norm = re.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-8 {
        return Err(Error::Degenerate(format!(
            "real part of the SYK ground state vanishes (n = {n}, seed = {seed}); try another seed"
        )));
    }
    let entries = re.iter().enumerate().filter(|(_, x)| x.abs() >= 1e-12).map(|(i, &x)| (i as u64, x));
    TargetState::normalized(n, entries)
}

/// Lowest eigenvalue and a unit eigenvector of the SYK Hamiltonian.
pub fn syk_ground_state(n: usize, seed: u64) -> Result<(f64, Vec<Complex64>)> {
    let h = syk_hamiltonian(n, seed)?;
    let eig = h.symmetric_eigen();
    let i = eig.eigenvalues.iter().enumerate().fold(0, |b, (i, e)| if *e < eig.eigenvalues[b] { i } else { b });
    Ok((eig.eigenvalues[i], eig.eigenvectors.column(i).iter().copied().collect()))
}

/// Number of positions `i` with `perm[i] > perm[i + 1]`.
pub fn descent_count(perm: &[usize]) -> usize {
    perm.windows(2).filter(|w| w[0] > w[1]).count()
}

/// `(-1)^d / (k C(k-1, d))` with `d` the descent count.
pub fn magnus_coefficient(perm: &[usize]) -> f64 {
    let k = perm.len();
    let d = descent_count(perm);
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    sign / (k as f64 * binomial(k - 1, d) as f64)
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..k).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Register width `k ceil(log2 k)` (one qubit for `k = 1`).
pub fn magnus_qubits(k: usize) -> usize {
    (k * magnus_slot_bits(k)).max(1)
}

fn magnus_slot_bits(k: usize) -> usize {
    k.next_power_of_two().trailing_zeros() as usize
}

/// Basis index of a permutation: `ceil(log2 k)`-bit slots, `perm[0]` most significant.
pub fn magnus_index(perm: &[usize]) -> u64 {
    let s = magnus_slot_bits(perm.len());
    perm.iter().fold(0u64, |acc, &v| (acc << s) | v as u64)
}

/// `sum_pi C_{pi,k} |pi(0)> ... |pi(k-1)>`, renormalized.
pub fn gen_magnus(k: usize) -> Result<TargetState> {
    if !(1..=6).contains(&k) {
        return Err(Error::parameter(format!("Magnus states need 1 <= k <= 6, got {k}")));
    }
    let entries = permutations(k).into_iter().map(|p| (magnus_index(&p), magnus_coefficient(&p)));
    TargetState::normalized(magnus_qubits(k), entries)
}

/// Target-state family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    W,
    Dicke,
    DenseRandom,
    SparseUniform,
    SparseRandom,
    TFriendly,
    ThcToy,
    ThcFile(PathBuf),
    Syk,
    Magnus,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "w" => Family::W,
            "dicke" => Family::Dicke,
            "dense_random" => Family::DenseRandom,
            "sparse_uniform" => Family::SparseUniform,
            "sparse_random" => Family::SparseRandom,
            "t_friendly" => Family::TFriendly,
            "thc_toy" => Family::ThcToy,
            "syk" => Family::Syk,
            "magnus" => Family::Magnus,
            other => match other.strip_prefix("thc_file:") {
                Some(p) if !p.is_empty() => Family::ThcFile(PathBuf::from(p)),
                _ => return Err(Error::parameter(format!("unknown family `{other}`"))),
            },
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::W => f.write_str("w"),
            Family::Dicke => f.write_str("dicke"),
            Family::DenseRandom => f.write_str("dense_random"),
            Family::SparseUniform => f.write_str("sparse_uniform"),
            Family::SparseRandom => f.write_str("sparse_random"),
            Family::TFriendly => f.write_str("t_friendly"),
            Family::ThcToy => f.write_str("thc_toy"),
            Family::ThcFile(p) => write!(f, "thc_file:{}", p.display()),
            Family::Syk => f.write_str("syk"),
            Family::Magnus => f.write_str("magnus"),
        }
    }
}

/// A family with its size parameters and seed.
///
/// `n` is the qubit count for the W, Dicke, synthetic, T-friendly and SYK
/// families; `k` is the Dicke weight or the Magnus order. THC instances fix
/// their own width.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BenchmarkSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
}

impl BenchmarkSpec {
    pub fn new(family: Family, n: usize, k: usize, seed: u64) -> Result<Self> {
        let spec = BenchmarkSpec { family, n, k, seed };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        match self.family {
            Family::Dicke if k == 0 || k >= n => {
                Err(Error::parameter(format!("dicke requires 0 < k < n, got n = {n}, k = {k}")))
            }
            Family::Magnus if !(1..=6).contains(&k) => {
                Err(Error::parameter(format!("magnus requires 1 <= k <= 6, got {k}")))
            }
            Family::W if n == 0 => Err(Error::parameter("w requires n >= 1")),
            Family::DenseRandom | Family::SparseUniform | Family::SparseRandom => check_synthetic(n),
            Family::TFriendly if !(1..=20).contains(&n) => {
                Err(Error::parameter(format!("t_friendly requires 1 <= n <= 20, got {n}")))
            }
            Family::Syk if !(3..=10).contains(&n) => {
                Err(Error::parameter(format!("syk requires 3 <= n <= 10, got {n}")))
            }
            _ => Ok(()),
        }
    }

    /// Family label for reports, including `k` where it matters.
    pub fn label(&self) -> String {
        match self.family {
            Family::Dicke | Family::Magnus => format!("{}{}", self.family, self.k),
            _ => self.family.to_string(),
        }
    }

    /// Qubits of the generated state.
    pub fn qubits(&self) -> usize {
        match self.family {
            Family::Magnus => magnus_qubits(self.k),
            Family::ThcToy => 8,
            _ => self.n,
        }
    }

    pub fn generate(&self) -> Result<TargetState> {
        match &self.family {
            Family::W => gen_w(self.n),
            Family::Dicke => gen_dicke(self.n, self.k),
            Family::DenseRandom => gen_dense_random(self.n, self.seed),
            Family::SparseUniform => gen_sparse_uniform(self.n, self.seed),
            Family::SparseRandom => gen_sparse_random(self.n, self.seed),
            Family::TFriendly => gen_t_friendly(self.n, self.seed).map(|(s, _)| s),
            Family::ThcToy => gen_thc_toy(self.seed),
            Family::ThcFile(p) => load_thc_coefficients(p),
            Family::Syk => gen_syk_surrogate(self.n, self.seed),
            Family::Magnus => gen_magnus(self.k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn w_and_dicke_supports() {
        assert_eq!(gen_w(8).unwrap().support(), 8);
        assert_eq!(gen_dicke(8, 2).unwrap().support(), 28);
        assert_eq!(gen_dicke(8, 3).unwrap().support(), 56);
        let w2 = gen_w(2).unwrap();
        assert_eq!(w2.amplitude(0), 0.0);
        assert!((w2.amplitude(1) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((w2.amplitude(2) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(w2.amplitude(3), 0.0);
        for (j, _) in gen_dicke(9, 4).unwrap().iter() {
            assert_eq!(j.count_ones(), 4);
        }
        assert!(gen_dicke(4, 0).is_err());
        assert!(gen_dicke(4, 4).is_err());
    }

    #[test]
    fn synthetic_states() {
        let s = gen_sparse_uniform(8, 1).unwrap();
        assert_eq!(s.support(), 8);
        assert!(s.iter().all(|(_, a)| (a.abs() - 8f64.sqrt().recip()).abs() < 1e-15));
        assert_eq!(gen_dense_random(8, 3).unwrap().support(), 128);
        assert_eq!(gen_sparse_random(6, 3).unwrap().support(), 6);
        assert_eq!(gen_dense_random(7, 11).unwrap(), gen_dense_random(7, 11).unwrap());
        assert_ne!(gen_dense_random(7, 11).unwrap(), gen_dense_random(7, 12).unwrap());
    }

    #[test]
    fn library_angles_are_exact() {
        let lib = t_friendly_library();
        assert!(lib.len() >= 3, "{lib:?}");
        assert!(lib.iter().any(|&t| (t - PI / 2.0).abs() < 1e-12));
        for &t in lib {
            assert!(exactly_preparable((t / 2.0).cos(), (t / 2.0).sin()).is_some());
        }
    }

    #[test]
    fn t_friendly_single_qubit() {
        let (s, schedule) = gen_t_friendly(1, 0).unwrap();
        assert_eq!(schedule.len(), 1);
        let th = schedule[0].angles[0];
        assert!((s.amplitude(0) - (th / 2.0).cos()).abs() < 1e-15);
        // pi/2 gives the |+> state
        let half = PI / 2.0;
        assert!(exactly_preparable((half / 2.0).cos(), (half / 2.0).sin()).is_some());
    }

    #[test]
    fn t_friendly_schedule_is_exact() {
        for seed in 0..3 {
            let (s, schedule) = gen_t_friendly(4, seed).unwrap();
            assert_eq!(s.support(), 16);
            for stage in &schedule {
                for &a in &stage.angles {
                    assert!(exactly_preparable((a / 2.0).cos(), (a / 2.0).sin()).is_some());
                }
            }
        }
    }

    #[test]
    fn thc_toy_and_point_mass() {
        let s = gen_thc_toy(5).unwrap();
        assert_eq!(s.num_qubits(), 8);
        let mut c = ThcCoefficients::zeros(15, 16);
        c.t[0] = 1.0;
        let p = c.state().unwrap();
        assert_eq!(p.support(), 1);
        assert_eq!(p.amplitude(15), 1.0);
    }

    #[test]
    fn thc_file_round_trip() {
        let c = ThcCoefficients::toy(9);
        let back = ThcCoefficients::from_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
        let (a, b) = (c.state().unwrap(), back.state().unwrap());
        for (j, v) in a.iter() {
            assert!((b.amplitude(j) - v).abs() < 1e-12);
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("thc.txt");
        c.save(&path).unwrap();
        assert_eq!(load_thc_coefficients(&path).unwrap(), a);
    }

    #[test]
    fn thc_parse_errors() {
        let e = ThcCoefficients::from_text("2 2\nt 0 1.0\nt 0 2.0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = ThcCoefficients::from_text("2 2\nxi 0 5 1.0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = ThcCoefficients::from_text("# c\n2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(ThcCoefficients::from_text("2 2\nfoo\n").is_err());
    }

    #[test]
    fn syk_hermitian_and_ground_state() {
        let h = syk_hamiltonian(4, 3).unwrap();
        let diff = (&h - h.adjoint()).norm();
        assert!(diff <= 1e-10);
        let (e, v) = syk_ground_state(4, 3).unwrap();
        let vv = nalgebra::DVector::from_vec(v);
        let res = (&h * &vv - vv.scale(e)).norm();
        assert!(res <= 1e-8, "residual {res}");
        let s = gen_syk_surrogate(4, 3).unwrap();
        let norm: f64 = s.iter().map(|(_, a)| a * a).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(s, gen_syk_surrogate(4, 3).unwrap());
        assert!(gen_syk_surrogate(2, 0).is_err());
    }

    #[test]
    fn majoranas_anticommute() {
        let n = 3;
        let dim = 1 << n;
        let op = |a: usize| {
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            for x in 0..dim {
                let (c, y) = majorana_apply(a, x);
                m[(y, x)] = c;
            }
            m
        };
        let id = DMatrix::<Complex64>::identity(dim, dim);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (ga, gb) = (op(a), op(b));
                let anti = &ga * &gb + &gb * &ga;
                let want = if a == b { id.scale(2.0) } else { DMatrix::zeros(dim, dim) };
                assert!((anti - want).norm() < 1e-12, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn magnus() {
        assert_eq!(descent_count(&[0, 1, 2, 3]), 0);
        assert_eq!(descent_count(&[2, 0, 3, 1]), 2);
        assert_eq!(magnus_coefficient(&[0, 1]), 0.5);
        assert_eq!(magnus_coefficient(&[1, 0]), -0.5);
        for (k, n, support) in [(3, 6, 6), (4, 8, 24), (5, 15, 120), (6, 18, 720)] {
            let s = gen_magnus(k).unwrap();
            assert_eq!(s.num_qubits(), n);
            assert_eq!(s.support(), support);
        }
        let s = gen_magnus(1).unwrap();
        assert_eq!((s.num_qubits(), s.support(), s.amplitude(0)), (1, 1, 1.0));
        assert_eq!(magnus_index(&[1, 0, 2]), 0b01_00_10);
        assert!(gen_magnus(7).is_err());
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("thc_file:/tmp/x".parse::<Family>().unwrap(), Family::ThcFile("/tmp/x".into()));
        assert!("bogus".parse::<Family>().is_err());
        for f in ["w", "dicke", "dense_random", "sparse_uniform", "sparse_random", "t_friendly", "thc_toy", "syk", "magnus"] {
            assert_eq!(f.parse::<Family>().unwrap().to_string(), f);
        }
        assert!(BenchmarkSpec::new(Family::Dicke, 4, 4, 0).is_err());
        let s = BenchmarkSpec::new(Family::Magnus, 0, 4, 0).unwrap();
        assert_eq!((s.qubits(), s.label()), (8, "magnus4".to_string()));
    }
}
