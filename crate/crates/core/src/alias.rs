//! Alias sampling: quantized alias tables and the coherent sampling pipeline.
//!
//! The pipeline puts the address register in uniform superposition, looks up the
//! alias label and the quantized threshold `keep` for every address, draws a
//! uniform `b`-bit `sigma`, and swaps the address with its alias label whenever
//! `sigma >= keep`. Measuring the address then samples
//! `(keep_j + sum_{alias_k = j} (2^b - keep_k)) / (2^b L)`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::circuit::{Circuit, GateKind, RegisterRole, ResourceReport};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const MAX_BITS: u32 = 40;

/// Vose alias table with `b`-bit quantized thresholds.
#[derive(Clone, Debug, PartialEq)]
pub struct AliasTable {
    bits: u32,
    keep: Vec<u64>,
    alias: Vec<usize>,
    tau: Vec<f64>,
}

impl AliasTable {
    /// Validates a table given bin by bin.
    pub fn from_parts(bits: u32, keep: Vec<u64>, alias: Vec<usize>, tau: Vec<f64>) -> Result<Self> {
        let l = keep.len();
        if !(1..=MAX_BITS).contains(&bits) {
            return Err(Error::parameter(format!("bit width must be in 1..={MAX_BITS}, got {bits}")));
        }
        if l == 0 || !l.is_power_of_two() || alias.len() != l || tau.len() != l {
            return Err(Error::structural(format!(
                "table needs a power-of-two number of bins with matching columns, got {l}/{}/{}",
                alias.len(),
                tau.len()
            )));
        }
        let full = 1u64 << bits;
        for j in 0..l {
            if alias[j] >= l {
                return Err(Error::structural(format!("bin {j}: alias {} out of range", alias[j])));
            }
            if keep[j] > full || (keep[j] == full && alias[j] != j) {
                return Err(Error::structural(format!("bin {j}: keep {} needs a self-alias at 2^b", keep[j])));
            }
            if !(0.0..=1.0).contains(&tau[j]) {
                return Err(Error::structural(format!("bin {j}: threshold {} outside [0, 1]", tau[j])));
            }
        }
        Ok(AliasTable { bits, keep, alias, tau })
    }

    pub fn len(&self) -> usize {
        self.keep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keep.is_empty()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Quantized thresholds; `2^b` marks a self-aliased bin.
    pub fn keep(&self) -> &[u64] {
        &self.keep
    }

    pub fn alias(&self) -> &[usize] {
        &self.alias
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    /// Number of address qubits, `log2 L`.
    pub fn address_bits(&self) -> usize {
        self.len().trailing_zeros() as usize
    }

    /// The distribution the unquantized `(tau, alias)` pairs reproduce.
    pub fn reproduced(&self) -> Vec<f64> {
        let l = self.len() as f64;
        let mut p: Vec<f64> = self.tau.clone();
        for (k, &a) in self.alias.iter().enumerate() {
            p[a] += 1.0 - self.tau[k];
        }
        p.iter().map(|v| v / l).collect()
    }

    /// Parses the `L b` header followed by `j keep alias tau` rows.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `L b` header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 2 {
            return Err(Error::parse(hline, "header must be `L b`"));
        }
        let l: usize = h[0].parse().map_err(|_| Error::parse(hline, "bad bin count"))?;
        let bits: u32 = h[1].parse().map_err(|_| Error::parse(hline, "bad bit width"))?;
        let (mut keep, mut alias, mut tau) = (vec![0; l], vec![0; l], vec![0.0; l]);
        let mut seen = vec![false; l];
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(Error::parse(ln, "row must be `j keep alias tau`"));
            }
            let j: usize = f[0].parse().map_err(|_| Error::parse(ln, "bad bin index"))?;
            if j >= l || seen[j] {
                return Err(Error::parse(ln, format!("bin {j} out of range or repeated")));
            }
            seen[j] = true;
            keep[j] = f[1].parse().map_err(|_| Error::parse(ln, "bad keep value"))?;
            alias[j] = f[2].parse().map_err(|_| Error::parse(ln, "bad alias label"))?;
            tau[j] = f[3].parse().map_err(|_| Error::parse(ln, "bad threshold"))?;
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::parse(hline, format!("bin {j} missing")));
        }
        AliasTable::from_parts(bits, keep, alias, tau)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AliasTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.len(), self.bits)?;
        for j in 0..self.len() {
            writeln!(f, "{j} {} {} {:?}", self.keep[j], self.alias[j], self.tau[j])?;
        }
        Ok(())
    }
}

/// Checks `p` and pads it with zeros to a power-of-two length.
pub fn validate_distribution(p: &[f64]) -> Result<Vec<f64>> {
    if p.is_empty() {
        return Err(Error::validation("empty distribution"));
    }
    if let Some((j, v)) = p.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
        return Err(Error::validation(format!("entry {j} is {v}; probabilities must be nonnegative")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORM_TOL {
        return Err(Error::validation(format!("probabilities sum to {total}, not 1")));
    }
    let mut out = p.to_vec();
    out.resize(p.len().next_power_of_two(), 0.0);
    Ok(out)
}

#[derive(PartialEq)]
struct Surplus(f64, usize);

impl Eq for Surplus {}

impl PartialOrd for Surplus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surplus {
    // Largest surplus first, lowest index on ties.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(other.1.cmp(&self.1))
    }
}

/// Vose construction followed by `keep_j = floor(tau_j 2^b)`.
///
/// Deficit bins are processed in ascending index order, each paired with the
/// bin of largest remaining surplus. Bins left with `tau = 1` alias themselves
/// and get `keep = 2^b`.
pub fn build_alias_table(p: &[f64], bits: u32) -> Result<AliasTable> {
    if !(1..=MAX_BITS).contains(&bits) {
        return Err(Error::parameter(format!("bit width must be in 1..={MAX_BITS}, got {bits}")));
    }
    let p = validate_distribution(p)?;
    let l = p.len();
    let mut q: Vec<f64> = p.iter().map(|v| v * l as f64).collect();
    let mut tau = vec![1.0; l];
    let mut alias: Vec<usize> = (0..l).collect();
    let mut small: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    let mut large: BinaryHeap<Surplus> = BinaryHeap::new();
    for (j, &v) in q.iter().enumerate() {
        if v < 1.0 {
            small.push(Reverse(j));
        } else {
            large.push(Surplus(v - 1.0, j));
        }
    }
    while let Some(Reverse(s)) = small.pop() {
        let Some(Surplus(_, g)) = large.pop() else {
            // Rounding left a deficit with no donor; it keeps itself.
            break;
        };
        tau[s] = q[s];
        alias[s] = g;
        q[g] -= 1.0 - q[s];
        if q[g] < 1.0 {
            small.push(Reverse(g));
        } else {
            large.push(Surplus(q[g] - 1.0, g));
        }
    }
    let full = 1u64 << bits;
    let keep = (0..l)
        .map(|j| {
            if alias[j] == j {
                tau[j] = 1.0;
                full
            } else {
                ((tau[j] * full as f64).floor() as u64).min(full - 1)
            }
        })
        .collect();
    Ok(AliasTable { bits, keep, alias, tau })
}

/// Exact address marginal of the pipeline, as fractions over `2^b L`.
pub fn realized_marginal(table: &AliasTable) -> Vec<BigRational> {
    let full = 1u128 << table.bits;
    let mut num = vec![0u128; table.len()];
    for j in 0..table.len() {
        num[j] += table.keep[j] as u128;
        if table.keep[j] as u128 != full {
            num[table.alias[j]] += full - table.keep[j] as u128;
        }
    }
    let den = BigInt::from(full * table.len() as u128);
    num.into_iter().map(|n| BigRational::new(BigInt::from(n), den.clone())).collect()
}

pub fn realized_marginal_f64(table: &AliasTable) -> Vec<f64> {
    realized_marginal(table).iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect()
}

/// `num/den` per bin, one per line.
pub fn marginal_text(table: &AliasTable) -> String {
    realized_marginal(table).iter().enumerate().map(|(j, r)| format!("{j} {}/{}\n", r.numer(), r.denom())).collect()
}

/// How a lookup table is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LookupBackend {
    Qrom,
    /// Blocks of `lambda` words selected by unary iteration, then routed by a swap network.
    SelectSwap(usize),
}

/// Backend choice for the sampling pipeline; SelectSwap picks `lambda` per lookup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AliasBackend {
    Qrom,
    SelectSwap,
}

impl FromStr for AliasBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qrom" => Ok(AliasBackend::Qrom),
            "selectswap" => Ok(AliasBackend::SelectSwap),
            other => Err(Error::parameter(format!("unknown lookup backend `{other}`"))),
        }
    }
}

impl fmt::Display for AliasBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AliasBackend::Qrom => "qrom",
            AliasBackend::SelectSwap => "selectswap",
        })
    }
}

/// `|j>|z> -> |j>|z xor words[j]>` over `L = words.len()` addresses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupSpec {
    words: Vec<u64>,
    width: usize,
    backend: LookupBackend,
}

impl LookupSpec {
    pub fn new(words: Vec<u64>, width: usize, backend: LookupBackend) -> Result<Self> {
        let l = words.len();
        if l == 0 || !l.is_power_of_two() {
            return Err(Error::structural(format!("lookup needs a power-of-two number of words, got {l}")));
        }
        if width > 63 {
            return Err(Error::structural(format!("word width {width} exceeds 63 bits")));
        }
        if let Some((j, w)) = words.iter().enumerate().find(|(_, w)| **w >> width != 0) {
            return Err(Error::structural(format!("word {j} = {w} does not fit in {width} bits")));
        }
        if let LookupBackend::SelectSwap(lambda) = backend {
            if lambda == 0 || !lambda.is_power_of_two() || lambda > l {
                return Err(Error::parameter(format!("lambda must be a power of two in 1..={l}, got {lambda}")));
            }
        }
        Ok(LookupSpec { words, width, backend })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn backend(&self) -> LookupBackend {
        self.backend
    }

    pub fn address_bits(&self) -> usize {
        self.len().trailing_zeros() as usize
    }
}

/// Power of two minimizing `4 ceil(L / lambda) + 8 lambda w`, smallest on ties.
pub fn optimal_lambda(l: usize, w: usize) -> usize {
    let cost = |lambda: usize| 4 * l.div_ceil(lambda) + 8 * lambda * w;
    let mut best = 1;
    let mut lambda = 2;
    while lambda <= l.max(1) {
        if cost(lambda) < cost(best) {
            best = lambda;
        }
        lambda *= 2;
    }
    best
}

/// Unary iteration over the addresses spelled by `bits` (least significant first).
///
/// `leaf(c, j, sel)` runs once per address `j` with `sel` holding `|addr == j>`;
/// `None` means the single address is selected unconditionally. Needs
/// `bits.len() - 1` clean ancillas and uses `2^k - 2` AND gates, all uncomputed.
fn unary_iterate(
    c: &mut Circuit,
    bits: &[usize],
    anc: &[usize],
    leaf: &mut dyn FnMut(&mut Circuit, usize, Option<usize>),
) {
    let Some((&msb, rest)) = bits.split_last() else {
        leaf(c, 0, None);
        return;
    };
    debug_assert!(anc.len() + 1 >= bits.len());
    c.add(GateKind::X, &[msb]);
    unary_node(c, msb, rest, anc, 0, leaf);
    c.add(GateKind::X, &[msb]);
    unary_node(c, msb, rest, anc, 1, leaf);
}

fn unary_node(
    c: &mut Circuit,
    sel: usize,
    rest: &[usize],
    anc: &[usize],
    prefix: usize,
    leaf: &mut dyn FnMut(&mut Circuit, usize, Option<usize>),
) {
    let Some((&a, lower)) = rest.split_last() else {
        leaf(c, prefix, Some(sel));
        return;
    };
    let t = anc[0];
    c.add(GateKind::X, &[a]);
    c.add(GateKind::And, &[sel, a, t]);
    c.add(GateKind::X, &[a]);
    unary_node(c, t, lower, &anc[1..], prefix << 1, leaf);
    c.add(GateKind::Cnot, &[sel, t]);
    unary_node(c, t, lower, &anc[1..], (prefix << 1) | 1, leaf);
    c.add(GateKind::AndUncompute, &[sel, a, t]);
}

fn load_word(c: &mut Circuit, word: u64, sel: Option<usize>, out: &[usize]) {
    for (i, &q) in out.iter().enumerate() {
        if word >> i & 1 == 1 {
            match sel {
                Some(s) => c.add(GateKind::Cnot, &[s, q]),
                None => c.add(GateKind::X, &[q]),
            }
        }
    }
}

/// Clean ancillas the unary iteration of a lookup needs.
fn unary_ancillas(spec: &LookupSpec) -> usize {
    let lambda = match spec.backend {
        LookupBackend::Qrom => 1,
        LookupBackend::SelectSwap(l) => l,
    };
    (spec.address_bits() - lambda.trailing_zeros() as usize).saturating_sub(1)
}

/// Appends the lookup. `anc` must hold at least `unary_ancillas(spec)` clean
/// qubits (returned clean); SelectSwap temporaries are allocated as a fresh
/// `work` register and left dirty.
fn emit_lookup(c: &mut Circuit, spec: &LookupSpec, addr: &[usize], out: &[usize], anc: &[usize]) {
    match spec.backend {
        LookupBackend::Qrom | LookupBackend::SelectSwap(1) => {
            unary_iterate(c, addr, anc, &mut |c, j, sel| load_word(c, spec.words[j], sel, out));
        }
        LookupBackend::SelectSwap(lambda) => {
            let r = lambda.trailing_zeros() as usize;
            let w = spec.width;
            let temps = c.alloc(RegisterRole::Work, lambda * w);
            let slot = |i: usize| &temps[i * w..(i + 1) * w];
            unary_iterate(c, &addr[r..], anc, &mut |c, block, sel| {
                for i in 0..lambda {
                    load_word(c, spec.words[block * lambda + i], sel, slot(i));
                }
            });
            for i in (0..r).rev() {
                for j in 0..1usize << i {
                    for bit in 0..w {
                        c.add(GateKind::CSwap, &[addr[i], slot(j)[bit], slot(j + (1 << i))[bit]]);
                    }
                }
            }
            for bit in 0..w {
                c.add(GateKind::Cnot, &[slot(0)[bit], out[bit]]);
            }
        }
    }
}

/// Standalone lookup circuit with `address`, `data` and `work` registers.
fn build_lookup(spec: &LookupSpec) -> Circuit {
    let mut c = Circuit::new(0);
    let addr = c.alloc(RegisterRole::Address, spec.address_bits());
    let out = c.alloc(RegisterRole::Data, spec.width);
    let anc = c.alloc(RegisterRole::Work, unary_ancillas(spec));
    emit_lookup(&mut c, spec, &addr, &out, &anc);
    c
}

/// QROM by unary iteration: `L - 2` AND gates for `L >= 2`, only X and CNOT for `L <= 2`.
pub fn build_qrom(spec: &LookupSpec) -> Result<Circuit> {
    if spec.backend != LookupBackend::Qrom {
        return Err(Error::parameter("build_qrom needs the qrom backend"));
    }
    Ok(build_lookup(spec))
}

pub fn build_selectswap(spec: &LookupSpec) -> Result<Circuit> {
    match spec.backend {
        LookupBackend::SelectSwap(_) => Ok(build_lookup(spec)),
        LookupBackend::Qrom => Err(Error::parameter("build_selectswap needs a selectswap backend")),
    }
}

/// Writes `y >= x` into `flag` with a carry chain from the least significant bit.
///
/// The carry of `y + !x + 1` is built with one AND per bit through
/// `maj(a, b, c) = ((a ^ c) & (b ^ c)) ^ c`; `x` and `y` are restored and the
/// `b - 1` intermediate carries in `anc` are left dirty.
fn emit_comparator(c: &mut Circuit, x: &[usize], y: &[usize], flag: usize, anc: &[usize]) {
    let b = x.len();
    debug_assert!(b >= 1 && y.len() == b && anc.len() + 1 >= b);
    let target = |i: usize| if i + 1 == b { flag } else { anc[i] };
    // c1 = y0 | !x0
    let t0 = target(0);
    c.add(GateKind::X, &[y[0]]);
    c.add(GateKind::And, &[y[0], x[0], t0]);
    c.add(GateKind::X, &[y[0]]);
    c.add(GateKind::X, &[t0]);
    for i in 1..b {
        let carry = target(i - 1);
        let t = target(i);
        c.add(GateKind::X, &[x[i]]);
        c.add(GateKind::Cnot, &[carry, y[i]]);
        c.add(GateKind::Cnot, &[carry, x[i]]);
        c.add(GateKind::And, &[y[i], x[i], t]);
        c.add(GateKind::Cnot, &[carry, t]);
        c.add(GateKind::Cnot, &[carry, y[i]]);
        c.add(GateKind::Cnot, &[carry, x[i]]);
        c.add(GateKind::X, &[x[i]]);
    }
}

/// `|x>|y>|0> -> |x>|y>|y >= x>` on registers `keep` (x), `random` (y), `flag`
/// and `work`; exactly `b` AND gates.
pub fn build_comparator(bits: usize) -> Result<Circuit> {
    if bits == 0 {
        return Err(Error::parameter("comparator needs at least one bit"));
    }
    let mut c = Circuit::new(0);
    let x = c.alloc(RegisterRole::Keep, bits);
    let y = c.alloc(RegisterRole::Random, bits);
    let flag = c.alloc(RegisterRole::Flag, 1)[0];
    let anc = c.alloc(RegisterRole::Work, bits - 1);
    emit_comparator(&mut c, &x, &y, flag, &anc);
    Ok(c)
}

/// The sampling circuit with its table and per-stage counts.
#[derive(Clone, Debug)]
pub struct AliasPreparation {
    pub circuit: Circuit,
    pub table: AliasTable,
    /// Hadamards and the two lookups.
    pub lookup_report: ResourceReport,
    /// Comparator and controlled swaps.
    pub compare_swap_report: ResourceReport,
}

impl AliasPreparation {
    /// Qubits of the address register.
    pub fn address_qubits(&self) -> std::ops::Range<usize> {
        self.circuit.register(RegisterRole::Address).map(|r| r.range()).unwrap_or(0..0)
    }
}

fn lookup_backend(backend: AliasBackend, l: usize, w: usize) -> LookupBackend {
    match backend {
        AliasBackend::Qrom => LookupBackend::Qrom,
        AliasBackend::SelectSwap => LookupBackend::SelectSwap(optimal_lambda(l, w)),
    }
}

/// Builds the table for `p` (zero-padded to a power of two) and the pipeline
/// preparing a state whose address marginal is [`realized_marginal`] of it.
pub fn prepare_alias_state(p: &[f64], bits: u32, backend: AliasBackend) -> Result<AliasPreparation> {
    let table = build_alias_table(p, bits)?;
    let circuit_and_split = alias_circuit(&table, backend)?;
    let (circuit, split) = circuit_and_split;
    let lookup_report = circuit.slice(0..split).report();
    let compare_swap_report = circuit.slice(split..circuit.len()).report();
    Ok(AliasPreparation { circuit, table, lookup_report, compare_swap_report })
}

/// The pipeline for a given table; returns the circuit and the index of the
/// first comparator gate.
pub fn alias_circuit(table: &AliasTable, backend: AliasBackend) -> Result<(Circuit, usize)> {
    let n = table.address_bits();
    let b = table.bits() as usize;
    let l = table.len();
    let mask = (1u64 << b) - 1;
    let alias_spec =
        LookupSpec::new(table.alias.iter().map(|&a| a as u64).collect(), n, lookup_backend(backend, l, n))?;
    let keep_spec = LookupSpec::new(table.keep.iter().map(|&k| k & mask).collect(), b, lookup_backend(backend, l, b))?;

    let mut c = Circuit::new(0);
    let addr = c.alloc(RegisterRole::Address, n);
    let alias = c.alloc(RegisterRole::Alias, n);
    let keep = c.alloc(RegisterRole::Keep, b);
    let sigma = c.alloc(RegisterRole::Random, b);
    let flag = c.alloc(RegisterRole::Flag, 1)[0];
    let scratch = unary_ancillas(&alias_spec).max(unary_ancillas(&keep_spec)).max(b - 1);
    let anc = c.alloc(RegisterRole::Ancilla, scratch);

    for &q in &addr {
        c.add(GateKind::H, &[q]);
    }
    emit_lookup(&mut c, &alias_spec, &addr, &alias, &anc);
    emit_lookup(&mut c, &keep_spec, &addr, &keep, &anc);
    for &q in &sigma {
        c.add(GateKind::H, &[q]);
    }
    let split = c.len();
    emit_comparator(&mut c, &keep, &sigma, flag, &anc);
    for i in 0..n {
        c.add(GateKind::CSwap, &[flag, addr[i], alias[i]]);
    }
    Ok((c, split))
}

fn bump(h: &mut BTreeMap<String, usize>, tag: &str, by: usize) {
    *h.entry(tag.to_string()).or_insert(0) += by;
}

/// Gate counts of [`emit_lookup`] without building it; returns the qubits of
/// the SelectSwap temporaries.
fn lookup_counts(spec: &LookupSpec, h: &mut BTreeMap<String, usize>) -> usize {
    let lambda = match spec.backend {
        LookupBackend::Qrom => 1,
        LookupBackend::SelectSwap(l) => l,
    };
    let blocks = spec.len() / lambda;
    let ones: usize = spec.words.iter().map(|w| w.count_ones() as usize).sum();
    if blocks == 1 {
        bump(h, "X", ones);
    } else {
        bump(h, "X", 2 + 2 * (blocks - 2));
        bump(h, "AND", blocks - 2);
        bump(h, "ANDU", blocks - 2);
        bump(h, "CNOT", blocks - 2 + ones);
    }
    if lambda == 1 {
        return 0;
    }
    bump(h, "CSWAP", (lambda - 1) * spec.width);
    bump(h, "CNOT", spec.width);
    lambda * spec.width
}

/// Logical resources of [`alias_circuit`] counted in closed form, for tables too
/// large to build as circuits. Matches `alias_circuit(table, backend).0.report()`.
pub fn alias_resources(table: &AliasTable, backend: AliasBackend) -> Result<ResourceReport> {
    let n = table.address_bits();
    let b = table.bits() as usize;
    let l = table.len();
    let mask = (1u64 << b) - 1;
    let alias_spec =
        LookupSpec::new(table.alias.iter().map(|&a| a as u64).collect(), n, lookup_backend(backend, l, n))?;
    let keep_spec = LookupSpec::new(table.keep.iter().map(|&k| k & mask).collect(), b, lookup_backend(backend, l, b))?;
    let mut h = BTreeMap::new();
    bump(&mut h, "H", n + b);
    let temps = lookup_counts(&alias_spec, &mut h) + lookup_counts(&keep_spec, &mut h);
    bump(&mut h, "X", 3 + 2 * (b - 1));
    bump(&mut h, "CNOT", 5 * (b - 1));
    bump(&mut h, "AND", b);
    bump(&mut h, "CSWAP", n);
    let scratch = unary_ancillas(&alias_spec).max(unary_ancillas(&keep_spec)).max(b - 1);
    Ok(ResourceReport::from_histogram(h, 2 * n + 2 * b + 1 + scratch + temps))
}
