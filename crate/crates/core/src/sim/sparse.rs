use rustc_hash::FxHashMap as HashMap;

use num_complex::Complex64;

use super::ops::{for_each_fused, Op};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

const PRUNE: f64 = 1e-30;

/// Statevector over up to 64 qubits that stores only nonzero amplitudes, for
/// states that keep a small support.
///
/// Entries live in parallel vectors so diagonal and permutation gates are a
/// linear pass; the key index is only consulted by gates that mix pairs.
#[derive(Clone, Debug, Default)]
pub struct SparseState {
    num_qubits: usize,
    keys: Vec<u64>,
    vals: Vec<Complex64>,
    index: HashMap<u64, usize>,
    indexed: bool,
    zeros: usize,
}

impl SparseState {
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits > 64 {
            return Err(Error::Capacity { qubits: num_qubits, budget: 64 });
        }
        let mut s = SparseState { num_qubits, keys: vec![0], vals: vec![Complex64::new(1.0, 0.0)], ..Default::default() };
        s.reindex();
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Stored entries; exact once the simulation has finished.
    pub fn support(&self) -> usize {
        self.keys.len() - self.zeros
    }

    pub fn amplitude(&self, i: u64) -> Complex64 {
        if self.indexed {
            return self.index.get(&i).map_or_else(Complex64::default, |&j| self.vals[j]);
        }
        self.keys.iter().position(|&k| k == i).map_or_else(Complex64::default, |j| self.vals[j])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.keys.iter().copied().zip(self.vals.iter().copied()).filter(|(_, v)| v.norm_sqr() > PRUNE)
    }

    fn reindex(&mut self) {
        self.index.clear();
        self.index.extend(self.keys.iter().enumerate().map(|(j, &k)| (k, j)));
        self.indexed = true;
    }

    /// Drops pruned entries and rebuilds the index.
    fn compact(&mut self) {
        let mut w = 0;
        for r in 0..self.keys.len() {
            if self.vals[r].norm_sqr() > PRUNE {
                self.keys[w] = self.keys[r];
                self.vals[w] = self.vals[r];
                w += 1;
            }
        }
        self.keys.truncate(w);
        self.vals.truncate(w);
        self.zeros = 0;
        self.reindex();
    }

    /// Moves every entry selected by `hit` to `key ^ flip`, scaling by `scale`.
    fn permute(&mut self, hit: impl Fn(u64) -> bool, flip: u64, scale: impl Fn(u64) -> Complex64) {
        let moved: Vec<usize> = (0..self.keys.len()).filter(|&j| hit(self.keys[j])).collect();
        if self.indexed {
            for &j in &moved {
                self.index.remove(&self.keys[j]);
            }
        }
        for &j in &moved {
            self.vals[j] *= scale(self.keys[j]);
            self.keys[j] ^= flip;
        }
        if self.indexed {
            for &j in &moved {
                self.index.insert(self.keys[j], j);
            }
        }
    }

    fn push(&mut self, k: u64, v: Complex64) {
        if v.norm_sqr() > PRUNE {
            self.index.insert(k, self.keys.len());
            self.keys.push(k);
            self.vals.push(v);
        }
    }

    fn set(&mut self, j: usize, v: Complex64) {
        let was_zero = self.vals[j].norm_sqr() <= PRUNE;
        let is_zero = v.norm_sqr() <= PRUNE;
        self.vals[j] = if is_zero { Complex64::default() } else { v };
        match (was_zero, is_zero) {
            (false, true) => self.zeros += 1,
            (true, false) => self.zeros -= 1,
            _ => {}
        }
    }

    pub(crate) fn apply(&mut self, op: &Op) {
        let zero = Complex64::default();
        match *op {
            Op::Unitary { target, m, mask, value } => {
                let tb = 1u64 << target;
                let hit = move |k: u64| k & mask == value;
                let bit = move |k: u64| ((k & tb) != 0) as usize;
                if m[0][1] == zero && m[1][0] == zero {
                    for j in 0..self.keys.len() {
                        if hit(self.keys[j]) {
                            let v = m[bit(self.keys[j])][bit(self.keys[j])] * self.vals[j];
                            self.set(j, v);
                        }
                    }
                    return;
                }
                if m[0][0] == zero && m[1][1] == zero {
                    self.permute(hit, tb, |k| m[1 - bit(k)][bit(k)]);
                    return;
                }
                if !self.indexed {
                    self.reindex();
                }
                for j in 0..self.keys.len() {
                    let k = self.keys[j];
                    if !hit(k) {
                        continue;
                    }
                    let partner = self.index.get(&(k ^ tb)).copied();
                    if k & tb == 0 {
                        let (a0, a1) = (self.vals[j], partner.map_or(zero, |p| self.vals[p]));
                        self.set(j, m[0][0] * a0 + m[0][1] * a1);
                        let n1 = m[1][0] * a0 + m[1][1] * a1;
                        match partner {
                            Some(p) => self.set(p, n1),
                            None => self.push(k | tb, n1),
                        }
                    } else if partner.is_none() {
                        let a1 = self.vals[j];
                        self.set(j, m[1][1] * a1);
                        self.push(k & !tb, m[0][1] * a1);
                    }
                }
                if self.zeros * 4 > self.keys.len() {
                    self.compact();
                }
            }
            Op::Swap { a, b, mask, value } => {
                let (ab, bb) = (1u64 << a, 1u64 << b);
                self.permute(
                    move |k| k & mask == value && ((k & ab != 0) != (k & bb != 0)),
                    ab | bb,
                    |_| Complex64::new(1.0, 0.0),
                );
            }
        }
    }
}

fn run(c: &Circuit, max_support: usize) -> Result<Option<SparseState>> {
    let mut s = SparseState::zero(c.num_qubits())?;
    let mut over = false;
    for_each_fused(c, |op| {
        if !over {
            s.apply(op);
            over = s.support() > max_support;
        }
    });
    if over {
        return Ok(None);
    }
    s.compact();
    Ok(Some(s))
}

/// Runs `c` on `|0...0>` keeping only nonzero amplitudes.
pub fn simulate_sparse(c: &Circuit) -> Result<SparseState> {
    Ok(run(c, usize::MAX)?.expect("uncapped"))
}

/// Like [`simulate_sparse`] but gives up, returning `None`, once the support
/// exceeds `max_support` entries.
pub fn simulate_sparse_capped(c: &Circuit, max_support: usize) -> Result<Option<SparseState>> {
    run(c, max_support)
}
