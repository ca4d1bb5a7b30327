//! Exact synthesis of unitaries over `Z[omega, 1/sqrt2]` into H/T words.

use num_complex::Complex64;

use super::ring::{ZOmegaI, ZRoot2I};
use crate::circuit::GateKind;

/// `m / sqrt2^k` with `m` a 2x2 matrix over `Z[omega]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactUnitary {
    pub m: [[ZOmegaI; 2]; 2],
    pub k: u32,
}

/// Syllables of a word, in time order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Syllable {
    H,
    X,
    /// `T^m`, `m` in `0..8`.
    T(u8),
}

impl ExactUnitary {
    pub fn new(m: [[ZOmegaI; 2]; 2], k: u32) -> Self {
        let mut u = ExactUnitary { m, k };
        u.reduce();
        u
    }

    fn entries(&self) -> [&ZOmegaI; 4] {
        [&self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1]]
    }

    fn reduce(&mut self) {
        while self.k > 0 && self.entries().iter().all(|e| e.divisible_by_sqrt2()) {
            for row in self.m.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.div_sqrt2();
                }
            }
            self.k -= 1;
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactUnitary) -> ExactUnitary {
        let (a, b) = (&self.m, &other.m);
        let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
        ExactUnitary::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]], self.k + other.k)
    }

    pub fn to_complex(&self) -> [[Complex64; 2]; 2] {
        let s = std::f64::consts::SQRT_2.powi(self.k as i32);
        let f = |e: &ZOmegaI| e.to_complex() / s;
        [[f(&self.m[0][0]), f(&self.m[0][1])], [f(&self.m[1][0]), f(&self.m[1][1])]]
    }

    /// `M^dagger M = I`, exactly.
    pub fn is_unitary(&self) -> bool {
        let [[a, b], [c, d]] = &self.m;
        let two_k = ZOmegaI::from_zroot2(&ZRoot2I::from_int(1i128 << self.k));
        a.adj() * a.clone() + c.adj() * c.clone() == two_k
            && b.adj() * b.clone() + d.adj() * d.clone() == two_k
            && (a.adj() * b.clone() + c.adj() * d.clone()).is_zero()
    }

    /// `H T^-j M`.
    fn step(&self, j: i32) -> ExactUnitary {
        let r0 = self.m[0].clone();
        let r1 = [self.m[1][0].mul_omega_pow(-j), self.m[1][1].mul_omega_pow(-j)];
        let m = [
            [r0[0].clone() + r1[0].clone(), r0[1].clone() + r1[1].clone()],
            [r0[0].clone() - r1[0].clone(), r0[1].clone() - r1[1].clone()],
        ];
        ExactUnitary::new(m, self.k + 1)
    }

    /// Smallest denominator exponent of `|m00|^2`, counted in powers of `sqrt2`.
    fn sde(&self) -> u32 {
        let mut r = self.m[0][0].norm_sqr();
        if r.is_zero() {
            return 0;
        }
        let mut e = 2 * self.k;
        while e > 0 && r.divisible_by_sqrt2() {
            r = r.div_sqrt2();
            e -= 1;
        }
        e
    }
}

fn t_word(m: u8) -> &'static [GateKind] {
    match m % 8 {
        0 => &[],
        1 => &[GateKind::T],
        2 => &[GateKind::S],
        3 => &[GateKind::S, GateKind::T],
        4 => &[GateKind::S, GateKind::S],
        5 => &[GateKind::Sdg, GateKind::Tdg],
        6 => &[GateKind::Sdg],
        _ => &[GateKind::Tdg],
    }
}

/// Gates (time order) realizing `T^m`, using at most one T or T-dagger.
pub fn t_power_word(m: u8) -> Vec<GateKind> {
    t_word(m).to_vec()
}

fn render(syllables: &[Syllable]) -> Vec<GateKind> {
    let mut merged: Vec<Syllable> = Vec::new();
    for &s in syllables {
        match (merged.last_mut(), s) {
            (Some(Syllable::T(a)), Syllable::T(b)) => *a = (*a + b) % 8,
            (Some(Syllable::H), Syllable::H) | (Some(Syllable::X), Syllable::X) => {
                merged.pop();
            }
            _ => merged.push(s),
        }
        if merged.last() == Some(&Syllable::T(0)) {
            merged.pop();
        }
    }
    let mut out = Vec::new();
    for s in merged {
        match s {
            Syllable::H => out.push(GateKind::H),
            Syllable::X => out.push(GateKind::X),
            Syllable::T(m) => out.extend_from_slice(t_word(m)),
        }
    }
    out
}

/// A Clifford+T word (time order) equal to `u` up to global phase.
pub fn synthesize_exact(u: &ExactUnitary) -> Vec<GateKind> {
    assert!(u.is_unitary(), "exact synthesis needs a unitary matrix");
    // u = F_1 F_2 ... F_r u_0 with F_i = T^j H, so time order is u_0, F_r, ..., F_1.
    let mut factors: Vec<i32> = Vec::new();
    let mut cur = u.clone();
    while cur.k > 0 {
        let s = cur.sde();
        let greedy = if s >= 4 {
            (0..8).map(|j| (j, cur.step(j))).find(|(_, n)| n.sde() + 1 == s)
        } else {
            None
        };
        if let Some((j, next)) = greedy {
            factors.push(j);
            cur = next;
            continue;
        }
        let (path, end) = search_to_clifford(&cur).expect("short search reaches a monomial matrix");
        factors.extend(path);
        cur = end;
    }
    let [[a, b], [c, d]] = &cur.m;
    let mut syll = Vec::new();
    if b.is_zero() && c.is_zero() {
        let (pa, pd) = (a.as_omega_power().unwrap(), d.as_omega_power().unwrap());
        syll.push(Syllable::T((pd - pa).rem_euclid(8) as u8));
    } else {
        let (pb, pc) = (b.as_omega_power().unwrap(), c.as_omega_power().unwrap());
        syll.push(Syllable::T((pb - pc).rem_euclid(8) as u8));
        syll.push(Syllable::X);
    }
    for &j in factors.iter().rev() {
        syll.push(Syllable::H);
        syll.push(Syllable::T(j.rem_euclid(8) as u8));
    }
    render(&syll)
}

/// Breadth-first search over up to five `H T^-j` steps for one reaching `k = 0`.
fn search_to_clifford(u: &ExactUnitary) -> Option<(Vec<i32>, ExactUnitary)> {
    let mut frontier: Vec<(Vec<i32>, ExactUnitary)> = vec![(Vec::new(), u.clone())];
    for _ in 0..5 {
        let mut next = Vec::new();
        for (path, m) in &frontier {
            for j in 0..8 {
                let n = m.step(j);
                let mut p = path.clone();
                p.push(j);
                if n.k == 0 {
                    return Some((p, n));
                }
                if n.k <= m.k + 1 {
                    next.push((p, n));
                }
            }
        }
        frontier = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::ops::word_matrix;
    use proptest::prelude::*;

    fn phase_distance(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> f64 {
        // |tr(a^dagger b)| = 2 iff equal up to phase
        let tr = a[0][0].conj() * b[0][0] + a[1][0].conj() * b[1][0] + a[0][1].conj() * b[0][1] + a[1][1].conj() * b[1][1];
        (2.0 - tr.norm()).abs()
    }

    fn syllable_unitary(word: &[(bool, u8)]) -> ExactUnitary {
        // Build the exact matrix of a random H/T word by multiplying H and T^m.
        let mut u = ExactUnitary::new([[ZOmegaI::one(), ZOmegaI::zero()], [ZOmegaI::zero(), ZOmegaI::one()]], 0);
        for &(h, m) in word {
            let mut r0 = u.m[0].clone();
            let mut r1 = [u.m[1][0].mul_omega_pow(m as i32), u.m[1][1].mul_omega_pow(m as i32)];
            let mut k = u.k;
            if h {
                let (a0, a1) = (r0.clone(), r1.clone());
                r0 = [a0[0].clone() + a1[0].clone(), a0[1].clone() + a1[1].clone()];
                r1 = [a0[0].clone() - a1[0].clone(), a0[1].clone() - a1[1].clone()];
                k += 1;
            }
            u = ExactUnitary::new([r0, r1], k);
        }
        u
    }

    #[test]
    fn hadamard_and_t() {
        let h = syllable_unitary(&[(true, 0)]);
        let w = synthesize_exact(&h);
        assert_eq!(w, vec![GateKind::H]);
        let t = syllable_unitary(&[(false, 1)]);
        assert_eq!(synthesize_exact(&t), vec![GateKind::T]);
    }

    #[test]
    fn t_words() {
        for m in 0..8u8 {
            let w = t_power_word(m);
            assert!(w.iter().filter(|g| matches!(g, GateKind::T | GateKind::Tdg)).count() <= 1);
            let want = syllable_unitary(&[(false, m)]).to_complex();
            assert!(phase_distance(&word_matrix(&w), &want) < 1e-12, "m = {m}");
        }
    }

    proptest! {
        #[test]
        fn random_words_resynthesize(word in prop::collection::vec((any::<bool>(), 0u8..8), 0..30)) {
            let u = syllable_unitary(&word);
            prop_assert!(u.is_unitary());
            let w = synthesize_exact(&u);
            prop_assert!(phase_distance(&word_matrix(&w), &u.to_complex()) < 1e-9);
            let t_in = word.iter().filter(|(_, m)| m % 2 == 1).count();
            let t_out = w.iter().filter(|g| matches!(g, GateKind::T | GateKind::Tdg)).count();
            prop_assert!(t_out <= t_in + 1, "{t_out} > {t_in}");
        }
    }
}
