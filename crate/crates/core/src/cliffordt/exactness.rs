//! Detection of single-qubit states with entries in `Z[i, 1/sqrt2]`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::grid::solve_1d;
use super::ring::{RingElement, ZRoot2, ZRoot2I};

/// Largest denominator exponent tried when matching floats to ring elements.
pub const K_MAX: u32 = 32;
const MATCH_TOL: f64 = 1e-12;

/// Evidence that `(alpha0, alpha1)` is exactly preparable: with
/// `phase = e^{i m pi/8}`, `phase * alpha_j` equals `amplitudes[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactWitness {
    pub phase_eighths: u8,
    pub amplitudes: [RingElement; 2],
}

impl ExactWitness {
    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase_eighths as f64 * PI / 8.0)
    }
}

/// Whether the real unit vector `(alpha0, alpha1)` becomes a pair of
/// `Z[i, 1/sqrt2]` elements after multiplying by some `e^{i m pi/8}`.
///
/// Phases `e^{i m pi/8}` with `m >= 2` are `omega`-power multiples of the
/// `m in {0, 1}` cases, so only those two are searched. Each real and
/// imaginary part is matched within `1e-12` against `Z[sqrt2] / sqrt2^k` for
/// `k <= 32`, and a match is accepted only if the norm is exactly one.
pub fn exactly_preparable(alpha0: f64, alpha1: f64) -> Option<ExactWitness> {
    if !alpha0.is_finite() || !alpha1.is_finite() {
        return None;
    }
    for m in 0..2u8 {
        let phase = Complex64::from_polar(1.0, m as f64 * PI / 8.0);
        let v = [phase * alpha0, phase * alpha1];
        let parts = [v[0].re, v[0].im, v[1].re, v[1].im];
        'levels: for k in 0..=K_MAX {
            let s = SQRT_2.powi(k as i32);
            let mut cands: Vec<Vec<ZRoot2I>> = Vec::with_capacity(4);
            for &r in &parts {
                let w = MATCH_TOL * s;
                match solve_1d(r * s - w, r * s + w, -s - 1e-9, s + 1e-9, 64) {
                    Some(c) if !c.is_empty() => cands.push(c),
                    _ => continue 'levels,
                }
            }
            let target: ZRoot2I = ZRoot2::from_int(1i128 << k);
            for x0 in &cands[0] {
                for y0 in &cands[1] {
                    for x1 in &cands[2] {
                        for y1 in &cands[3] {
                            let sum = x0.clone() * x0.clone()
                                + y0.clone() * y0.clone()
                                + x1.clone() * x1.clone()
                                + y1.clone() * y1.clone();
                            if sum == target {
                                let a = RingElement::from_parts(x0, y0, k)?;
                                let b = RingElement::from_parts(x1, y1, k)?;
                                return Some(ExactWitness { phase_eighths: m, amplitudes: [a, b] });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Exact check for amplitudes already given in ring form: `|a0|^2 + |a1|^2 = 1`.
pub fn exactly_preparable_ring(a0: &RingElement, a1: &RingElement) -> bool {
    let k = a0.k.max(a1.k);
    let n0 = a0.numerator_at(k).norm_sqr();
    let n1 = a1.numerator_at(k).norm_sqr();
    n0 + n1 == ZRoot2::from_int(1i128 << k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(exactly_preparable(1.0, 0.0).is_some());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let w = exactly_preparable(h, h).unwrap();
        assert_eq!(w.phase_eighths, 0);
        assert_eq!(w.amplitudes[0], RingElement::new(1, 0, 0, 0, 1));
        assert!(exactly_preparable((PI / 12.0).cos(), (PI / 12.0).sin()).is_none());
        // cos(pi/8), sin(pi/8) = T-conjugated |+> up to phase
        let w = exactly_preparable((PI / 8.0).cos(), (PI / 8.0).sin());
        assert!(w.is_some());
        let w = w.unwrap();
        assert!(exactly_preparable_ring(&w.amplitudes[0], &w.amplitudes[1]));
        assert!((w.amplitudes[0].to_complex() - w.phase() * (PI / 8.0).cos()).norm() < 1e-12);
    }

    #[test]
    fn ring_form() {
        let h = RingElement::new(1, 0, 0, 0, 1);
        assert!(exactly_preparable_ring(&h, &h));
        assert!(!exactly_preparable_ring(&h, &RingElement::new(1, 0, 0, 0, 0)));
        assert!(exactly_preparable_ring(&RingElement::new(1, 0, 0, 0, 0), &RingElement::new(0, 0, 0, 0, 0)));
    }

    #[test]
    fn perturbed_values_rejected() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = h + 1e-9;
        let b = (1.0 - a * a).sqrt();
        assert!(exactly_preparable(a, b).is_none());
    }
}
