//! Approximate `Rz` synthesis by grid enumeration and the norm equation.

use std::f64::consts::{PI, SQRT_2};

use super::diophantine::solve_norm_equation;
use super::exact::{synthesize_exact, ExactUnitary};
use super::grid::solve_1d;
use super::ring::{ZOmega, ZOmegaI, ZRoot2, ZRoot2I};
use crate::circuit::GateKind;
use crate::error::{Error, Result};

const MAX_K: u32 = 120;
const GRID_LIMIT: usize = 1 << 20;

/// Result of approximating `Rz(theta)`.
#[derive(Clone, Debug)]
pub struct RzApproximation {
    pub unitary: ExactUnitary,
    pub word: Vec<GateKind>,
    /// Phase-invariant operator distance to `Rz(theta)`.
    pub distance: f64,
}

/// Angle of the arc `[c - h, c + h]` covers `target` (all mod 2 pi).
fn arc_covers(center: f64, half: f64, target: f64) -> bool {
    let d = (target - center).rem_euclid(2.0 * PI);
    d <= half || d >= 2.0 * PI - half
}

/// Grid candidates examined per angle before falling back to a split.
const X_BUDGET: usize = 1 << 21;

/// `sqrt2^n` with a single rounding.
fn sqrt2_pow(n: u32) -> f64 {
    let p = 2f64.powi((n / 2) as i32);
    if n % 2 == 1 {
        p * SQRT_2
    } else {
        p
    }
}

/// `x` as `f64` without the cancellation of `a + b sqrt2` when the two terms
/// nearly cancel: `x = N(x) / x^bullet`.
fn stable_value(x: &ZRoot2I) -> f64 {
    let (a, b) = (x.a, x.b);
    let direct = x.to_f64();
    let conj = a as f64 - b as f64 * SQRT_2;
    match a.checked_mul(a).zip(b.checked_mul(b).and_then(|bb| bb.checked_mul(2))) {
        Some((aa, bb2)) if direct.abs() < conj.abs() => (aa - bb2) as f64 / conj,
        _ => direct,
    }
}

/// Approximates `Rz(theta)` by a Clifford+T word within phase-invariant
/// operator distance `eps`.
///
/// Angles whose `cos^2(theta/2)` is rational over `Q(sqrt2)` need about twice
/// the usual denominator exponent; past the search budget such an angle is
/// split into `Rz(theta/2 + r) Rz(theta/2 - r)`, each half at `eps / 2`.
pub fn approximate_rz(theta: f64, eps: f64) -> Result<RzApproximation> {
    if !(eps > 0.0) || eps > 1.0 || !theta.is_finite() {
        return Err(Error::parameter(format!("need 0 < eps <= 1 and finite theta, got eps = {eps}")));
    }
    if let Some(r) = search(theta, eps)? {
        return Ok(r);
    }
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    for j in 1..=4 {
        let r = golden * j as f64;
        let (Some(a), Some(b)) = (search(0.5 * theta + r, 0.5 * eps)?, search(0.5 * theta - r, 0.5 * eps)?) else {
            continue;
        };
        // Time order a then b is the matrix B A.
        let unitary = b.unitary.mul(&a.unitary);
        let mut word = a.word;
        word.extend(b.word);
        let distance = super::compile::matrix_rz_distance(&unitary.to_complex(), theta).min(a.distance + b.distance);
        return Ok(RzApproximation { unitary, word, distance });
    }
    Err(Error::Compile(format!("no approximation of Rz({theta}) found within the search budget")))
}

/// Finds `u = (x + i y) / sqrt2^(k+1)` close to `z` and `t` completing it to a
/// unitary, for increasing `k`. `None` once `X_BUDGET` candidates are spent.
fn search(theta: f64, eps: f64) -> Result<Option<RzApproximation>> {
    let (sz, cz) = (-theta / 2.0).sin_cos();
    // Solve for i z when z lies closer to the real axis, so |zy| >= 1/sqrt2
    // and the half-plane bound below divides safely.
    let rotated = cz.abs() > sz.abs();
    let (zx, zy) = if rotated { (-sz, cz) } else { (cz, sz) };
    let d = 1.0 - eps * eps / 2.0;
    let h = (1.0 - d * d).max(0.0).sqrt();
    let half = d.acos();
    let center = zy.atan2(zx);
    let ends = [(d * zx - h * zy, d * zy + h * zx), (d * zx + h * zy, d * zy - h * zx)];
    let mut xlo = ends[0].0.min(ends[1].0);
    let mut xhi = ends[0].0.max(ends[1].0);
    if arc_covers(center, half, 0.0) {
        xhi = 1.0;
    }
    if arc_covers(center, half, PI) {
        xlo = -1.0;
    }

    let mut spent = 0usize;
    for k in 0..MAX_K {
        let s = sqrt2_pow(k + 1);
        // Covers the rounding of s, of x and y as floats and of z.
        let margin = 1e-14 * s + 1e-9;
        let slack = 1e-14 * s * s;
        // Wide slivers at large k hold more x candidates than one grid call
        // may return; bisect the x interval until each piece fits.
        let mut pieces = vec![(xlo * s - margin, xhi * s + margin)];
        while let Some((lo, hi)) = pieces.pop() {
            let Some(xs) = solve_1d(lo, hi, -s, s, GRID_LIMIT) else {
                let mid = 0.5 * (lo + hi);
                if !(mid > lo && mid < hi) {
                    return Err(Error::Compile(format!("grid enumeration overflow for Rz({theta}) at k = {k}")));
                }
                pieces.push((mid, hi));
                pieces.push((lo, mid));
                continue;
            };
            spent += xs.len();
            if spent > X_BUDGET {
                return Ok(None);
            }
            for x in xs {
                let xf = x.to_f64();
                let xbf = x.bullet().to_f64();
                if xf.abs() > s + margin || xbf.abs() > s + margin {
                    continue;
                }
                let circ = ((s * s - xf * xf).max(0.0) + slack).sqrt();
                let (mut ylo, mut yhi) = (-circ - margin, circ + margin);
                // x zx + y zy >= d s
                let bound = (d * s - xf * zx) / zy;
                if zy > 0.0 {
                    ylo = ylo.max(bound - margin);
                } else {
                    yhi = yhi.min(bound + margin);
                }
                if ylo > yhi {
                    continue;
                }
                let ycirc = ((s * s - xbf * xbf).max(0.0) + slack).sqrt() + margin;
                let Some(ys) = solve_1d(ylo, yhi, -ycirc, ycirc, GRID_LIMIT) else { continue };
                for y in ys {
                    if let Some(found) = try_candidate(&x, &y, k, theta, eps, rotated) {
                        return Ok(Some(found));
                    }
                }
            }
        }
    }
    Err(Error::Compile(format!("no approximation of Rz({theta}) found up to k = {MAX_K}")))
}

fn try_candidate(x: &ZRoot2I, y: &ZRoot2I, k: u32, theta: f64, eps: f64, rotated: bool) -> Option<RzApproximation> {
    if (x.a - y.a).rem_euclid(2) != 0 {
        return None;
    }
    let two_big_k: ZRoot2I = ZRoot2::from_int(1i128 << (k + 1));
    let rest = two_big_k - x.clone() * x.clone() - y.clone() * y.clone();
    if rest.a.rem_euclid(2) != 0 || rest.b.rem_euclid(2) != 0 {
        return None;
    }
    let xi = ZRoot2::new(rest.a / 2, rest.b / 2);
    if !xi.is_doubly_nonnegative() {
        return None;
    }
    // 2 - 2 Re(u* z) = |u - z|^2 + (1 - |u|^2), and 1 - |u|^2 = xi / 2^k exactly;
    // this form avoids the cancellation in 2 - |tr|.
    let s = sqrt2_pow(k + 1);
    let (sz, cz) = (-theta / 2.0).sin_cos();
    let (zx, zy) = if rotated { (-sz, cz) } else { (cz, sz) };
    let (dx, dy) = (x.to_f64() - s * zx, y.to_f64() - s * zy);
    let d = ((dx * dx + dy * dy) / (s * s) + stable_value(&xi) / 2f64.powi(k as i32)).max(0.0).sqrt();
    if d > eps {
        return None;
    }
    let mut u = ZOmega::from_re_im_over_sqrt2(x, y)?;
    if rotated {
        u = u * ZOmegaI::omega_pow(6);
    }
    let t = solve_norm_equation(&xi)?;
    let unitary = ExactUnitary::new([[u.clone(), -t.adj()], [t, u.adj()]], k);
    if !unitary.is_unitary() {
        return None;
    }
    let word = synthesize_exact(&unitary);
    Some(RzApproximation { unitary, word, distance: d })
}
