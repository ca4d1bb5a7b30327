//! One-dimensional grid problems over `Z[sqrt2]`.

use std::f64::consts::SQRT_2;

use super::ring::{ZRoot2, ZRoot2I};

const LAMBDA: f64 = 1.0 + SQRT_2;

/// Every `x` in `Z[sqrt2]` with `x in [x0, x1]` and `x^bullet in [y0, y1]`
/// (up to a small floating tolerance; callers recheck exactly), or `None` when
/// the solution set would exceed `limit` entries.
pub fn solve_1d(x0: f64, x1: f64, y0: f64, y1: f64, limit: usize) -> Option<Vec<ZRoot2I>> {
    if !(x1 >= x0 && y1 >= y0) {
        return Some(Vec::new());
    }
    // Translate by an element near the box center so the rescaled bounds, and
    // with them the floating slack, stay small.
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let c = ZRoot2::new((0.5 * (cx + cy)).round() as i128, ((cx - cy) / (2.0 * SQRT_2)).round() as i128);
    let (cf, cbf) = (c.to_f64(), c.bullet().to_f64());
    let out = solve_centered(x0 - cf, x1 - cf, y0 - cbf, y1 - cbf, limit)?;
    Some(out.into_iter().map(|z| z + c.clone()).collect())
}

fn solve_centered(x0: f64, x1: f64, y0: f64, y1: f64, limit: usize) -> Option<Vec<ZRoot2I>> {
    let mut out = Vec::new();
    let (w1, w2) = ((x1 - x0).max(1e-300), (y1 - y0).max(1e-300));
    // Rescale by lambda^m so both intervals have comparable width; the
    // bullet conjugate scales by (-1/lambda)^m.
    let m = ((w2 / w1).ln() / (2.0 * LAMBDA.ln())).round() as i32;
    let s = LAMBDA.powi(m);
    let sb = (-1.0 / LAMBDA).powi(m);
    let (a0, a1) = (x0 * s, x1 * s);
    let (b0, b1) = if sb > 0.0 { (y0 * sb, y1 * sb) } else { (y1 * sb, y0 * sb) };
    let slack = 1e-12 * (1.0 + a0.abs().max(a1.abs()).max(b0.abs()).max(b1.abs()));

    // z = a + b sqrt2 with z in [a0, a1], z^bullet = a - b sqrt2 in [b0, b1].
    let blo = ((a0 - b1) / (2.0 * SQRT_2) - slack).ceil() as i128;
    let bhi = ((a1 - b0) / (2.0 * SQRT_2) + slack).floor() as i128;
    if bhi < blo {
        return Some(out);
    }
    if (bhi - blo) as u128 > 4 * limit as u128 + 16 {
        return None;
    }
    let unscale = ZRoot2I::lambda_pow(-m);
    for b in blo..=bhi {
        let bf = b as f64 * SQRT_2;
        let alo = ((a0 - bf).max(b0 + bf) - slack).ceil() as i128;
        let ahi = ((a1 - bf).min(b1 + bf) + slack).floor() as i128;
        for a in alo..=ahi {
            let x = ZRoot2::new(a, b) * unscale.clone();
            let (xf, xbf) = (x.to_f64(), x.bullet().to_f64());
            let tol_x = 1e-12 * (1.0 + x0.abs().max(x1.abs()));
            let tol_y = 1e-12 * (1.0 + y0.abs().max(y1.abs()));
            if xf >= x0 - tol_x && xf <= x1 + tol_x && xbf >= y0 - tol_y && xbf <= y1 + tol_y {
                out.push(x);
                if out.len() > limit {
                    return None;
                }
            }
        }
    }
    Some(out)
}
