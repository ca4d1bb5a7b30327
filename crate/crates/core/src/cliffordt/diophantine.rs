//! The norm equation `t^dagger t = xi` for doubly nonnegative `xi` in `Z[sqrt2]`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{factorize, powmod};
use super::ring::{ZOmega, ZOmegaB, ZOmegaI, ZRoot2, ZRoot2B, ZRoot2I};

/// Pollard-Brent iteration budget per equation.
const FACTOR_BUDGET: u64 = 1 << 17;

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    let (a, n) = if n.is_negative() { (-a, -n) } else { (a.clone(), n.clone()) };
    let two = BigInt::from(2);
    (two.clone() * a + n.clone()).div_floor(&(two * n))
}

fn zr2_rem(x: &ZRoot2B, y: &ZRoot2B) -> ZRoot2B {
    let n = y.norm();
    let p = x.clone() * y.bullet();
    let q = ZRoot2::new(round_div(&p.a, &n), round_div(&p.b, &n));
    x.clone() - q * y.clone()
}

fn zr2_gcd(mut x: ZRoot2B, mut y: ZRoot2B) -> ZRoot2B {
    while !y.is_zero() {
        let r = zr2_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn zw_rem(x: &ZOmegaB, y: &ZOmegaB) -> ZOmegaB {
    let yy = y.norm_sqr();
    let n = yy.norm();
    let p = x.clone() * y.adj() * ZOmega::from_zroot2(&yy.bullet());
    let q = ZOmega::new(round_div(&p.a, &n), round_div(&p.b, &n), round_div(&p.c, &n), round_div(&p.d, &n));
    x.clone() - q * y.clone()
}

fn zw_gcd(mut x: ZOmegaB, mut y: ZOmegaB) -> ZOmegaB {
    while !y.is_zero() {
        let r = zw_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// A square root of `a` mod the odd prime `p`, by trying `z^((p-1)/2^j)` style
/// exponents; only the cases needed here are supported.
fn root_of_unity_8(p: u128) -> Option<u128> {
    (2u128..200).map(|z| powmod(z, (p - 1) / 8, p)).find(|&w| powmod(w, 4, p) == p - 1)
}

fn sqrt_minus_one(p: u128) -> Option<u128> {
    (2u128..200).map(|z| powmod(z, (p - 1) / 4, p)).find(|&h| powmod(h, 2, p) == p - 1)
}

/// `(x, y)` with `x^2 + d y^2 = p` from a root `r^2 = -d mod p`.
fn cornacchia(p: u128, d: u128, r: u128) -> Option<(u128, u128)> {
    let bound = p.sqrt();
    let (mut a, mut b) = (p, r.min(p - r));
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    if rest % d != 0 {
        return None;
    }
    let c = (rest / d).sqrt();
    (c * c == rest / d).then_some((b, c))
}

fn big(v: u128) -> BigInt {
    BigInt::from(v)
}

fn multiplicity(x: &ZRoot2B, pi: &ZRoot2B) -> u32 {
    let mut k = 0;
    let mut r = x.clone();
    while let Some(q) = r.div_exact(pi) {
        r = q;
        k += 1;
    }
    k
}

/// Finds `t` in `Z[omega]` with `t^dagger t = xi`, or `None` when no solution
/// exists or the norm could not be factored within budget.
pub fn solve_norm_equation(xi: &ZRoot2I) -> Option<ZOmegaI> {
    if xi.is_zero() {
        return Some(ZOmega::zero());
    }
    if !xi.is_doubly_nonnegative() {
        return None;
    }
    let xi_b: ZRoot2B = ZRoot2::new(BigInt::from(xi.a), BigInt::from(xi.b));
    let mut r = xi_b.clone();
    let mut t: ZOmegaB = ZOmega::one();
    let delta: ZOmegaB = ZOmega::new(BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::zero());
    while r.divisible_by_sqrt2() {
        r = r.div_sqrt2();
        t = t * delta.clone();
    }
    let n = r.norm().abs().to_u128()?;
    for (p, e) in factorize(n, FACTOR_BUDGET)? {
        match p % 8 {
            3 | 5 => {
                if e % 2 != 0 {
                    return None;
                }
                let tp: ZOmegaB = if p % 8 == 5 {
                    let (a, b) = cornacchia(p, 1, sqrt_minus_one(p)?)?;
                    ZOmega::new(big(a), BigInt::zero(), big(b), BigInt::zero())
                } else {
                    let root = powmod(p - 2, (p + 1) / 4, p);
                    if powmod(root, 2, p) != p - 2 {
                        return None;
                    }
                    let (a, b) = cornacchia(p, 2, root)?;
                    ZOmega::new(big(a), big(b), BigInt::zero(), big(b))
                };
                t = t * tp.pow(e / 2);
            }
            1 | 7 => {
                let (r2, zeta) = if p % 8 == 7 {
                    (powmod(2, (p + 1) / 4, p), None)
                } else {
                    let z = root_of_unity_8(p)?;
                    let z3 = powmod(z, 3, p);
                    ((z + p - z3) % p, Some(z))
                };
                let pi = zr2_gcd(ZRoot2::from_int(big(p)), ZRoot2::new(big(r2), BigInt::one()));
                let m1 = multiplicity(&r, &pi);
                let m2 = multiplicity(&r, &pi.bullet());
                if m1 + m2 != e {
                    return None;
                }
                match zeta {
                    None => {
                        if m1 % 2 != 0 || m2 % 2 != 0 {
                            return None;
                        }
                        t = t * ZOmega::from_zroot2(&pi).pow(m1 / 2) * ZOmega::from_zroot2(&pi.bullet()).pow(m2 / 2);
                    }
                    Some(z) => {
                        let h = powmod(z, 2, p);
                        let s = zw_gcd(ZOmega::from_zroot2(&pi), ZOmega::new(big(h), BigInt::zero(), BigInt::one(), BigInt::zero()));
                        t = t * s.pow(m1) * s.bullet().pow(m2);
                    }
                }
            }
            _ => return None,
        }
    }
    // xi = u * t^dagger t with u a doubly positive unit, i.e. lambda^(2m).
    let u = xi_b.div_exact(&t.norm_sqr())?;
    let m = (u.to_f64().ln() / (2.0 * (1.0 + std::f64::consts::SQRT_2).ln())).round() as i32;
    if ZRoot2B::lambda_pow(2 * m) != u {
        return None;
    }
    t = t * ZOmega::from_zroot2(&ZRoot2B::lambda_pow(m));
    debug_assert_eq!(t.norm_sqr(), xi_b);
    super::ring::from_big(&t)
}
