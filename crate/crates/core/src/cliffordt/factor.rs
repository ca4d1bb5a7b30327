//! Integer factoring for the norm equation: Miller-Rabin plus Pollard-Brent
//! over `u128` with a bounded iteration budget.

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if a < (1 << 64) && b < (1 << 64) {
        return (a * b) % m;
    }
    // m < 2^127 keeps every doubling below 2^128.
    let (mut r, mut x, mut y) = (0u128, a % m, b);
    while y > 0 {
        if y & 1 == 1 {
            r = (r + x) % m;
        }
        x = (x << 1) % m;
        y >>= 1;
    }
    r
}

pub(crate) fn powmod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

const SMALL_PRIMES: [u128; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

pub(crate) fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One nontrivial factor of the odd composite `n`, or `None` if the budget runs out.
fn brent(n: u128, budget: &mut u64) -> Option<u128> {
    for c in 1u128..20 {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let (mut x, mut g, mut ys) = (0u128, 1u128, 0u128);
        let m = 64u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
                if *budget < m {
                    return None;
                }
                *budget -= m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization as `(p, e)` pairs sorted by `p`; `None` when `n` is
/// too large or a factor could not be found within `budget` iterations.
pub(crate) fn factorize(n: u128, mut budget: u64) -> Option<Vec<(u128, u32)>> {
    if n == 0 || n >= (1u128 << 126) {
        return None;
    }
    let mut out: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    for p in (2u128..1000).filter(|&p| SMALL_PRIMES.contains(&p) || is_prime(p)) {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some(e) => e.1 += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let f = brent(m, &mut budget)?;
        stack.push(f);
        stack.push(m / f);
    }
    out.sort();
    Some(out)
}
