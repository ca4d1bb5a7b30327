//! Exact arithmetic in `Z[sqrt2]` and `Z[omega]`, `omega = e^{i pi/4}`.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Integer types the rings are built over (`i128` for synthesis, `BigInt` for number theory).
pub trait RingInt: Clone + Debug + PartialEq + PartialOrd + Integer + Signed + ToPrimitive + From<i32> {}
impl<T: Clone + Debug + PartialEq + PartialOrd + Integer + Signed + ToPrimitive + From<i32>> RingInt for T {}

fn int<T: RingInt>(v: i32) -> T {
    T::from(v)
}

/// `a + b sqrt2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZRoot2<T> {
    pub a: T,
    pub b: T,
}

impl<T: RingInt> ZRoot2<T> {
    pub fn new(a: T, b: T) -> Self {
        ZRoot2 { a, b }
    }

    pub fn from_int(a: T) -> Self {
        ZRoot2 { a, b: T::zero() }
    }

    pub fn zero() -> Self {
        Self::from_int(T::zero())
    }

    pub fn one() -> Self {
        Self::from_int(T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `sqrt2 -> -sqrt2`.
    pub fn bullet(&self) -> Self {
        ZRoot2 { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `x x^bullet = a^2 - 2 b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - int::<T>(2) * self.b.clone() * self.b.clone()
    }

    /// Exact sign of `a + b sqrt2`.
    pub fn signum(&self) -> Ordering {
        let zero = T::zero();
        let sa = self.a.partial_cmp(&zero).unwrap();
        let sb = self.b.partial_cmp(&zero).unwrap();
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        let a2 = self.a.clone() * self.a.clone();
        let b2 = int::<T>(2) * self.b.clone() * self.b.clone();
        match a2.partial_cmp(&b2).unwrap() {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `x >= 0` and `x^bullet >= 0`.
    pub fn is_doubly_nonnegative(&self) -> bool {
        self.signum() != Ordering::Less && self.bullet().signum() != Ordering::Less
    }

    /// Nearest double; when `a` and `b` cancel, evaluates `N / (a - b sqrt2)` in big
    /// integers so the result keeps full relative precision.
    pub fn to_f64(&self) -> f64 {
        let (a, b) = (self.a.to_f64().unwrap(), self.b.to_f64().unwrap());
        let direct = a + b * std::f64::consts::SQRT_2;
        if a.signum() == b.signum() || a == 0.0 || b == 0.0 {
            return direct;
        }
        let (Some(ia), Some(ib)) = (self.a.to_i128(), self.b.to_i128()) else { return direct };
        let small = ia.checked_mul(ia).zip(ib.checked_mul(ib).and_then(|v| v.checked_mul(2)));
        let n = match small {
            Some((aa, bb2)) => (aa - bb2) as f64,
            None => {
                let (ba, bb) = (BigInt::from(ia), BigInt::from(ib));
                (&ba * &ba - BigInt::from(2) * &bb * &bb).to_f64().unwrap()
            }
        };
        n / (a - b * std::f64::consts::SQRT_2)
    }

    pub fn divisible_by_sqrt2(&self) -> bool {
        self.a.is_even()
    }

    pub fn div_sqrt2(&self) -> Self {
        debug_assert!(self.divisible_by_sqrt2());
        ZRoot2 { a: self.b.clone(), b: self.a.clone() / int::<T>(2) }
    }

    /// `lambda = 1 + sqrt2`.
    pub fn lambda() -> Self {
        ZRoot2 { a: T::one(), b: T::one() }
    }

    /// `lambda^m` for any integer `m` (`lambda^-1 = sqrt2 - 1`).
    pub fn lambda_pow(m: i32) -> Self {
        let base = if m >= 0 { Self::lambda() } else { ZRoot2 { a: -T::one(), b: T::one() } };
        let mut r = Self::one();
        for _ in 0..m.unsigned_abs() {
            r = r * base.clone();
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.clone() * self.clone();
        }
        r
    }

    /// `Some(x / y)` when the quotient lies in `Z[sqrt2]`.
    pub fn div_exact(&self, y: &Self) -> Option<Self> {
        let n = y.norm();
        if n.is_zero() {
            return None;
        }
        let p = self.clone() * y.bullet();
        if p.a.is_multiple_of(&n) && p.b.is_multiple_of(&n) {
            Some(ZRoot2 { a: p.a / n.clone(), b: p.b / n })
        } else {
            None
        }
    }
}

impl<T: RingInt> Add for ZRoot2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ZRoot2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<T: RingInt> Sub for ZRoot2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ZRoot2 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<T: RingInt> Neg for ZRoot2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ZRoot2 { a: -self.a, b: -self.b }
    }
}

impl<T: RingInt> Mul for ZRoot2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = int::<T>(2);
        ZRoot2 {
            a: self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
        }
    }
}

/// `a + b omega + c omega^2 + d omega^3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZOmega<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: RingInt> ZOmega<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        ZOmega { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// `omega^k` for `k` taken mod 8.
    pub fn omega_pow(k: i32) -> Self {
        let k = k.rem_euclid(8);
        let sign = if k >= 4 { -T::one() } else { T::one() };
        let mut v = [T::zero(), T::zero(), T::zero(), T::zero()];
        v[(k % 4) as usize] = sign;
        let [a, b, c, d] = v;
        Self::new(a, b, c, d)
    }

    pub fn from_zroot2(x: &ZRoot2<T>) -> Self {
        Self::new(x.a.clone(), x.b.clone(), T::zero(), -x.b.clone())
    }

    /// `i = omega^2`.
    pub fn i() -> Self {
        Self::omega_pow(2)
    }

    /// Complex conjugate.
    pub fn adj(&self) -> Self {
        Self::new(self.a.clone(), -self.d.clone(), -self.c.clone(), -self.b.clone())
    }

    /// `omega -> -omega` (hence `sqrt2 -> -sqrt2`).
    pub fn bullet(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    pub fn mul_omega(&self) -> Self {
        Self::new(-self.d.clone(), self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn mul_omega_pow(&self, k: i32) -> Self {
        let mut r = self.clone();
        for _ in 0..k.rem_euclid(8) {
            r = r.mul_omega();
        }
        r
    }

    /// `x x^dagger` as an element of `Z[sqrt2]`.
    pub fn norm_sqr(&self) -> ZRoot2<T> {
        let p = self.clone() * self.adj();
        debug_assert!(p.c.is_zero() && p.d == -p.b.clone());
        ZRoot2::new(p.a, p.b)
    }

    /// Integer norm `|x|^2 (|x|^2)^bullet`.
    pub fn norm(&self) -> T {
        self.norm_sqr().norm()
    }

    /// `sqrt2 * x`.
    pub fn mul_sqrt2(&self) -> Self {
        Self::new(
            self.b.clone() - self.d.clone(),
            self.a.clone() + self.c.clone(),
            self.b.clone() + self.d.clone(),
            self.c.clone() - self.a.clone(),
        )
    }

    pub fn divisible_by_sqrt2(&self) -> bool {
        (self.a.clone() - self.c.clone()).is_even() && (self.b.clone() - self.d.clone()).is_even()
    }

    pub fn div_sqrt2(&self) -> Self {
        debug_assert!(self.divisible_by_sqrt2());
        let two = int::<T>(2);
        let m = self.mul_sqrt2();
        Self::new(m.a / two.clone(), m.b / two.clone(), m.c / two.clone(), m.d / two)
    }

    /// `sqrt2 Re(x)` and `sqrt2 Im(x)`, both in `Z[sqrt2]`.
    pub fn scaled_re_im(&self) -> (ZRoot2<T>, ZRoot2<T>) {
        (
            ZRoot2::new(self.b.clone() - self.d.clone(), self.a.clone()),
            ZRoot2::new(self.b.clone() + self.d.clone(), self.c.clone()),
        )
    }

    /// `(x + i y) / sqrt2` for `x, y` in `Z[sqrt2]` whose integer parts have equal parity.
    pub fn from_re_im_over_sqrt2(x: &ZRoot2<T>, y: &ZRoot2<T>) -> Option<Self> {
        let two = int::<T>(2);
        let (p, q, r, s) = (x.a.clone(), x.b.clone(), y.a.clone(), y.b.clone());
        if !(p.clone() - r.clone()).is_even() {
            return None;
        }
        Some(Self::new(q, (p.clone() + r.clone()) / two.clone(), s, (r - p) / two))
    }

    /// `x + i y` for `x, y` in `Z[sqrt2]`.
    pub fn from_re_im(x: &ZRoot2<T>, y: &ZRoot2<T>) -> Self {
        Self::new(
            x.a.clone(),
            x.b.clone() + y.b.clone(),
            y.a.clone(),
            y.b.clone() - x.b.clone(),
        )
    }

    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f = |t: &T| t.to_f64().unwrap();
        Complex64::new(
            f(&self.a) + (f(&self.b) - f(&self.d)) * h,
            f(&self.c) + (f(&self.b) + f(&self.d)) * h,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r * self.clone();
        }
        r
    }

    /// `Some(k)` when `x = omega^k`.
    pub fn as_omega_power(&self) -> Option<i32> {
        let coeffs = [&self.a, &self.b, &self.c, &self.d];
        let nonzero: Vec<usize> = (0..4).filter(|&i| !coeffs[i].is_zero()).collect();
        if nonzero.len() != 1 {
            return None;
        }
        let i = nonzero[0];
        if coeffs[i].is_one() {
            Some(i as i32)
        } else if (-coeffs[i].clone()).is_one() {
            Some(i as i32 + 4)
        } else {
            None
        }
    }

    pub fn map<U: RingInt>(&self, f: impl Fn(&T) -> U) -> ZOmega<U> {
        ZOmega::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

impl<T: RingInt> Add for ZOmega<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<T: RingInt> Sub for ZOmega<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<T: RingInt> Neg for ZOmega<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T: RingInt> Mul for ZOmega<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let x = [self.a, self.b, self.c, self.d];
        let y = [o.a, o.b, o.c, o.d];
        let mut r = [T::zero(), T::zero(), T::zero(), T::zero()];
        for i in 0..4 {
            for j in 0..4 {
                let p = x[i].clone() * y[j].clone();
                if i + j < 4 {
                    r[i + j] = r[i + j].clone() + p;
                } else {
                    r[i + j - 4] = r[i + j - 4].clone() - p;
                }
            }
        }
        let [a, b, c, d] = r;
        Self::new(a, b, c, d)
    }
}

pub type ZOmegaI = ZOmega<i128>;
pub type ZRoot2I = ZRoot2<i128>;
pub type ZOmegaB = ZOmega<BigInt>;
pub type ZRoot2B = ZRoot2<BigInt>;

pub fn to_big(x: &ZOmegaI) -> ZOmegaB {
    x.map(|v| BigInt::from(*v))
}

pub fn from_big(x: &ZOmegaB) -> Option<ZOmegaI> {
    Some(ZOmega::new(x.a.to_i128()?, x.b.to_i128()?, x.c.to_i128()?, x.d.to_i128()?))
}

/// Exact element `(a + b sqrt2 + i (c + d sqrt2)) / sqrt2^k` of `Z[i, 1/sqrt2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub k: u32,
}

impl RingElement {
    /// Reduces `k` while `sqrt2` divides the numerator, giving a canonical form.
    pub fn new(a: i64, b: i64, c: i64, d: i64, k: u32) -> Self {
        let mut r = RingElement { a, b, c, d, k };
        while r.k > 0 && r.a % 2 == 0 && r.c % 2 == 0 {
            r = RingElement { a: r.b, b: r.a / 2, c: r.d, d: r.c / 2, k: r.k - 1 };
        }
        r
    }

    pub fn from_parts(re: &ZRoot2I, im: &ZRoot2I, k: u32) -> Option<Self> {
        Some(RingElement::new(
            re.a.to_i64()?,
            re.b.to_i64()?,
            im.a.to_i64()?,
            im.b.to_i64()?,
            k,
        ))
    }

    pub fn re(&self) -> ZRoot2I {
        ZRoot2::new(self.a as i128, self.b as i128)
    }

    pub fn im(&self) -> ZRoot2I {
        ZRoot2::new(self.c as i128, self.d as i128)
    }

    pub fn to_complex(&self) -> Complex64 {
        let s = std::f64::consts::SQRT_2.powi(self.k as i32);
        Complex64::new(self.re().to_f64() / s, self.im().to_f64() / s)
    }

    /// Numerator over `sqrt2^k` as a `Z[omega]` element.
    pub fn to_zomega(&self) -> ZOmegaI {
        ZOmega::from_re_im(&self.re(), &self.im())
    }

    /// Numerator rescaled to denominator exponent `k >= self.k`.
    pub fn numerator_at(&self, k: u32) -> ZOmegaI {
        assert!(k >= self.k);
        let mut z = self.to_zomega();
        for _ in self.k..k {
            z = z.mul_sqrt2();
        }
        z
    }

    /// `|x|^2` times `2^k`, exactly.
    pub fn norm_sqr_scaled(&self) -> ZRoot2I {
        let (re, im) = (self.re(), self.im());
        re.clone() * re + im.clone() * im
    }
}
