//! Fixed-point ball arithmetic on arbitrary-precision integers.
//!
//! A [`Real`] at precision `p` stores an integer midpoint `m` and a
//! nonnegative integer radius `r`; it encloses every real number in
//! `[(m - r) / 2^p, (m + r) / 2^p]`. Every operation returns a ball that
//! encloses all results obtainable from points of its inputs, so comparisons
//! that succeed are certified and comparisons that cannot be decided report
//! `None` and the caller raises the precision.
//!
//! All operands of a binary operation must share the same precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, p: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << p))
}

fn shr_ceil(x: &BigInt, p: u32) -> BigInt {
    -shr_floor(&-x, p)
}

fn pow2_f64(e: i64) -> f64 {
    if e < -1000 {
        pow2_f64(e / 2) * pow2_f64(e - e / 2)
    } else {
        2f64.powi(e as i32)
    }
}

/// `m / 2^prec` rounded to a nearby `f64` (a few ulps of slack).
pub(crate) fn scaled_to_f64(m: &BigInt, prec: u32) -> f64 {
    let bits = m.bits();
    if bits > 64 {
        let shift = bits - 64;
        let top = (m >> shift).to_f64().unwrap_or(f64::NAN);
        top * pow2_f64(shift as i64 - prec as i64)
    } else {
        m.to_f64().unwrap_or(f64::NAN) * pow2_f64(-(prec as i64))
    }
}

fn nudge_up(x: f64) -> f64 {
    x + x.abs() * 8.0 * f64::EPSILON + f64::MIN_POSITIVE
}

fn nudge_down(x: f64) -> f64 {
    x - x.abs() * 8.0 * f64::EPSILON - f64::MIN_POSITIVE
}

impl Real {
    pub fn from_parts(mid: BigInt, rad: BigInt, prec: u32) -> Self {
        assert!(!rad.is_negative(), "ball radius must be nonnegative");
        Real { mid, rad, prec }
    }

    pub fn from_int(k: &BigInt, prec: u32) -> Self {
        Real { mid: k << prec, rad: BigInt::zero(), prec }
    }

    pub fn from_i64(k: i64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(k), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_i64(0, prec)
    }

    /// Encloses a finite `f64` (exactly when its exponent fits the precision).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "cannot enclose a non-finite value");
        let (mant, exp, sign) = x.integer_decode();
        let m = BigInt::from(mant) * BigInt::from(sign);
        let shift = exp as i64 + prec as i64;
        if shift >= 0 {
            Real { mid: m << shift as u32, rad: BigInt::zero(), prec }
        } else {
            let s = (-shift).min(u32::MAX as i64) as u32;
            let (mid, rem) = m.div_mod_floor(&(BigInt::one() << s.min(2048)));
            let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
            Real { mid, rad, prec }
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    /// Lower endpoint in units of `2^-prec`.
    pub fn lower(&self) -> BigInt {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> BigInt {
        &self.mid + &self.rad
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, self.prec)
    }

    pub fn lower_f64(&self) -> f64 {
        nudge_down(scaled_to_f64(&self.lower(), self.prec))
    }

    pub fn upper_f64(&self) -> f64 {
        nudge_up(scaled_to_f64(&self.upper(), self.prec))
    }

    /// Upper bound on the radius as an `f64`.
    pub fn rad_f64(&self) -> f64 {
        nudge_up(scaled_to_f64(&self.rad, self.prec))
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper_f64(&self) -> f64 {
        nudge_up(scaled_to_f64(&(self.mid.abs() + &self.rad), self.prec))
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// `Some(true)` if every point is below every point of `other`,
    /// `Some(false)` if the reverse holds (ties included), `None` if the
    /// balls overlap.
    pub fn certified_lt(&self, other: &Real) -> Option<bool> {
        debug_assert_eq!(self.prec, other.prec);
        if self.upper() < other.lower() {
            Some(true)
        } else if self.lower() >= other.upper() {
            Some(false)
        } else {
            None
        }
    }

    /// Certified floor, or `None` if the ball straddles an integer.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = shr_floor(&self.lower(), self.prec);
        let hi = shr_floor(&self.upper(), self.prec);
        if lo == hi {
            Some(lo)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Real {
        if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Real {
        let mut s = self * self;
        // x^2 is nonnegative: pull a negative lower end back to zero
        if s.lower().is_negative() {
            let hi = s.upper();
            let mid = &hi >> 1u32;
            let rad = &hi - &mid;
            s = Real { mid, rad, prec: s.prec };
        }
        s
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        Real { mid: &self.mid * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        self.mul_int(&BigInt::from(k))
    }

    /// Exact multiplication by `2^-k`, up to one ulp of rounding.
    pub fn shr(&self, k: u32) -> Real {
        let (mid, rem) = self.mid.div_mod_floor(&(BigInt::one() << k));
        let rad = shr_ceil(&self.rad, k) + u32::from(!rem.is_zero());
        Real { mid, rad, prec: self.prec }
    }

    /// Quotient; `None` when the divisor ball contains zero.
    pub fn div(&self, other: &Real) -> Option<Real> {
        debug_assert_eq!(self.prec, other.prec);
        let y = other.mid.abs();
        if y <= other.rad {
            return None;
        }
        let p = self.prec;
        let mid = (&self.mid << p).div_floor(&other.mid);
        let num = (&self.rad * &y + self.mid.abs() * &other.rad) << p;
        let den = &y * (&y - &other.rad);
        let rad = num.div_ceil(&den) + 1;
        Some(Real { mid, rad, prec: p })
    }

    /// Square root of a ball known to enclose a nonnegative number. A
    /// negative lower end is clamped to zero; `None` if the whole ball is
    /// negative.
    pub fn sqrt_nonneg(&self) -> Option<Real> {
        let hi = self.upper();
        if hi.is_negative() {
            return None;
        }
        let lo = self.lower().max(BigInt::zero());
        let p = self.prec;
        let s_lo: BigInt = (lo << p).sqrt();
        let s_hi: BigInt = (hi << p).sqrt() + 1;
        let mid: BigInt = (&s_lo + &s_hi) >> 1u32;
        let rad: BigInt = (&s_hi - &mid).max(&mid - &s_lo) + 1;
        Some(Real { mid, rad, prec: p })
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e} ± {:.2e}", self.to_f64(), self.rad_f64())
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        debug_assert_eq!(self.prec, o.prec);
        Real { mid: &self.mid + &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        debug_assert_eq!(self.prec, o.prec);
        Real { mid: &self.mid - &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let (mid, rem) = (&self.mid * &o.mid).div_mod_floor(&(BigInt::one() << p));
        let err = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let rad = shr_ceil(&err, p) + u32::from(!rem.is_zero());
        Real { mid, rad, prec: p }
    }
}

/// Complex ball as a pair of real balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        debug_assert_eq!(re.prec, im.prec);
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec;
        Complex { re, im: Real::zero(p) }
    }

    pub fn from_i64(k: i64, prec: u32) -> Self {
        Self::from_real(Real::from_i64(k, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn mul_real(&self, r: &Real) -> Complex {
        Complex { re: &self.re * r, im: &self.im * r }
    }

    pub fn mul_int(&self, k: &BigInt) -> Complex {
        Complex { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn mul_i64(&self, k: i64) -> Complex {
        self.mul_int(&BigInt::from(k))
    }

    pub fn norm_sq(&self) -> Real {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sq().sqrt_nonneg().expect("norm_sq is nonnegative")
    }

    pub fn recip(&self) -> Option<Complex> {
        let n = self.norm_sq();
        Some(Complex { re: self.re.div(&n)?, im: (-&self.im).div(&n)? })
    }

    pub fn div(&self, o: &Complex) -> Option<Complex> {
        Some(self * &o.recip()?)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Upper bound on the distance from the midpoint to any enclosed value.
    pub fn rad_f64(&self) -> f64 {
        self.re.rad_f64() + self.im.rad_f64()
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn encloses(x: &Real, v: f64) -> bool {
        x.lower_f64() <= v && v <= x.upper_f64()
    }

    #[test]
    fn shifts_round_toward_negative_infinity() {
        assert_eq!(shr_floor(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(shr_ceil(&BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(shr_ceil(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn integer_arithmetic_is_exact() {
        let x = Real::from_i64(7, P);
        let y = Real::from_i64(-3, P);
        let z = &x * &y;
        assert_eq!(z.floor(), Some(BigInt::from(-21)));
        assert!((&z + &Real::from_i64(21, P)).contains_zero());
    }

    #[test]
    fn division_and_sqrt_enclose() {
        let two = Real::from_i64(2, P);
        let three = Real::from_i64(3, P);
        let q = two.div(&three).unwrap();
        assert!(encloses(&q, 2.0 / 3.0));
        let back = &q * &three;
        assert!(encloses(&back, 2.0));
        let s = two.sqrt_nonneg().unwrap();
        assert!(encloses(&s, std::f64::consts::SQRT_2));
        assert!(s.rad_f64() < 1e-35);
        assert!(Real::zero(P).div(&Real::zero(P)).is_none());
    }

    #[test]
    fn from_f64_round_trips() {
        for &v in &[0.0, 1.5, -0.1, 12345.678] {
            let r = Real::from_f64(v, P);
            assert_eq!(r.to_f64(), v);
            assert!(r.rad().is_zero());
        }
        let tiny = Real::from_f64(1e-30, P);
        assert!(encloses(&tiny, 1e-30) && !tiny.rad().is_zero());
    }

    #[test]
    fn certified_comparison_refuses_overlap() {
        let a = Real::from_parts(BigInt::from(10), BigInt::from(2), 4);
        let b = Real::from_parts(BigInt::from(11), BigInt::from(2), 4);
        let c = Real::from_parts(BigInt::from(20), BigInt::from(2), 4);
        assert_eq!(a.certified_lt(&b), None);
        assert_eq!(a.certified_lt(&c), Some(true));
        assert_eq!(c.certified_lt(&a), Some(false));
    }

    #[test]
    fn complex_reciprocal() {
        let z = Complex::new(Real::from_i64(3, P), Real::from_i64(4, P));
        let w = z.recip().unwrap();
        let (re, im) = w.to_f64();
        assert!((re - 0.12).abs() < 1e-15 && (im + 0.16).abs() < 1e-15);
        let one = &z * &w;
        assert!(encloses(&one.re, 1.0) && encloses(&one.im, 0.0));
        assert!(encloses(&z.abs(), 5.0));
    }
}
