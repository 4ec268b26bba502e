use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{CubicParams, FieldElement, DEFAULT_PRECISION_CAP};
use crate::ball::{Complex, Real};
use crate::error::{Error, Result};

/// Numeric images of `β` and of its conjugate `α` (the one with positive
/// imaginary part; the other conjugate is `conj(α)`).
#[derive(Clone, Debug)]
pub struct Embeddings {
    params: CubicParams,
    precision_bits: u32,
    precision_cap: u32,
    /// Certified bracket `[lo, lo + 1] * 2^-prec` with `P(lo) < 0 < P(lo + 1)`.
    bracket_lo: BigInt,
    beta_pows: [Real; 3],
    alpha_pows: [Complex; 3],
    abs_alpha: Real,
}

/// Which embedding of `Q(β)` to evaluate at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Beta,
    Alpha,
}

#[derive(Clone, Debug)]
pub enum Embedded {
    Real(Real),
    Complex(Complex),
}

impl Embedded {
    /// Upper bound on the distance between the returned midpoint and the
    /// exact image.
    pub fn error_bound(&self) -> f64 {
        match self {
            Embedded::Real(r) => r.rad_f64(),
            Embedded::Complex(z) => z.rad_f64(),
        }
    }
}

/// `2^{3p} P(m / 2^p)`, exact.
fn scaled_poly(params: &CubicParams, m: &BigInt, p: u32) -> BigInt {
    let one = BigInt::one() << p;
    let m2 = m * m;
    &m2 * m - ((&m2 * params.a()) << p) - ((m * params.b()) << (2 * p)) - (one << (2 * p))
}

pub fn isolate_roots(params: CubicParams, precision_bits: u32) -> Result<Embeddings> {
    isolate_roots_with_cap(params, precision_bits, DEFAULT_PRECISION_CAP.max(precision_bits))
}

fn isolate_roots_with_cap(params: CubicParams, precision_bits: u32, cap: u32) -> Result<Embeddings> {
    if precision_bits < 64 {
        return Err(Error::InvalidArgument(format!("precision_bits={precision_bits} < 64")));
    }
    if !params.discriminant().is_negative() {
        return Err(Error::RealConjugates { a: params.a(), b: params.b() });
    }
    let p = precision_bits;
    // P(a - 1) < 0 < P(a) throughout the family
    let mut lo = BigInt::from(params.a() - 1) << p;
    let mut hi = BigInt::from(params.a()) << p;
    if !scaled_poly(&params, &lo, p).is_negative() || !scaled_poly(&params, &hi, p).is_positive() {
        return Err(Error::PrecisionExhausted { bits: p });
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        if scaled_poly(&params, &mid, p).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // final certification of the sign change on the last bracket
    if !(scaled_poly(&params, &lo, p).is_negative() && scaled_poly(&params, &hi, p).is_positive()) {
        return Err(Error::PrecisionExhausted { bits: p });
    }

    let beta = Real::from_parts(lo.clone(), BigInt::one(), p);
    let beta2 = &beta * &beta;
    let (a, b) = (params.a(), params.b());
    let inv_beta = &(&beta2 - &beta.mul_i64(a)) - &Real::from_i64(b, p);

    // P(x) = (x - β)(x² + (β - a)x + 1/β): α = (a - β)/2 + i sqrt(1/β - ((a - β)/2)²)
    let re = (&Real::from_i64(a, p) - &beta).shr(1);
    let im_sq = &inv_beta - &re.square();
    if !im_sq.is_positive() {
        return Err(Error::PrecisionExhausted { bits: p });
    }
    let im = im_sq.sqrt_nonneg().ok_or(Error::PrecisionExhausted { bits: p })?;
    let alpha = Complex::new(re, im);
    let alpha2 = &alpha * &alpha;
    let abs_alpha = inv_beta.sqrt_nonneg().ok_or(Error::PrecisionExhausted { bits: p })?;

    let emb = Embeddings {
        params,
        precision_bits: p,
        precision_cap: cap,
        bracket_lo: lo,
        beta_pows: [Real::from_i64(1, p), beta, beta2],
        alpha_pows: [Complex::from_i64(1, p), alpha, alpha2],
        abs_alpha,
    };
    emb.certify()?;
    Ok(emb)
}

impl Embeddings {
    fn certify(&self) -> Result<()> {
        let p = self.precision_bits;
        let beta = self.beta();
        // |P(β)| < 2^{8-p} β³
        let beta3 = &self.beta_pows[2] * beta;
        let tol = beta3.shr(p - 8);
        let poly_ok = self.poly_at_beta().abs().upper() < tol.lower();
        // |β |α|² - 1| < 2^{8-p}, i.e. below 256 ulps
        let prod = &(beta * &self.alpha().norm_sq()) - &Real::from_i64(1, p);
        let prod_ok = prod.abs().upper() < BigInt::from(256);
        let pisot_ok = beta.lower_f64() > 1.0 && self.abs_alpha.upper_f64() < 1.0 && self.alpha().im.is_positive();
        if poly_ok && prod_ok && pisot_ok {
            Ok(())
        } else {
            Err(Error::PrecisionExhausted { bits: p })
        }
    }

    fn poly_at_beta(&self) -> Real {
        let p = self.precision_bits;
        let beta = self.beta();
        let beta3 = &self.beta_pows[2] * beta;
        let t = &(&beta3 - &self.beta_pows[2].mul_i64(self.params.a())) - &beta.mul_i64(self.params.b());
        &t - &Real::from_i64(1, p)
    }

    pub fn params(&self) -> &CubicParams {
        &self.params
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn precision_cap(&self) -> u32 {
        self.precision_cap
    }

    pub fn with_precision_cap(mut self, cap: u32) -> Self {
        self.precision_cap = cap.max(self.precision_bits);
        self
    }

    pub fn beta(&self) -> &Real {
        &self.beta_pows[1]
    }

    pub fn beta_pows(&self) -> &[Real; 3] {
        &self.beta_pows
    }

    pub fn alpha(&self) -> &Complex {
        &self.alpha_pows[1]
    }

    pub fn alpha_pows(&self) -> &[Complex; 3] {
        &self.alpha_pows
    }

    pub fn abs_alpha(&self) -> &Real {
        &self.abs_alpha
    }

    /// The certified bracket of `β` as exact dyadic endpoints scaled by
    /// `2^precision_bits`.
    pub fn beta_bracket(&self) -> (BigInt, BigInt) {
        (self.bracket_lo.clone(), &self.bracket_lo + 1)
    }

    /// A-priori bound on the evaluation error of an element whose
    /// coordinates are at most `max_coord` in absolute value:
    /// `max_coord * (rad(β) + rad(β²)) + rounding`, valid for both places.
    pub fn eval_error_bound(&self, max_coord: f64) -> f64 {
        let rad = self.beta_pows[1].rad_f64()
            + self.beta_pows[2].rad_f64()
            + self.alpha_pows[1].rad_f64()
            + self.alpha_pows[2].rad_f64();
        max_coord * rad + 4.0 * 2f64.powi(-(self.precision_bits as i32))
    }

    pub fn embed_beta(&self, x: &FieldElement) -> Real {
        let [c0, c1, c2] = x.coords();
        let t = &Real::from_int(c0, self.precision_bits) + &self.beta_pows[1].mul_int(c1);
        &t + &self.beta_pows[2].mul_int(c2)
    }

    pub fn embed_alpha(&self, x: &FieldElement) -> Complex {
        let [c0, c1, c2] = x.coords();
        let t = &Complex::from_real(Real::from_int(c0, self.precision_bits)) + &self.alpha_pows[1].mul_int(c1);
        &t + &self.alpha_pows[2].mul_int(c2)
    }

    /// Same roots at twice the precision, or `PrecisionExhausted` once the
    /// cap is reached.
    pub fn refined(&self) -> Result<Embeddings> {
        let next = self.precision_bits.saturating_mul(2);
        if next > self.precision_cap {
            return Err(Error::PrecisionExhausted { bits: self.precision_bits });
        }
        isolate_roots_with_cap(self.params, next, self.precision_cap)
    }
}

pub fn fe_embed(x: &FieldElement, which: Place, emb: &Embeddings) -> Embedded {
    match which {
        Place::Beta => Embedded::Real(emb.embed_beta(x)),
        Place::Alpha => Embedded::Complex(emb.embed_alpha(x)),
    }
}
