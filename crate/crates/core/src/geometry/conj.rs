use crate::ball::{Complex, Real};
use crate::cubic::{Embeddings, FieldElement};
use crate::error::{Error, Result};

/// The real-linear map `g(z) = (cz + conj(cz), dz + conj(dz))` from the
/// complex plane onto `R²`, together with its inverse `f`.
///
/// With `ℓ = α²/((α-ᾱ)(α-β))` the coefficients are
/// `c = (ℓ/α²)(1/β - 1/α)` and `d = (ℓ/α²)(1/β² - 1/α²)`. Under `f`,
/// `δ(N)` with digits `d_j` goes to `Σ d_j α^{j+2}`.
#[derive(Clone, Debug)]
pub struct ConjugationMap {
    c: Complex,
    d: Complex,
    // f = g⁻¹ as a real 2x2 matrix taking (u, v) to (Re z, Im z)
    inv: [[Real; 2]; 2],
}

impl ConjugationMap {
    pub fn new(emb: &Embeddings) -> Result<Self> {
        let params = emb.params();
        let inv_fe = FieldElement::beta_inverse(params);
        let inv_beta = emb.embed_beta(&inv_fe);
        let inv_beta2 = &inv_beta * &inv_beta;
        let inv_alpha = emb.embed_alpha(&inv_fe);
        let inv_alpha2 = &inv_alpha * &inv_alpha;
        let alpha = emb.alpha();

        let diff_conj = alpha - &alpha.conj();
        let diff_beta = alpha - &Complex::from_real(emb.beta().clone());
        let l_over_a2 = (&diff_conj * &diff_beta).recip().ok_or(Error::DegenerateMap)?;
        let c = &l_over_a2 * &(&Complex::from_real(inv_beta) - &inv_alpha);
        let d = &l_over_a2 * &(&Complex::from_real(inv_beta2) - &inv_alpha2);

        // g(x + iy) = 2 [[c_r, -c_i], [d_r, -d_i]] (x, y)
        let det = (&(&c.im * &d.re) - &(&c.re * &d.im)).mul_i64(4);
        if det.contains_zero() {
            return Err(Error::DegenerateMap);
        }
        let two = |x: &Real| x.mul_i64(2);
        let (g11, g12, g21, g22) = (two(&c.re), two(&-&c.im), two(&d.re), two(&-&d.im));
        let inv_entry = |x: &Real| x.div(&det).ok_or(Error::DegenerateMap);
        let inv = [[inv_entry(&g22)?, inv_entry(&-&g12)?], [inv_entry(&-&g21)?, inv_entry(&g11)?]];
        Ok(ConjugationMap { c, d, inv })
    }

    pub fn c(&self) -> &Complex {
        &self.c
    }

    pub fn d(&self) -> &Complex {
        &self.d
    }

    pub fn g(&self, z: &Complex) -> (Real, Real) {
        let cz = &self.c * z;
        let dz = &self.d * z;
        (cz.re.mul_i64(2), dz.re.mul_i64(2))
    }

    pub fn f(&self, x: (&Real, &Real)) -> Complex {
        let [[a, b], [c, d]] = &self.inv;
        Complex::new(&(a * x.0) + &(b * x.1), &(c * x.0) + &(d * x.1))
    }

    pub fn g_f64(&self, z: (f64, f64)) -> (f64, f64) {
        let (cr, ci) = self.c.to_f64();
        let (dr, di) = self.d.to_f64();
        (2.0 * (cr * z.0 - ci * z.1), 2.0 * (dr * z.0 - di * z.1))
    }

    pub fn f_f64(&self, x: (f64, f64)) -> (f64, f64) {
        let m = self.inv.each_ref().map(|row| row.each_ref().map(Real::to_f64));
        (m[0][0] * x.0 + m[0][1] * x.1, m[1][0] * x.0 + m[1][1] * x.1)
    }
}

pub fn conjugation_map_g(z: &Complex, emb: &Embeddings) -> Result<(Real, Real)> {
    Ok(ConjugationMap::new(emb)?.g(z))
}
