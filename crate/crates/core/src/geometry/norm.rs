use std::sync::Arc;

use num_bigint::BigInt;

use super::delta::{CubicSystem, DeltaVector};
use crate::ball::{Complex, Real};
use crate::cubic::{isolate_roots, Embeddings, FieldElement};
use crate::error::Result;
use crate::numeration::DigitString;

/// The Rauzy norm `N(x) = |(α + b/β) x₁ + x₂/β|` on `R²`.
///
/// The first row of the diagonalising matrix `M` is `(λ + b/β, 1/β)` with
/// `λ = conj(α)`; on real vectors the two rows have equal modulus, so the
/// norm is evaluated from the `α` row.
#[derive(Clone, Debug)]
pub struct RauzyNormCtx {
    sys: Arc<CubicSystem>,
    emb: Embeddings,
    c1: Complex,
    c2: Real,
    /// `c1 β^k` and `c2 β^k`: images of the basis under the norm's linear form.
    form_x1: [Complex; 3],
    form_x2: [Real; 3],
    kappa: Real,
    rmat: [[f64; 2]; 2],
    lambda_min: f64,
    lambda_lower: f64,
}

impl RauzyNormCtx {
    pub fn new(sys: Arc<CubicSystem>, emb: Embeddings) -> Self {
        assert_eq!(sys.params(), emb.params(), "system and embeddings disagree on (a, b)");
        let p = emb.precision_bits();
        let inv = emb.embed_beta(&FieldElement::beta_inverse(sys.params()));
        let c1 = emb.alpha() + &Complex::from_real(inv.mul_i64(sys.params().b()));
        let c2 = inv;
        let form_x1 = emb.beta_pows().clone().map(|bk| c1.mul_real(&bk));
        let form_x2 = emb.beta_pows().clone().map(|bk| &c2 * &bk);

        let rmat = [[c1.re.to_f64(), c2.to_f64()], [c1.im.to_f64(), 0.0]];
        let frob_sq: f64 = rmat.iter().flatten().map(|x| x * x).sum();
        let det = rmat[0][0] * rmat[1][1] - rmat[0][1] * rmat[1][0];
        let lambda_min = ((frob_sq - (frob_sq * frob_sq - 4.0 * det * det).max(0.0).sqrt()) / 2.0).sqrt();
        // σ_min σ_max = |det| and σ_max <= ||R||_F
        let lambda_lower = det.abs() / frob_sq.sqrt() * (1.0 - 1e-12);
        debug_assert!(lambda_lower <= lambda_min);

        let mut ctx =
            RauzyNormCtx { sys, emb, c1, c2, form_x1, form_x2, kappa: Real::zero(p), rmat, lambda_min, lambda_lower };
        let v = ctx.sys.v().clone();
        ctx.kappa = ctx.norm_exact(&DeltaVector { x1: v.0, x2: v.1, source: Some(1) });
        ctx
    }

    pub fn from_params(params: crate::cubic::CubicParams, precision_bits: u32) -> Result<Self> {
        let emb = isolate_roots(params, precision_bits)?;
        Ok(Self::new(Arc::new(CubicSystem::new(params)), emb))
    }

    pub fn system(&self) -> &CubicSystem {
        &self.sys
    }

    pub fn system_arc(&self) -> &Arc<CubicSystem> {
        &self.sys
    }

    pub fn emb(&self) -> &Embeddings {
        &self.emb
    }

    pub fn precision_bits(&self) -> u32 {
        self.emb.precision_bits()
    }

    /// `α + b/β`.
    pub fn c1(&self) -> &Complex {
        &self.c1
    }

    /// `1/β`.
    pub fn c2(&self) -> &Real {
        &self.c2
    }

    /// `κ = N(δ(1))`.
    pub fn kappa(&self) -> &Real {
        &self.kappa
    }

    /// Rows are the real and imaginary parts of `(c1, c2)`, so that
    /// `N(x) = |R x|₂`.
    pub fn rmat(&self) -> [[f64; 2]; 2] {
        self.rmat
    }

    /// Smallest singular value of [`Self::rmat`].
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    /// Certified lower bound for `lambda_min`: `|det R| / ||R||_F`.
    pub fn lambda_lower(&self) -> f64 {
        self.lambda_lower
    }

    pub fn refined(&self) -> Result<Self> {
        Ok(Self::new(self.sys.clone(), self.emb.refined()?))
    }

    /// `c1 x₁ + c2 x₂` for an exact vector; one embedding, no intermediate
    /// rounding of `x`.
    pub fn linear_form(&self, x: &DeltaVector) -> Complex {
        let p = self.precision_bits();
        let mut re = Real::zero(p);
        let mut im = Real::zero(p);
        for k in 0..3 {
            let (u, w) = (&self.form_x1[k], &self.form_x2[k]);
            let a = &x.x1.coords()[k];
            let b = &x.x2.coords()[k];
            re = &(&re + &u.re.mul_int(a)) + &w.mul_int(b);
            im = &im + &u.im.mul_int(a);
        }
        Complex::new(re, im)
    }

    pub fn norm_sq_exact(&self, x: &DeltaVector) -> Real {
        self.linear_form(x).norm_sq()
    }

    pub fn norm_exact(&self, x: &DeltaVector) -> Real {
        self.linear_form(x).abs()
    }

    /// `N(q v - g)`.
    pub fn residual_norm(&self, q: &BigInt, g: (&BigInt, &BigInt)) -> Real {
        self.norm_exact(&self.sys.residual(q, g))
    }

    pub fn norm_f64(&self, x: (f64, f64)) -> f64 {
        let [[r11, r12], [r21, r22]] = self.rmat;
        (r11 * x.0 + r12 * x.1).hypot(r21 * x.0 + r22 * x.1)
    }
}

/// `N(x)` for a real pair, as a ball enclosing the exact value.
pub fn rauzy_norm(x: (&Real, &Real), ctx: &RauzyNormCtx) -> Real {
    let z = &ctx.c1.mul_real(x.0) + &Complex::from_real(&ctx.c2 * x.1);
    z.abs()
}

/// `κ |Σ d_n α^n|`.
pub fn norm_of_digits(d: &DigitString, ctx: &RauzyNormCtx) -> Real {
    let p = ctx.precision_bits();
    let alpha = ctx.emb.alpha();
    let mut s = Complex::from_i64(0, p);
    for &digit in d.digits() {
        s = &(&s * alpha) + &Complex::from_i64(digit as i64, p);
    }
    &ctx.kappa * &s.abs()
}

/// `M = [[λ + b/β, 1/β], [-α - b/β, -1/β]]` with `λ = conj(α)`.
pub fn matrix_m(ctx: &RauzyNormCtx) -> [[Complex; 2]; 2] {
    let c2 = Complex::from_real(ctx.c2.clone());
    [[ctx.c1.conj(), c2.clone()], [-&ctx.c1, -&c2]]
}

/// Entries of `M B - diag(α, conj α) M`, each a ball that should contain 0.
pub fn similarity_residual(ctx: &RauzyNormCtx) -> [[Complex; 2]; 2] {
    let emb = &ctx.emb;
    let b = ctx.sys.matrix_b();
    let be: Vec<Complex> = b.entries.iter().flatten().map(|e| Complex::from_real(emb.embed_beta(e))).collect();
    let bm = [[be[0].clone(), be[1].clone()], [be[2].clone(), be[3].clone()]];
    let m = matrix_m(ctx);
    let diag = [emb.alpha().clone(), emb.alpha().conj()];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mb = &(&m[i][0] * &bm[0][j]) + &(&m[i][1] * &bm[1][j]);
            &mb - &(&diag[i] * &m[i][j])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::validate_params;
    use crate::geometry::delta::{apply_b, delta_of};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(a: i64, b: i64) -> RauzyNormCtx {
        RauzyNormCtx::from_params(validate_params(a, b).unwrap(), 128).unwrap()
    }

    #[test]
    fn norm_of_zero() {
        let c = ctx(4, -2);
        let z = Real::zero(128);
        assert!(rauzy_norm((&z, &z), &c).contains_zero());
        assert_eq!(c.norm_f64((0.0, 0.0)), 0.0);
    }

    #[test]
    fn b_contracts_by_abs_alpha() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (a, b) in [(3, -2), (4, -2), (4, -3), (5, -3)] {
            let c = ctx(a, b);
            let abs_alpha = c.emb().abs_alpha().to_f64();
            let bmat = c.system().matrix_b();
            let be: Vec<Real> = bmat.entries.iter().flatten().map(|e| c.emb().embed_beta(e)).collect();
            let mut checked = 0;
            while checked < 100 {
                let x = (Real::from_f64(rng.gen_range(-3.0..3.0), 128), Real::from_f64(rng.gen_range(-3.0..3.0), 128));
                let nx = rauzy_norm((&x.0, &x.1), &c);
                if nx.to_f64() <= 1e-3 {
                    continue;
                }
                let bx = (&(&be[0] * &x.0) + &(&be[1] * &x.1), &(&be[2] * &x.0) + &(&be[3] * &x.1));
                let nbx = rauzy_norm((&bx.0, &bx.1), &c);
                assert!((nbx.to_f64() / (abs_alpha * nx.to_f64()) - 1.0).abs() < 1e-9);
                checked += 1;
            }
        }
    }

    #[test]
    fn norm_of_delta_t_n_decays_geometrically() {
        // coordinates grow like β^n while the norm shrinks like |α|^n, so
        // the working precision has to cover both
        let c = RauzyNormCtx::from_params(validate_params(4, -2).unwrap(), 256).unwrap();
        let kappa = c.kappa().to_f64();
        let abs_alpha = c.emb().abs_alpha().to_f64();
        let mut v = delta_of(1, c.system());
        for n in 0..40 {
            let got = c.norm_exact(&v).to_f64();
            assert!((got / (kappa * abs_alpha.powi(n)) - 1.0).abs() < 1e-12, "n={n}");
            v = apply_b(&v, c.system());
        }
    }

    #[test]
    fn digit_norm_examples() {
        let c = ctx(4, -2);
        let p = *c.system().params();
        let kappa = c.kappa().to_f64();
        let one = DigitString::new(vec![1], p).unwrap();
        assert!((norm_of_digits(&one, &c).to_f64() - kappa).abs() < 1e-15);
        let t3 = DigitString::new(vec![1, 0, 0, 0], p).unwrap();
        let abs_alpha = c.emb().abs_alpha().to_f64();
        assert!((norm_of_digits(&t3, &c).to_f64() - kappa * abs_alpha.powi(3)).abs() < 1e-15);
        let eleven = DigitString::new(vec![1, 1], p).unwrap();
        let (re, im) = c.emb().alpha().to_f64();
        let expect = kappa * (1.0 + re).hypot(im);
        assert!((norm_of_digits(&eleven, &c).to_f64() - expect).abs() < 1e-14);
        let direct = c.norm_exact(&delta_of(5, c.system()));
        assert!((direct.to_f64() - expect).abs() < 1e-14);
    }

    #[test]
    fn m_diagonalises_b() {
        for (a, b) in [(3, -2), (4, -2), (4, -3), (5, -3)] {
            let c = ctx(a, b);
            for row in similarity_residual(&c) {
                for e in row {
                    assert!(e.re.contains_zero() && e.im.contains_zero());
                    assert!(e.rad_f64() < 1e-30);
                }
            }
        }
    }

    #[test]
    fn singular_value_bounds() {
        let c = ctx(4, -2);
        assert!(c.lambda_lower() > 0.0);
        assert!(c.lambda_lower() <= c.lambda_min());
        // |R x| >= σ_min |x| on a few directions
        for k in 0..16 {
            let t = k as f64 * std::f64::consts::PI / 8.0;
            assert!(c.norm_f64((t.cos(), t.sin())) >= c.lambda_min() * (1.0 - 1e-12));
        }
    }
}
