//! The Rauzy norm N(x) = |c1 x₁ + c2 x₂|: constants, the similarity
//! M B = diag(α, ᾱ) M, and its equivalence with the Euclidean norm.
//!
//!     cargo run --example rauzy_norm -- 4 -2

use rauzy::cubic::validate_params;
use rauzy::geometry::{similarity_residual, RauzyNormCtx};

fn main() -> rauzy::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (4, -2),
    };
    let ctx = RauzyNormCtx::from_params(validate_params(a, b)?, 256)?;
    let (c1r, c1i) = ctx.c1().to_f64();
    println!("c1 = {c1r:+.15} {c1i:+.15}i");
    println!("c2 = {:+.15}", ctx.c2().to_f64());
    println!("kappa = N(δ(1)) = {:.15}", ctx.kappa().to_f64());
    println!("R = {:?}", ctx.rmat());
    println!("sigma_min = {:.15} (certified lower bound {:.15})", ctx.lambda_min(), ctx.lambda_lower());

    let worst = similarity_residual(&ctx)
        .iter()
        .flatten()
        .map(|z| {
            let (re, im) = z.to_f64();
            re.hypot(im)
        })
        .fold(0.0, f64::max);
    println!("max |M B - diag(α, ᾱ) M| = {worst:.3e}");

    for x in [(1.0, 0.0), (0.0, 1.0), (0.3, -0.7)] {
        let n = ctx.norm_f64(x);
        println!("N{x:?} = {n:.6}, |x| = {:.6}", f64::hypot(x.0, x.1));
    }
    Ok(())
}
