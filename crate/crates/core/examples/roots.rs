//! Dominant root β, complex conjugate α and the constants derived from
//! them, for every parameter pair with `a ≤ 6`.
//!
//!     cargo run --example roots

use rauzy::cubic::validate_params;
use rauzy::geometry::RauzyNormCtx;

fn main() {
    println!("  a   b  beta            alpha                          |alpha|   kappa     K");
    for a in 3..=6 {
        for b in (1 - a)..=-2 {
            let ctx = match validate_params(a, b).and_then(|p| RauzyNormCtx::from_params(p, 128)) {
                Ok(ctx) => ctx,
                Err(e) => {
                    println!("{a:>3} {b:>3}  skipped: {e}");
                    continue;
                }
            };
            let emb = ctx.emb();
            let (re, im) = emb.alpha().to_f64();
            println!(
                "{a:>3} {b:>3}  {:.12}  {re:+.10} {im:+.10}i  {:.6}  {:.6}  {}",
                emb.beta().to_f64(),
                emb.abs_alpha().to_f64(),
                ctx.kappa().to_f64(),
                emb.params().neighbor_index(),
            );
        }
    }
}
