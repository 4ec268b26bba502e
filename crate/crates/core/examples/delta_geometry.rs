//! δ(N) = N v − (P_N, Q_N) computed exactly in Z[β]², the matrix B with
//! δ(shifted N) = B δ(N), and the Rauzy norm of a few δ(N).
//!
//!     cargo run --example delta_geometry -- 4 -2

use rauzy::cubic::validate_params;
use rauzy::geometry::{apply_b, delta_of, shifted_sums, RauzyNormCtx};
use rauzy::numeration::encode_u64;

fn main() -> rauzy::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (4, -2),
    };
    let ctx = RauzyNormCtx::from_params(validate_params(a, b)?, 128)?;
    let sys = ctx.system();
    let emb = ctx.emb();

    println!("   N  digits        (P_N, Q_N)     delta(N)                      N(delta)");
    for n in [1u64, 2, 3, 5, 10, 48, 172, 1000] {
        let d = encode_u64(n, sys.seq());
        let (p, q) = shifted_sums(&d, sys.seq());
        let delta = delta_of(n, sys);
        let (x, y) = delta.to_f64(emb);
        println!(
            "{n:>4}  {:<12}  ({p:>4}, {q:>3})  ({x:+.6e}, {y:+.6e})  {:.6e}",
            d.to_string(),
            ctx.norm_exact(&delta).to_f64()
        );
    }

    // B maps δ(N) to δ of the left-shifted representation
    let d = delta_of(10, sys);
    let bd = apply_b(&d, sys);
    let shifted = rauzy::numeration::decode(&[encode_u64(10, sys.seq()).digits(), &[0]].concat(), sys.seq())?;
    println!("B δ(10) = δ({shifted}): {}", bd.same_point(&rauzy::geometry::delta_of_big(&shifted, sys)));

    let r = ctx.norm_exact(&bd).to_f64() / ctx.norm_exact(&d).to_f64();
    println!("N(Bx)/N(x) = {r:.15}, |α| = {:.15}", emb.abs_alpha().to_f64());
    Ok(())
}
