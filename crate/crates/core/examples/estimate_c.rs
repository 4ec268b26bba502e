//! Sampled distance from the Rauzy fractal `E` to the integer points other
//! than `(0,0)` and `(1,1)`, and how it moves as the sample doubles.
//!
//!     cargo run --release --example estimate_c -- 4 -2

use rauzy::approx::estimate_c;
use rauzy::cubic::validate_params;
use rauzy::geometry::RauzyNormCtx;

fn main() -> rauzy::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (4, -2),
    };
    let ctx = RauzyNormCtx::from_params(validate_params(a, b)?, 128)?;
    println!("(a, b) = ({a}, {b}), window 6");
    println!("{:>8}  {:>12}  {:>10}  {:>12}  nearest", "count", "sampled min", "margin", "lower bound");
    let mut prev: Option<f64> = None;
    for count in [10_000, 20_000, 40_000, 80_000] {
        let c = estimate_c(count, 6, &ctx)?;
        let change = prev.map(|p| format!("  ({:+.2}%)", 100.0 * (c.sampled_min / p - 1.0))).unwrap_or_default();
        let lower = c.lower_bound.map(|l| format!("{l:.6}")).unwrap_or_else(|| "-".into());
        println!(
            "{count:>8}  {:>12.6}  {:>10.2e}  {lower:>12}  N={} g={:?}{change}",
            c.sampled_min, c.margin, c.argmin_n, c.argmin_g
        );
        prev = Some(c.sampled_min);
    }
    Ok(())
}
