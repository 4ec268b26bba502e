//! Closest lattice points to qv in the Rauzy norm and the record minima
//! up to a bound, written as CSV to stdout.
//!
//!     cargo run --release --example best_approximations -- 4 -2 10000

use rauzy::approx::{best_approx_scan, closest_lattice, write_records_csv};
use rauzy::cubic::validate_params;
use rauzy::geometry::RauzyNormCtx;

fn main() -> rauzy::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b, q_max) = match args[..] {
        [a, b, q] => (a, b, q as u64),
        [a, b] => (a, b, 10_000),
        _ => (4, -2, 10_000),
    };
    let ctx = RauzyNormCtx::from_params(validate_params(a, b)?, 128)?;

    for q in 1..=6 {
        let m = closest_lattice(q, &ctx)?;
        eprintln!("q = {q}: g = {:?}, N(qv - g) = {:.6e}", m.g, m.value_f64());
    }
    let records = best_approx_scan(q_max, &ctx)?;
    write_records_csv(&records, &mut std::io::stdout().lock()).expect("stdout");
    Ok(())
}
