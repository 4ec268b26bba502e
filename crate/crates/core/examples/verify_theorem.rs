//! Best simultaneous approximations of `(1/β, 1/β²)` under the Rauzy norm,
//! checked against the sequence `T_n`.
//!
//!     cargo run --release --example verify_theorem -- 4 -2 100000

use std::time::Instant;

use rauzy::approx::{theorem_verify, VerifyOptions};
use rauzy::cubic::validate_params;
use rauzy::geometry::RauzyNormCtx;

fn main() -> rauzy::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b, q_max) = match args[..] {
        [a, b, q] => (a, b, q as u64),
        [a, b] => (a, b, 100_000),
        _ => (4, -2, 100_000),
    };
    let start = Instant::now();
    let ctx = RauzyNormCtx::from_params(validate_params(a, b)?, 128)?;
    let report = theorem_verify(&VerifyOptions::new(q_max), &ctx)?;
    let elapsed = start.elapsed();

    println!("(a, b) = ({a}, {b}), q ≤ {q_max}, {:.1?}", elapsed);
    println!("kappa = {:.10}, |alpha| = {:.10}", report.kappa, report.abs_alpha);
    println!("{:>8}  {:>22}  {:>8} {:>8}  {:<20} T_n", "q", "N0(qv)", "g1", "g2", "qv - g");
    for r in &report.records {
        let t = r.t_index.map(|n| format!("T_{n}")).unwrap_or_default();
        println!("{:>8}  {:>22.16e}  {:>8} {:>8}  {:<20} {t}", r.q, r.value, r.g1, r.g2, r.dichotomy.as_str());
    }
    println!("c estimate {:.6} (margin {:.2e})", report.c_estimate.sampled_min, report.c_estimate.margin);
    println!("every T_n from n = {:?} on is a record", report.n0_t_records);
    println!("records coincide with T_n from n = {:?} on", report.n0_index);
    println!("positivity index {:?}", report.positivity_index);
    for an in &report.anomalies {
        println!("anomaly: {an}");
    }
    Ok(())
}
