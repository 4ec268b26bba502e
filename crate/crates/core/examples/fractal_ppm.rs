//! Renders the Rauzy fractal twice: as the closure of δ(N) (kind E) and
//! as the digit-series set in the α-plane (kind R), to `E.ppm` and
//! `R.ppm` in the current directory.
//!
//!     cargo run --release --example fractal_ppm -- 4 -2

use std::fs;

use rauzy::cubic::{isolate_roots, validate_params};
use rauzy::geometry::{cloud_e, cloud_r, ppm::render_ppm, CubicSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (4, -2),
    };
    let params = validate_params(a, b)?;
    let emb = isolate_roots(params, 128)?;

    let e = cloud_e(200_000, &CubicSystem::new(params), &emb);
    fs::write("E.ppm", render_ppm(&e.points))?;
    let r = cloud_r(12, &emb);
    fs::write("R.ppm", render_ppm(&r.points))?;
    println!("E.ppm: {} points, R.ppm: {} points", e.len(), r.len());
    Ok(())
}
