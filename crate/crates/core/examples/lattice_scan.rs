//! Distance from every lattice point `p + qα` with `|p|, |q| ≤ 4` to the
//! depth-14 Rauzy fractal, and the calibrated hit set.
//!
//!     cargo run --release --example lattice_scan -- 4 -2

use rauzy::cubic::{isolate_roots, validate_params};
use rauzy::geometry::{scan_report, RSearch};

fn main() -> rauzy::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer argument")).collect();
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (4, -2),
    };
    let emb = isolate_roots(validate_params(a, b)?, 128)?;
    let search = RSearch::new(14, emb.params(), emb.alpha().to_f64());
    let report = scan_report(&search, 4);

    println!("(a, b) = ({a}, {b}), depth {}, window {}", report.depth, report.window);
    println!("expected hits {:?}", report.expected);
    println!("largest hit distance     {:.3e}", report.hit_distance);
    for o in &report.nearest_others {
        println!("nearest other ({:>2}, {:>2})  {:.3e}", o.p, o.q, o.distance);
    }
    println!("truncation bound         {:.3e}", report.truncation_bound);
    println!("separation               {:.1}", report.separation);
    println!("calibrated eps           {:.3e}", report.eps);
    println!("hits {:?}", report.hits.iter().map(|h| (h.p, h.q)).collect::<Vec<_>>());
    println!("conclusive: {}", report.conclusive);
    Ok(())
}
