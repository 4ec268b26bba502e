use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cloud::{cmul, FractalCloud};
use crate::cubic::CubicParams;
use crate::numeration::LowFirstState;
use crate::output::sig17;

/// Distance from the lattice point `p + qα` to a sample of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeDistance {
    pub p: i64,
    pub q: i64,
    #[serde(serialize_with = "sig17")]
    pub distance: f64,
}

fn window_points(window: i64) -> impl Iterator<Item = (i64, i64)> {
    (-window..=window).flat_map(move |p| (-window..=window).map(move |q| (p, q)))
}

fn lattice_point(p: i64, q: i64, alpha: (f64, f64)) -> (f64, f64) {
    (p as f64 + q as f64 * alpha.0, q as f64 * alpha.1)
}

/// Window lattice points within `eps` of a materialized R cloud, by brute
/// force over every cloud point. Sorted by `(p, q)`.
pub fn lattice_scan(cloud: &FractalCloud, window: i64, eps: f64) -> Vec<LatticeDistance> {
    assert!(!cloud.is_empty(), "lattice_scan needs a nonempty cloud");
    let pts: Vec<(i64, i64)> = window_points(window).collect();
    pts.into_par_iter()
        .map(|(p, q)| {
            let z = lattice_point(p, q, cloud.alpha);
            let distance = cloud.points.iter().map(|w| (w.0 - z.0).hypot(w.1 - z.1)).fold(f64::INFINITY, f64::min);
            LatticeDistance { p, q, distance }
        })
        .filter(|h| h.distance < eps)
        .collect()
}

/// Exact nearest-point search in the depth-`depth` R cloud without
/// materializing it: digits are chosen least significant first and a
/// subtree is dropped once even its largest possible tail cannot get
/// closer than the incumbent.
#[derive(Clone, Debug)]
pub struct RSearch {
    params: CubicParams,
    alpha: (f64, f64),
    depth: usize,
    // alpha_pow[i] = α^i for i ≤ depth
    alpha_pow: Vec<(f64, f64)>,
    // tail[k] = (a-1) Σ_{i=k}^{depth} |α|^i
    tail: Vec<f64>,
}

impl RSearch {
    pub fn new(depth: usize, params: &CubicParams, alpha: (f64, f64)) -> Self {
        assert!(depth >= 2, "R search needs depth >= 2");
        let mut alpha_pow = vec![(1.0, 0.0)];
        for i in 1..=depth {
            alpha_pow.push(cmul(alpha_pow[i - 1], alpha));
        }
        let abs = alpha.0.hypot(alpha.1);
        let top = (params.a() - 1) as f64;
        let mut tail = vec![0.0; depth + 2];
        for k in (0..=depth).rev() {
            tail[k] = tail[k + 1] + top * abs.powi(k as i32);
        }
        RSearch { params: *params, alpha, depth, alpha_pow, tail }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn alpha(&self) -> (f64, f64) {
        self.alpha
    }

    /// Upper bound on the distance from any point of `R` to the truncated
    /// cloud: `(a-1) Σ_{i>depth} |α|^i`.
    pub fn truncation_bound(&self) -> f64 {
        let abs = self.alpha.0.hypot(self.alpha.1);
        (self.params.a() - 1) as f64 * abs.powi(self.depth as i32 + 1) / (1.0 - abs)
    }

    pub fn distance(&self, z: (f64, f64)) -> f64 {
        self.nearest(z).0
    }

    /// Distance to the nearest cloud point and its digits `d_2, d_3, …`
    /// (least significant first, trailing zeros dropped).
    pub fn nearest(&self, z: (f64, f64)) -> (f64, Vec<u32>) {
        let mut best = (z.0.hypot(z.1), Vec::new());
        let mut word = Vec::with_capacity(self.depth);
        self.descend(z, 2, LowFirstState::START, (0.0, 0.0), &mut word, &mut best);
        best
    }

    fn descend(
        &self,
        z: (f64, f64),
        i: usize,
        state: LowFirstState,
        sum: (f64, f64),
        word: &mut Vec<u32>,
        best: &mut (f64, Vec<u32>),
    ) {
        if i > self.depth {
            return;
        }
        for d in 0..self.params.a() as u32 {
            let Some(next) = state.step(d, &self.params) else { continue };
            let s = if d == 0 {
                sum
            } else {
                let t = self.alpha_pow[i];
                (sum.0 + d as f64 * t.0, sum.1 + d as f64 * t.1)
            };
            let here = (z.0 - s.0).hypot(z.1 - s.1);
            word.push(d);
            // zero digits above i are always admissible, so s is a cloud point
            if here < best.0 {
                *best = (here, word.clone());
            }
            if here - self.tail[i + 1] < best.0 {
                self.descend(z, i + 1, next, s, word, best);
            }
            word.pop();
        }
    }

    pub fn lattice_distances(&self, window: i64) -> Vec<LatticeDistance> {
        let pts: Vec<(i64, i64)> = window_points(window).collect();
        pts.into_par_iter()
            .map(|(p, q)| LatticeDistance { p, q, distance: self.distance(lattice_point(p, q, self.alpha)) })
            .collect()
    }
}

/// Outcome of a window scan against the two lattice points expected in `R`:
/// `0` and `-1-(b+1)α`.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub a: i64,
    pub b: i64,
    pub depth: usize,
    pub window: i64,
    pub expected: [(i64, i64); 2],
    /// Largest cloud distance among the expected points.
    #[serde(serialize_with = "sig17")]
    pub hit_distance: f64,
    /// The two closest lattice points outside the expected set.
    pub nearest_others: Vec<LatticeDistance>,
    /// `(a-1) Σ_{i>depth} |α|^i`.
    #[serde(serialize_with = "sig17")]
    pub truncation_bound: f64,
    /// `(nearest other distance - truncation bound) / hit distance`.
    #[serde(serialize_with = "sig17")]
    pub separation: f64,
    #[serde(serialize_with = "sig17")]
    pub eps: f64,
    pub hits: Vec<LatticeDistance>,
    pub conclusive: bool,
}

pub const REQUIRED_SEPARATION: f64 = 10.0;

pub fn expected_hits(params: &CubicParams) -> [(i64, i64); 2] {
    [(0, 0), (-1, -(params.b() + 1))]
}

/// Calibrates `eps` as the geometric mean of the hit distance and the
/// nearest non-hit distance, and declares the scan conclusive when the two
/// are separated by at least [`REQUIRED_SEPARATION`] after allowing for
/// truncation.
pub fn scan_report(search: &RSearch, window: i64) -> ScanReport {
    let expected = expected_hits(&search.params);
    let all = search.lattice_distances(window);
    let is_expected = |h: &LatticeDistance| expected.contains(&(h.p, h.q));
    let hit_distance = all.iter().filter(|h| is_expected(h)).map(|h| h.distance).fold(0.0, f64::max);
    let mut others: Vec<LatticeDistance> = all.iter().filter(|h| !is_expected(h)).copied().collect();
    others.sort_by(|x, y| x.distance.total_cmp(&y.distance).then((x.p, x.q).cmp(&(y.p, y.q))));
    others.truncate(2);
    let truncation_bound = search.truncation_bound();
    let nearest = others.first().map_or(f64::INFINITY, |h| h.distance);
    let floor = hit_distance.max(truncation_bound);
    let separation = (nearest - truncation_bound) / hit_distance.max(f64::MIN_POSITIVE);
    let eps = (floor * nearest).sqrt();
    let hits: Vec<LatticeDistance> = all.iter().filter(|h| h.distance < eps).copied().collect();
    let found: Vec<(i64, i64)> = hits.iter().map(|h| (h.p, h.q)).collect();
    let conclusive =
        separation >= REQUIRED_SEPARATION && found.len() == 2 && expected.iter().all(|e| found.contains(e));
    ScanReport {
        a: search.params.a(),
        b: search.params.b(),
        depth: search.depth,
        window,
        expected,
        hit_distance,
        nearest_others: others,
        truncation_bound,
        separation,
        eps,
        hits,
        conclusive,
    }
}

/// Deepens the search from `min_depth` until the scan is conclusive or
/// `max_depth` is reached; returns the last report.
pub fn calibrated_scan(
    params: &CubicParams,
    alpha: (f64, f64),
    window: i64,
    min_depth: usize,
    max_depth: usize,
) -> ScanReport {
    let mut depth = min_depth;
    loop {
        let report = scan_report(&RSearch::new(depth, params, alpha), window);
        if report.conclusive || depth >= max_depth {
            return report;
        }
        depth += 2;
    }
}

/// Random points of the disk `|z| < radius`, each checked against
/// `R ∪ (R + 1 + (b+1)α)` up to the truncation bound.
#[derive(Clone, Debug, Serialize)]
pub struct InteriorProbe {
    #[serde(serialize_with = "sig17")]
    pub radius: f64,
    pub seed: u64,
    pub samples: usize,
    pub covered: usize,
    /// Largest distance from a sample to the nearer of the two copies.
    #[serde(serialize_with = "sig17")]
    pub worst_distance: f64,
}

impl InteriorProbe {
    pub fn all_covered(&self) -> bool {
        self.covered == self.samples
    }
}

pub fn zero_interior_probe(search: &RSearch, radius: f64, samples: usize, seed: u64) -> InteriorProbe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..samples)
        .map(|_| {
            let t = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = radius * rng.gen_range(0.0f64..1.0).sqrt();
            (r * t.cos(), r * t.sin())
        })
        .collect();
    let shift = lattice_point(1, search.params.b() + 1, search.alpha);
    let tol = search.truncation_bound();
    let dists: Vec<f64> =
        pts.into_par_iter().map(|z| search.distance(z).min(search.distance((z.0 - shift.0, z.1 - shift.1)))).collect();
    InteriorProbe {
        radius,
        seed,
        samples,
        covered: dists.iter().filter(|&&d| d <= tol).count(),
        worst_distance: dists.iter().copied().fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{isolate_roots, validate_params};
    use crate::geometry::cloud_r;

    #[test]
    fn branch_and_bound_matches_brute_force() {
        for (a, b) in [(3, -2), (4, -2), (4, -3), (5, -3)] {
            let e = isolate_roots(validate_params(a, b).unwrap(), 128).unwrap();
            let cloud = cloud_r(8, &e);
            let search = RSearch::new(8, e.params(), cloud.alpha);
            let fast = search.lattice_distances(3);
            let slow = lattice_scan(&cloud, 3, f64::INFINITY);
            assert_eq!(fast.len(), slow.len());
            for (x, y) in fast.iter().zip(&slow) {
                assert_eq!((x.p, x.q), (y.p, y.q));
                assert!((x.distance - y.distance).abs() < 1e-12, "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn origin_is_always_a_hit() {
        let e = isolate_roots(validate_params(4, -3).unwrap(), 128).unwrap();
        let cloud = cloud_r(4, &e);
        let hits = lattice_scan(&cloud, 2, 1e-300);
        assert_eq!(hits, vec![LatticeDistance { p: 0, q: 0, distance: 0.0 }]);
    }

    #[test]
    fn truncation_bound_covers_deeper_points() {
        let e = isolate_roots(validate_params(4, -2).unwrap(), 128).unwrap();
        let alpha = e.alpha().to_f64();
        let shallow = RSearch::new(6, e.params(), alpha);
        for z in cloud_r(10, &e).points.iter().step_by(37) {
            assert!(shallow.distance(*z) <= shallow.truncation_bound() + 1e-12);
        }
    }
}
