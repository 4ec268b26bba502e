use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use super::delta::{delta_of, CubicSystem};
use crate::cubic::{CubicParams, Embeddings};
use crate::numeration::MatchState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CloudKind {
    E,
    R,
}

impl std::fmt::Display for CloudKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CloudKind::E => "E",
            CloudKind::R => "R",
        })
    }
}

/// A finite sample of the Rauzy fractal, either as `δ(N)` in `R²` (kind E)
/// or as digit sums `Σ d_i α^i` in the complex plane (kind R, stored as
/// `(Re, Im)`).
#[derive(Clone, Debug)]
pub struct FractalCloud {
    pub kind: CloudKind,
    /// `count` for E, `depth` for R.
    pub bound: usize,
    pub params: CubicParams,
    pub alpha: (f64, f64),
    pub points: Vec<(f64, f64)>,
}

impl FractalCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for (i, &p) in self.points.iter().enumerate() {
            write_csv_row(w, self.kind, i, p)?;
        }
        Ok(())
    }
}

pub const CSV_HEADER: &str = "kind,index,x,y";

pub fn write_csv_row<W: Write>(w: &mut W, kind: CloudKind, index: usize, p: (f64, f64)) -> io::Result<()> {
    // + 0.0 folds -0.0 into 0.0
    writeln!(w, "{kind},{index},{:.16e},{:.16e}", p.0 + 0.0, p.1 + 0.0)
}

/// `δ(0), …, δ(count-1)`, each computed exactly and embedded once.
pub fn cloud_e(count: usize, sys: &CubicSystem, emb: &Embeddings) -> FractalCloud {
    assert!(count >= 1, "cloud_E needs count >= 1");
    let points = (0..count as u64).into_par_iter().map(|n| delta_of(n, sys).to_f64(emb)).collect();
    FractalCloud { kind: CloudKind::E, bound: count, params: *sys.params(), alpha: emb.alpha().to_f64(), points }
}

/// Digit sums `Σ_{i=2}^{depth} d_i α^i` over admissible words, streamed in
/// depth-first order (most significant digit `d_depth` chosen first). The
/// visitor sees the word `d_depth … d_2` and the point.
pub fn for_each_r_point<F>(depth: usize, params: &CubicParams, alpha: (f64, f64), mut visit: F)
where
    F: FnMut(&[u32], (f64, f64)),
{
    assert!(depth >= 2, "cloud_R needs depth >= 2");
    let len = depth - 1;
    let a2 = cmul(alpha, alpha);
    let mut word = Vec::with_capacity(len);
    walk_high_first(len, params, alpha, a2, MatchState::Free, (0.0, 0.0), &mut word, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn walk_high_first<F>(
    len: usize,
    params: &CubicParams,
    alpha: (f64, f64),
    a2: (f64, f64),
    state: MatchState,
    acc: (f64, f64),
    word: &mut Vec<u32>,
    visit: &mut F,
) where
    F: FnMut(&[u32], (f64, f64)),
{
    if word.len() == len {
        visit(word, cmul(acc, a2));
        return;
    }
    for d in 0..params.a() as u32 {
        if let Some(next) = state.step(d, params) {
            let h = cmul(acc, alpha);
            word.push(d);
            walk_high_first(len, params, alpha, a2, next, (h.0 + d as f64, h.1), word, visit);
            word.pop();
        }
    }
}

pub fn cloud_r(depth: usize, emb: &Embeddings) -> FractalCloud {
    let params = *emb.params();
    let alpha = emb.alpha().to_f64();
    let mut points = Vec::new();
    for_each_r_point(depth, &params, alpha, |_, z| points.push(z));
    FractalCloud { kind: CloudKind::R, bound: depth, params, alpha, points }
}

pub(crate) fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}
