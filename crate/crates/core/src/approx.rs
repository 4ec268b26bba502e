//! Certified minimization of `N(qv - g)` over `g ∈ Z²` for
//! `v = (1/β, 1/β²)`, the record scan for best approximations, and the
//! checks run by `verify`.

use std::borrow::Cow;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::Real;
use crate::cubic::{CubicParams, FieldElement};
use crate::error::{Error, Result};
use crate::geometry::{delta_of, shifted_sums, CubicSystem, RauzyNormCtx};
use crate::numeration::{encode_u64, DigitString};
use crate::output::{fmt17, sig17, sig17_opt};

/// A certified minimizer of `N(qv - g)`.
#[derive(Clone, Debug)]
pub struct LatticeMin {
    pub q: u64,
    pub g: (i64, i64),
    /// `N(qv - g)²`, enclosed.
    pub value_sq: Real,
    pub certified: bool,
}

impl LatticeMin {
    pub fn value(&self) -> Real {
        self.value_sq.sqrt_nonneg().expect("a squared norm is nonnegative")
    }

    pub fn value_f64(&self) -> f64 {
        self.value_sq.to_f64().max(0.0).sqrt()
    }
}

/// Double-precision copy of the norm's linear form `L(x) = c1 x₁ + c2 x₂`,
/// used to shortlist candidates before the exact comparison.
struct FastForm {
    c1: (f64, f64),
    c2: f64,
    lv: (f64, f64),
    v: (f64, f64),
}

impl FastForm {
    fn new(ctx: &RauzyNormCtx) -> Self {
        let sys = ctx.system();
        let v = sys.v();
        let delta1 = crate::geometry::DeltaVector { x1: v.0.clone(), x2: v.1.clone(), source: Some(1) };
        FastForm {
            c1: ctx.c1().to_f64(),
            c2: ctx.c2().to_f64(),
            lv: ctx.linear_form(&delta1).to_f64(),
            v: (ctx.emb().embed_beta(&v.0).to_f64(), ctx.emb().embed_beta(&v.1).to_f64()),
        }
    }

    /// `|q L(v) - g₁ c1 - g₂ c2|` and a bound on its rounding error.
    fn value(&self, q: f64, g: (i64, i64)) -> (f64, f64) {
        let (g1, g2) = (g.0 as f64, g.1 as f64);
        let re = q * self.lv.0 - g1 * self.c1.0 - g2 * self.c2;
        let im = q * self.lv.1 - g1 * self.c1.1;
        let scale = q * self.lv.0.hypot(self.lv.1) + g1.abs() * self.c1.0.hypot(self.c1.1) + g2.abs() * self.c2.abs();
        (re.hypot(im), 32.0 * f64::EPSILON * scale + f64::MIN_POSITIVE)
    }
}

fn norm_sq_at(ctx: &RauzyNormCtx, q: u64, g: (i64, i64)) -> Real {
    ctx.norm_sq_exact(&ctx.system().residual(&BigInt::from(q), (&BigInt::from(g.0), &BigInt::from(g.1))))
}

/// The `g` minimizing `N(qv - g)`.
///
/// Any `g` beating the rounded point `g₀ = round(qv)` lies within
/// `N(qv - g₀)/σ_min` of `qv`, where `σ_min` is the smallest singular value
/// of the norm's matrix; every integer point of that disk is scored in
/// double precision, and the near-minimal ones are then compared exactly,
/// raising the precision while the comparison is ambiguous. Exact ties keep
/// the lexicographically smallest `g`.
pub fn closest_lattice(q: u64, ctx: &RauzyNormCtx) -> Result<LatticeMin> {
    if q == 0 {
        return Err(Error::InvalidArgument("closest_lattice needs q >= 1".into()));
    }
    let fast = FastForm::new(ctx);
    closest_with(q, ctx, &fast)
}

fn closest_with(q: u64, ctx: &RauzyNormCtx, fast: &FastForm) -> Result<LatticeMin> {
    let qf = q as f64;
    let w = (qf * fast.v.0, qf * fast.v.1);
    let g0 = (w.0.round() as i64, w.1.round() as i64);
    let (v0, e0) = fast.value(qf, g0);
    // slack covers the rounding of w itself
    let r = (v0 + e0) / ctx.lambda_lower() + 1e-9 * (1.0 + w.0.abs() + w.1.abs());

    let mut scored = Vec::new();
    for g1 in (w.0 - r).ceil() as i64..=(w.0 + r).floor() as i64 {
        let h = (r * r - (g1 as f64 - w.0).powi(2)).max(0.0).sqrt();
        for g2 in (w.1 - h).ceil() as i64..=(w.1 + h).floor() as i64 {
            let (val, err) = fast.value(qf, (g1, g2));
            scored.push(((g1, g2), val, err));
        }
    }
    if scored.is_empty() {
        scored.push((g0, v0, e0));
    }
    let ceiling = scored.iter().map(|s| s.1 + s.2).fold(f64::INFINITY, f64::min);
    let mut shortlist: Vec<(i64, i64)> = scored.iter().filter(|s| s.1 - s.2 <= ceiling).map(|s| s.0).collect();
    shortlist.sort();

    let mut cur = Cow::Borrowed(ctx);
    loop {
        let sq: Vec<Real> = shortlist.iter().map(|&g| norm_sq_at(&cur, q, g)).collect();
        let best = (0..sq.len()).min_by(|&i, &j| sq[i].mid().cmp(sq[j].mid()).then(i.cmp(&j))).unwrap();
        let separated = (0..sq.len()).all(|j| j == best || sq[best].certified_lt(&sq[j]) == Some(true));
        if separated {
            return Ok(LatticeMin { q, g: shortlist[best], value_sq: sq[best].clone(), certified: true });
        }
        cur = Cow::Owned(cur.refined()?);
    }
}

/// `Some(true)` if `N(x)` is certainly below `N(y)`, raising the precision
/// until the two are separated.
fn certified_less(x: &LatticeMin, y: &LatticeMin, ctx: &RauzyNormCtx) -> Result<bool> {
    if x.value_sq.prec() == y.value_sq.prec() {
        if let Some(lt) = x.value_sq.certified_lt(&y.value_sq) {
            return Ok(lt);
        }
    }
    let mut cur = ctx.clone();
    loop {
        cur = cur.refined()?;
        if let Some(lt) = norm_sq_at(&cur, x.q, x.g).certified_lt(&norm_sq_at(&cur, y.q, y.g)) {
            return Ok(lt);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dichotomy {
    /// `qv - g = δ(q)`.
    Delta,
    /// `qv - g = δ(q) - (1, 1)`.
    DeltaMinusOneOne,
    Other,
}

impl Dichotomy {
    pub fn as_str(self) -> &'static str {
        match self {
            Dichotomy::Delta => "delta",
            Dichotomy::DeltaMinusOneOne => "delta-minus-one-one",
            Dichotomy::Other => "other",
        }
    }
}

/// Exact comparison of `g` against `(P_q, Q_q)` and `(P_q + 1, Q_q + 1)`.
/// The second value reports the offset `δ(q) - qv + g = (1, 0)`.
pub fn classify_dichotomy(q: u64, g: (i64, i64), sys: &CubicSystem) -> (Dichotomy, bool) {
    let (p, qq) = shifted_sums(&encode_u64(q, sys.seq()), sys.seq());
    let (g1, g2) = (BigInt::from(g.0), BigInt::from(g.1));
    let kind = if g1 == p && g2 == qq {
        Dichotomy::Delta
    } else if g1 == &p + 1 && g2 == &qq + 1 {
        Dichotomy::DeltaMinusOneOne
    } else {
        Dichotomy::Other
    };
    (kind, g1 == p + 1 && g2 == qq)
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxRecord {
    pub q: u64,
    #[serde(serialize_with = "sig17")]
    pub value: f64,
    pub g1: i64,
    pub g2: i64,
    pub dichotomy: Dichotomy,
    pub offset_one_zero: bool,
    pub certified: bool,
    /// `n` when `q = T_n`.
    pub t_index: Option<usize>,
}

/// Every `q ≤ q_max` whose `N₀(qv)` is strictly below `N₀(q'v)` for all
/// `q' < q`. The minima are computed in parallel; the running minimum is
/// taken sequentially in `q` order.
pub fn best_approx_scan(q_max: u64, ctx: &RauzyNormCtx) -> Result<Vec<ApproxRecord>> {
    Ok(record_minima(q_max, ctx)?.into_iter().map(|m| make_record(&m, ctx)).collect())
}

fn record_minima(q_max: u64, ctx: &RauzyNormCtx) -> Result<Vec<LatticeMin>> {
    if q_max == 0 {
        return Err(Error::InvalidArgument("q_max must be >= 1".into()));
    }
    let fast = FastForm::new(ctx);
    let minima: Vec<LatticeMin> =
        (1..=q_max).into_par_iter().map(|q| closest_with(q, ctx, &fast)).collect::<Result<_>>()?;
    let mut records: Vec<LatticeMin> = Vec::new();
    for m in minima {
        let better = match records.last() {
            None => true,
            Some(best) => m.value_f64() < 0.5 * best.value_f64() || certified_less(&m, best, ctx)?,
        };
        if better {
            records.push(m);
        }
    }
    Ok(records)
}

fn make_record(m: &LatticeMin, ctx: &RauzyNormCtx) -> ApproxRecord {
    let sys = ctx.system();
    let (dichotomy, offset_one_zero) = classify_dichotomy(m.q, m.g, sys);
    ApproxRecord {
        q: m.q,
        value: m.value_f64(),
        g1: m.g.0,
        g2: m.g.1,
        dichotomy,
        offset_one_zero,
        certified: m.certified,
        t_index: t_index_of(m.q, sys),
    }
}

fn t_index_of(q: u64, sys: &CubicSystem) -> Option<usize> {
    let q = BigInt::from(q);
    let terms = sys.seq().terms_up_to(&q);
    (terms.last() == Some(&q)).then(|| terms.len() - 1)
}

pub const RECORDS_CSV_HEADER: &str = "q,value,g1,g2,dichotomy,is_T_n,n";

pub fn write_records_csv<W: Write>(records: &[ApproxRecord], w: &mut W) -> io::Result<()> {
    writeln!(w, "{RECORDS_CSV_HEADER}")?;
    for r in records {
        let n = r.t_index.map(|n| n.to_string()).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.q,
            fmt17(r.value),
            r.g1,
            r.g2,
            r.dichotomy.as_str(),
            r.t_index.is_some(),
            n
        )?;
    }
    Ok(())
}

/// Sampled distance from `E` to `Z² ∖ {(0,0), (1,1)}` under `N`.
#[derive(Clone, Debug, Serialize)]
pub struct CEstimate {
    pub cloud_count: usize,
    pub window: i64,
    /// `min N(δ(N) - g)` over the sample; an upper bound for the distance.
    #[serde(serialize_with = "sig17")]
    pub sampled_min: f64,
    pub argmin_n: u64,
    pub argmin_g: (i64, i64),
    /// Every point of `E` lies within this distance of the sample.
    #[serde(serialize_with = "sig17")]
    pub margin: f64,
    /// `sampled_min - margin` when positive.
    #[serde(serialize_with = "sig17_opt")]
    pub lower_bound: Option<f64>,
}

impl CEstimate {
    pub fn value(&self) -> f64 {
        self.sampled_min
    }
}

/// Estimates the constant `c` below which `N(qv - g)` forces `qv - g` to be
/// `δ(q)` or `δ(q) - (1,1)`. This is numerical evidence, not a proof: the
/// sample gives an upper bound, and `margin` bounds how far the true
/// distance can sit below it.
pub fn estimate_c(cloud_count: usize, window: i64, ctx: &RauzyNormCtx) -> Result<CEstimate> {
    if cloud_count < 1000 {
        return Err(Error::InvalidArgument("estimate_c needs cloud_count >= 1000".into()));
    }
    if window < 1 {
        return Err(Error::InvalidArgument("estimate_c needs window >= 1".into()));
    }
    let sys = ctx.system();
    let emb = ctx.emb();
    let (value, n, g) = (0..cloud_count as u64)
        .into_par_iter()
        .map(|n| {
            let p = delta_of(n, sys).to_f64(emb);
            let mut best = (f64::INFINITY, n, (0, 0));
            for g1 in -window..=window {
                for g2 in -window..=window {
                    if (g1, g2) == (0, 0) || (g1, g2) == (1, 1) {
                        continue;
                    }
                    let v = ctx.norm_f64((p.0 - g1 as f64, p.1 - g2 as f64));
                    if v < best.0 {
                        best = (v, n, (g1, g2));
                    }
                }
            }
            best
        })
        .reduce(|| (f64::INFINITY, 0, (0, 0)), |x, y| if (y.0, y.1) < (x.0, x.1) { y } else { x });

    // numbers below T_k share their low k digits with some sampled N
    let limit = BigInt::from(cloud_count);
    let k = sys.seq().terms_up_to(&limit).len().saturating_sub(1);
    let abs_alpha = emb.abs_alpha().to_f64();
    let top = (sys.params().a() - 1) as f64;
    let margin = ctx.kappa().to_f64() * top * abs_alpha.powi(k as i32) / (1.0 - abs_alpha);
    let lower = value - margin;
    Ok(CEstimate {
        cloud_count,
        window,
        sampled_min: value,
        argmin_n: n,
        argmin_g: g,
        margin,
        lower_bound: (lower > 0.0).then_some(lower),
    })
}

/// `N₀(T_n v)` against `κ|α|^n`.
#[derive(Clone, Debug, Serialize)]
pub struct DecayCheck {
    pub n: usize,
    pub q: u64,
    #[serde(serialize_with = "sig17")]
    pub ratio: f64,
    pub ok: bool,
}

/// For a record with `qv - g = δ(q) - (1,1)` and `n` digits: whether
/// `N(qv - g) ≥ κ|α|^n`, and whether `1 + (b+1)β + Σ_{i≥2} d_i β^i > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Case2Evidence {
    pub q: u64,
    pub n: usize,
    #[serde(serialize_with = "sig17")]
    pub value: f64,
    #[serde(serialize_with = "sig17")]
    pub bound: f64,
    pub holds: bool,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub q_max: u64,
    pub c_cloud_count: usize,
    pub c_window: i64,
    /// Fewest `T_n` the coinciding tail must contain.
    pub min_tail: usize,
    pub decay_tolerance: f64,
}

impl VerifyOptions {
    pub fn new(q_max: u64) -> Self {
        VerifyOptions { q_max, c_cloud_count: 10_000, c_window: 6, min_tail: 3, decay_tolerance: 1e-9 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub a: i64,
    pub b: i64,
    pub precision_bits: u32,
    pub q_max: u64,
    pub neighbor_index: i64,
    #[serde(serialize_with = "sig17")]
    pub kappa: f64,
    #[serde(serialize_with = "sig17")]
    pub abs_alpha: f64,
    pub t_terms: Vec<u64>,
    pub records: Vec<ApproxRecord>,
    /// Least `n` such that the records `≥ T_n` are exactly
    /// `{T_k : n ≤ k, T_k ≤ q_max}`, with at least `min_tail` terms.
    pub n0_index: Option<usize>,
    pub min_tail: usize,
    /// Least `n` such that every `T_k ≤ q_max` with `k ≥ n` is a record.
    pub n0_t_records: Option<usize>,
    /// Records that are not terms of `T`, in increasing order.
    pub non_t_records: Vec<u64>,
    pub decay: Vec<DecayCheck>,
    pub c_estimate: CEstimate,
    pub case2: Vec<Case2Evidence>,
    /// Least `n` such that every case-2 record with at least `n` digits
    /// has `1 + (b+1)β + Σ_{i≥2} d_i β^i > 0`.
    pub positivity_index: Option<usize>,
    pub anomalies: Vec<String>,
}

impl TheoremReport {
    pub fn check(&self) -> Result<()> {
        if self.anomalies.is_empty() {
            Ok(())
        } else {
            Err(Error::VerificationFailed(self.anomalies.clone()))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// `1 + (b+1)β + Σ_{i≥2} d_i β^i`, exact.
fn case2_sum(digits: &DigitString, params: &CubicParams) -> FieldElement {
    let mut x = FieldElement::new(1, params.b() + 1, 0);
    let mut beta_pow = FieldElement::one();
    for (i, d) in digits.indexed() {
        if i >= 2 {
            x = &x + &beta_pow.scale_i64(d as i64);
        }
        beta_pow = beta_pow.mul_beta(params);
    }
    x
}

pub fn theorem_verify(opts: &VerifyOptions, ctx: &RauzyNormCtx) -> Result<TheoremReport> {
    let sys = ctx.system();
    let params = *sys.params();
    let t2 = sys.seq().get(2)?.to_u64().unwrap_or(u64::MAX);
    if opts.q_max < t2 {
        return Err(Error::InvalidArgument(format!("q_max must be at least T_2 = {t2}")));
    }
    let minima = record_minima(opts.q_max, ctx)?;
    let records: Vec<ApproxRecord> = minima.iter().map(|m| make_record(m, ctx)).collect();
    let t_terms: Vec<u64> =
        sys.seq().terms_up_to(&BigInt::from(opts.q_max)).iter().map(|t| t.to_u64().unwrap()).collect();
    let record_qs: Vec<u64> = records.iter().map(|r| r.q).collect();
    let mut anomalies = Vec::new();

    let last = t_terms.len() - 1;
    let n0_index = (0..t_terms.len())
        .filter(|&n| last + 1 - n >= opts.min_tail)
        .find(|&n| record_qs.iter().filter(|&&q| q >= t_terms[n]).eq(t_terms[n..].iter()));
    let n0_t_records = (0..t_terms.len()).find(|&n| t_terms[n..].iter().all(|t| record_qs.contains(t)));
    let non_t_records: Vec<u64> = records.iter().filter(|r| r.t_index.is_none()).map(|r| r.q).collect();

    if n0_index.is_none() {
        let from = n0_t_records.map_or(0, |n| t_terms[n]);
        let extra: Vec<u64> = non_t_records.iter().copied().filter(|&q| q >= from).collect();
        if extra.is_empty() {
            anomalies.push(format!("no tail of at least {} records coincides with T_n", opts.min_tail));
        }
        for q in extra {
            let n = t_terms.partition_point(|&t| t < q);
            let above = t_terms.get(n).map_or("q_max".to_string(), |t| format!("T_{n}={t}"));
            anomalies.push(format!(
                "record q={q} lies between T_{}={} and {above} and is not a T_n",
                n - 1,
                t_terms[n - 1]
            ));
        }
    }

    let kappa = ctx.kappa().to_f64();
    let abs_alpha = ctx.emb().abs_alpha().to_f64();
    let mut decay = Vec::new();
    for r in &records {
        if let Some(n) = r.t_index {
            let ratio = r.value / (kappa * abs_alpha.powi(n as i32));
            let ok = (ratio - 1.0).abs() < opts.decay_tolerance;
            if !ok {
                anomalies.push(format!("record q=T_{n}={} has N0/(kappa|alpha|^n) = {ratio}", r.q));
            }
            decay.push(DecayCheck { n, q: r.q, ratio, ok });
        }
    }

    let c_estimate = estimate_c(opts.c_cloud_count, opts.c_window, ctx)?;
    for r in &records {
        if r.offset_one_zero {
            anomalies.push(format!("record q={} matches the offset (1,0)", r.q));
        }
        if r.value < c_estimate.value() && r.dichotomy == Dichotomy::Other {
            anomalies
                .push(format!("record q={} below c has g=({},{}), neither delta nor delta-(1,1)", r.q, r.g1, r.g2));
        }
    }

    let emb = ctx.emb();
    let mut case2 = Vec::new();
    for r in records.iter().filter(|r| r.dichotomy == Dichotomy::DeltaMinusOneOne) {
        let digits = encode_u64(r.q, sys.seq());
        let n = digits.len();
        let bound = kappa * abs_alpha.powi(n as i32);
        let x = case2_sum(&digits, &params);
        let positive = emb.embed_beta(&x).is_positive();
        let holds = r.value >= bound;
        if !holds {
            anomalies.push(format!("case-2 record q={} has N = {} < kappa|alpha|^{n} = {bound}", r.q, r.value));
        }
        case2.push(Case2Evidence { q: r.q, n, value: r.value, bound, holds, positive });
    }
    let positivity_index = if case2.is_empty() {
        None
    } else {
        let worst = case2.iter().filter(|c| !c.positive).map(|c| c.n).max();
        Some(worst.map_or(0, |n| n + 1))
    };

    Ok(TheoremReport {
        schema: 1,
        a: params.a(),
        b: params.b(),
        precision_bits: ctx.precision_bits(),
        q_max: opts.q_max,
        neighbor_index: params.neighbor_index(),
        kappa,
        abs_alpha,
        t_terms,
        records,
        n0_index,
        min_tail: opts.min_tail,
        n0_t_records,
        non_t_records,
        decay,
        c_estimate,
        case2,
        positivity_index,
        anomalies,
    })
}
