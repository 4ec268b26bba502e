//! Checks shared by the integration tests and the acceptance runner. Each
//! returns `Err(detail)` on the first violation.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use rauzy::approx::closest_lattice;
use rauzy::cubic::{fe_mul, isolate_roots, validate_params, CubicParams, FieldElement};
use rauzy::geometry::{
    apply_b, conjugation_map_g, delta_of, delta_of_big, delta_via_series, similarity_residual, CubicSystem,
    DeltaVector, RauzyNormCtx,
};
use rauzy::numeration::{decode, encode_u64, is_admissible, renyi_expansion_of_one, DigitString, TSequence};

pub const PAIRS: [(i64, i64); 4] = [(3, -2), (4, -2), (4, -3), (5, -3)];

pub type Check = Result<String, String>;

pub fn params(a: i64, b: i64) -> CubicParams {
    validate_params(a, b).expect("valid parameters")
}

pub fn ctx(a: i64, b: i64) -> RauzyNormCtx {
    RauzyNormCtx::from_params(params(a, b), 128).expect("embeddings")
}

/// β and α from plain f64 root finding: Newton for the real root, then
/// the quadratic factor x² + (β − a)x + 1/β.
pub fn roots_f64(a: i64, b: i64) -> (f64, (f64, f64)) {
    let (af, bf) = (a as f64, b as f64);
    let mut x = af + 1.0;
    for _ in 0..100 {
        let fx = x * x * x - af * x * x - bf * x - 1.0;
        let dx = 3.0 * x * x - 2.0 * af * x - bf;
        x -= fx / dx;
    }
    let (p, q) = (x - af, 1.0 / x);
    (x, (-p / 2.0, (4.0 * q - p * p).sqrt() / 2.0))
}

/// Naive closest lattice point: every g within ±5 of the rounded `qv`.
pub fn oracle_closest(q: u64, a: i64, b: i64) -> ((i64, i64), f64, f64) {
    let (beta, (ar, ai)) = roots_f64(a, b);
    let (c1r, c1i, c2) = (ar + b as f64 / beta, ai, 1.0 / beta);
    let (v1, v2) = (q as f64 / beta, q as f64 / (beta * beta));
    let mut best = ((0, 0), f64::INFINITY);
    let mut second = f64::INFINITY;
    for g1 in v1.round() as i64 - 5..=v1.round() as i64 + 5 {
        for g2 in v2.round() as i64 - 5..=v2.round() as i64 + 5 {
            if (g1, g2) == (0, 0) && q == 0 {
                continue;
            }
            let (x1, x2) = (v1 - g1 as f64, v2 - g2 as f64);
            let n = (c1r * x1 + c2 * x2).hypot(c1i * x1);
            if n < best.1 {
                second = best.1;
                best = ((g1, g2), n);
            } else if n < second {
                second = n;
            }
        }
    }
    (best.0, best.1, second)
}

pub fn closest_matches_oracle(a: i64, b: i64, q_max: u64) -> Check {
    let ctx = ctx(a, b);
    let mut worst = 0.0f64;
    for q in 1..=q_max {
        let m = closest_lattice(q, &ctx).map_err(|e| format!("q={q}: {e}"))?;
        let (g, value, second) = oracle_closest(q, a, b);
        let diff = (m.value_f64() - value).abs();
        worst = worst.max(diff);
        if diff > 1e-10 {
            return Err(format!("q={q}: value {} vs oracle {value}", m.value_f64()));
        }
        if m.g != g && second - value > 1e-10 {
            return Err(format!("q={q}: g={:?} vs oracle {g:?}", m.g));
        }
    }
    Ok(format!("({a},{b}) q≤{q_max}, max |Δvalue| = {worst:.1e}"))
}

pub fn roundtrip(a: i64, b: i64, n_max: u64) -> Check {
    let seq = TSequence::new(params(a, b));
    let p = params(a, b);
    for n in 0..=n_max {
        let d = encode_u64(n, &seq);
        if !is_admissible(d.digits(), &p) {
            return Err(format!("({a},{b}) N={n}: [{d}] not admissible"));
        }
        let back = decode(d.digits(), &seq).map_err(|e| e.to_string())?;
        if back != BigUint::from(n) {
            return Err(format!("({a},{b}) N={n}: decodes to {back}"));
        }
        // Σ_{i≤j} d_i T_i < T_{j+1} for every prefix from the low end
        let mut partial = BigInt::from(0);
        for (j, &dj) in d.digits().iter().rev().enumerate() {
            partial += BigInt::from(dj) * seq.get(j as i64).unwrap();
            if partial >= seq.get(j as i64 + 1).unwrap() {
                return Err(format!("({a},{b}) N={n}: partial sum at j={j} reaches T_{}", j + 1));
            }
        }
    }
    Ok(format!("({a},{b}) N≤{n_max}"))
}

/// Every digit string of a fixed length, filtered by admissibility, must
/// hit each N ≤ `n_max` exactly once.
pub fn uniqueness(a: i64, b: i64, n_max: u64) -> Check {
    let p = params(a, b);
    let seq = TSequence::new(p);
    let len = (0..).find(|&k| seq.get(k).unwrap() > BigInt::from(n_max)).unwrap() as usize;
    let base = a as u32;
    let mut hits: HashMap<u64, Vec<Vec<u32>>> = HashMap::new();
    let mut digits = vec![0u32; len];
    loop {
        if is_admissible(&digits, &p) {
            let n: u64 = decode(&digits, &seq).unwrap().try_into().unwrap();
            if n <= n_max {
                hits.entry(n).or_default().push(digits.clone());
            }
        }
        let mut i = len;
        loop {
            if i == 0 {
                let missing = (0..=n_max).find(|n| !hits.contains_key(n));
                if let Some(n) = missing {
                    return Err(format!("({a},{b}) N={n} has no admissible representation"));
                }
                if let Some((n, v)) = hits.iter().find(|(_, v)| v.len() > 1) {
                    return Err(format!("({a},{b}) N={n} has {} representations", v.len()));
                }
                let greedy_ok = (0..=n_max).all(|n| {
                    let g = encode_u64(n, &seq);
                    let mut padded = vec![0; len - g.len()];
                    padded.extend_from_slice(g.digits());
                    hits[&n][0] == padded
                });
                if !greedy_ok {
                    return Err(format!("({a},{b}) greedy differs from the unique representation"));
                }
                return Ok(format!("({a},{b}) N≤{n_max}, length {len}"));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub fn weighted_sum_identity(a: i64, b: i64) -> Check {
    let seq = TSequence::new(params(a, b));
    let t = |k: i64| seq.get(k).unwrap();
    for n in 4..=50 {
        let mut rhs = (a - 1) * t(n - 1) + (a + b - 1) * t(n - 2) + (a + b + 1) * t(0);
        for k in 1..=n - 3 {
            rhs += (a + b) * t(k);
        }
        if rhs != t(n) {
            return Err(format!("({a},{b}) n={n}: {rhs} != {}", t(n)));
        }
    }
    Ok(format!("({a},{b}) 4≤n≤50"))
}

pub fn series_matches_delta(a: i64, b: i64, n_max: u64) -> Check {
    let sys = CubicSystem::new(params(a, b));
    for n in 0..=n_max {
        let d = encode_u64(n, sys.seq());
        let s = delta_via_series(&d, &sys).map_err(|e| e.to_string())?;
        if !s.same_point(&delta_of(n, &sys)) {
            return Err(format!("({a},{b}) N={n}"));
        }
    }
    Ok(format!("({a},{b}) N≤{n_max}"))
}

/// `δ(T_n)` built directly as `(T_n/β − T_{n−1}, T_n/β² − T_{n−2})`.
fn delta_t_direct(n: i64, sys: &CubicSystem) -> DeltaVector {
    let p = sys.params();
    let inv = FieldElement::beta_inverse(p);
    let inv2 = fe_mul(&inv, &inv, p);
    let t = |k| sys.seq().get(k).unwrap();
    DeltaVector {
        x1: &inv.scale(&t(n)) - &FieldElement::from_int(t(n - 1)),
        x2: &inv2.scale(&t(n)) - &FieldElement::from_int(t(n - 2)),
        source: None,
    }
}

pub fn b_action(a: i64, b: i64) -> Check {
    let sys = CubicSystem::new(params(a, b));
    for n in 2..=50 {
        let tn: BigUint = sys.seq().get(n).unwrap().try_into().unwrap();
        let here = delta_of_big(&tn, &sys);
        if !here.same_point(&delta_t_direct(n, &sys)) {
            return Err(format!("({a},{b}) δ(T_{n}) differs from the displayed vector"));
        }
        if !apply_b(&here, &sys).same_point(&delta_t_direct(n + 1, &sys)) {
            return Err(format!("({a},{b}) B δ(T_{n}) != δ(T_{})", n + 1));
        }
    }
    Ok(format!("({a},{b}) 2≤n≤50"))
}

pub fn similarity(a: i64, b: i64) -> Check {
    let ctx = ctx(a, b);
    let worst = similarity_residual(&ctx)
        .iter()
        .flatten()
        .map(|z| {
            let (re, im) = z.to_f64();
            re.hypot(im) + z.rad_f64()
        })
        .fold(0.0, f64::max);
    if worst < 1e-30 {
        Ok(format!("({a},{b}) max residual {worst:.1e}"))
    } else {
        Err(format!("({a},{b}) residual {worst:.1e}"))
    }
}

pub fn conjugation(a: i64, b: i64) -> Check {
    let emb = isolate_roots(params(a, b), 128).unwrap();
    let one = rauzy::ball::Complex::from_i64(1, emb.precision_bits());
    let dist = |z: &rauzy::ball::Complex, t: (f64, f64)| {
        let (x, y) = conjugation_map_g(z, &emb).unwrap();
        (x.to_f64() - t.0).hypot(y.to_f64() - t.1)
    };
    let e1 = dist(&one, (-1.0, b as f64));
    let e2 = dist(emb.alpha(), (0.0, -1.0));
    if e1 < 1e-9 && e2 < 1e-9 {
        Ok(format!("({a},{b}) |g(1)-(-1,b)| = {e1:.1e}, |g(α)-(0,-1)| = {e2:.1e}"))
    } else {
        Err(format!("({a},{b}) errors {e1:.1e}, {e2:.1e}"))
    }
}

pub fn renyi(a: i64, b: i64) -> Check {
    let emb = isolate_roots(params(a, b), 128).unwrap();
    let got = renyi_expansion_of_one(30, &emb).map_err(|e| e.to_string())?;
    let mut want = vec![(a - 1) as u32, (a + b - 1) as u32];
    want.resize(30, (a + b) as u32);
    if got == want {
        Ok(format!("({a},{b}) {}…", got[..6].iter().map(u32::to_string).collect::<String>()))
    } else {
        Err(format!("({a},{b}) got {got:?}"))
    }
}

pub fn digit_string(digits: &[u32], a: i64, b: i64) -> DigitString {
    DigitString::new(digits.to_vec(), params(a, b)).unwrap()
}
