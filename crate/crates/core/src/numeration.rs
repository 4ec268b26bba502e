//! The recurrent sequence `T_n`, greedy `T`-representations of integers,
//! lexicographic admissibility, the Rényi expansion of 1 and Akiyama's
//! classification of cubic Pisot units.

use std::fmt;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cubic::{CubicParams, Embeddings, FieldElement};
use crate::error::{Error, Result};

/// `T_0 = 1, T_1 = a, T_2 = a² + b, T_{n+3} = aT_{n+2} + bT_{n+1} + T_n`,
/// extended backwards to `T_{-4} = -b, T_{-3} = 1, T_{-2} = T_{-1} = 0`.
///
/// Values are filled on demand; reads after a fill are shared.
#[derive(Debug)]
pub struct TSequence {
    params: CubicParams,
    // values[i] = T_{i-4}
    values: RwLock<Vec<BigInt>>,
}

impl Clone for TSequence {
    fn clone(&self) -> Self {
        TSequence { params: self.params, values: RwLock::new(self.values.read().unwrap().clone()) }
    }
}

impl TSequence {
    pub fn new(params: CubicParams) -> Self {
        let start = [-params.b(), 1, 0, 0, 1, params.a(), params.a() * params.a() + params.b()];
        TSequence { params, values: RwLock::new(start.iter().map(|&v| BigInt::from(v)).collect()) }
    }

    pub fn params(&self) -> &CubicParams {
        &self.params
    }

    fn fill_to(&self, len: usize) {
        if self.values.read().unwrap().len() >= len {
            return;
        }
        let mut v = self.values.write().unwrap();
        while v.len() < len {
            let n = v.len();
            let next = &v[n - 1] * self.params.a() + &v[n - 2] * self.params.b() + &v[n - 3];
            v.push(next);
        }
    }

    pub fn get(&self, n: i64) -> Result<BigInt> {
        if n < -4 {
            return Err(Error::IndexBelowMinusFour(n));
        }
        let idx = (n + 4) as usize;
        self.fill_to(idx + 1);
        Ok(self.values.read().unwrap()[idx].clone())
    }

    /// `T_0, T_1, ..., T_{n-1}`.
    pub fn prefix(&self, n: usize) -> Vec<BigInt> {
        self.fill_to(n + 4);
        self.values.read().unwrap()[4..4 + n].to_vec()
    }

    /// All `T_n` (n ≥ 0) not exceeding `limit`, in increasing order.
    pub fn terms_up_to(&self, limit: &BigInt) -> Vec<BigInt> {
        let mut n = 0usize;
        loop {
            self.fill_to(n + 5);
            if &self.values.read().unwrap()[n + 4] > limit {
                return self.prefix(n);
            }
            n += 1;
        }
    }

    /// Least `n ≥ 0` with `T_n > x`, i.e. the number of digits in the
    /// representation of `x`.
    pub fn length_for(&self, x: &BigInt) -> usize {
        self.terms_up_to(x).len()
    }
}

pub fn t_value(n: i64, seq: &TSequence) -> Result<BigInt> {
    seq.get(n)
}

/// State of the left-to-right comparison against the infinite word
/// `w = (a-1)(a+b-1)(a+b)(a+b)...`: how much of `w` the current window is
/// still tied with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchState {
    /// No pending tie.
    Free,
    /// The window is tied with `(a-1)`.
    Top,
    /// The window is tied with `(a-1)(a+b-1)(a+b)^k`.
    Tail,
}

impl MatchState {
    pub const ALL: [MatchState; 3] = [MatchState::Free, MatchState::Top, MatchState::Tail];

    /// Next state after reading `d` (most significant first), or `None` if
    /// some window now exceeds `w`.
    pub fn step(self, d: u32, params: &CubicParams) -> Option<MatchState> {
        let (a, b) = (params.a(), params.b());
        let d = d as i64;
        if d < 0 || d > a - 1 {
            return None;
        }
        let tied = match self {
            MatchState::Free => 0,
            MatchState::Top => a + b - 1,
            MatchState::Tail => a + b,
        };
        match self {
            MatchState::Free => {}
            _ if d > tied => return None,
            MatchState::Top if d == tied => return Some(MatchState::Tail),
            MatchState::Tail if d == tied => return Some(MatchState::Tail),
            _ => {}
        }
        // a - 1 exceeds both a + b - 1 and a + b, so a fresh window can
        // only start a tie from the Free branch above or here.
        Some(if d == a - 1 { MatchState::Top } else { MatchState::Free })
    }
}

/// State for reading digits least significant first: whether the digits
/// read so far (top one first, zero padded) are `≤ (a+b)^ω` and whether
/// they are `≤ (a+b-1)(a+b)^ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LowFirstState {
    below_tail: bool,
    below_second: bool,
}

impl LowFirstState {
    pub const START: LowFirstState = LowFirstState { below_tail: true, below_second: true };

    pub fn step(self, d: u32, params: &CubicParams) -> Option<LowFirstState> {
        let (a, b) = (params.a(), params.b());
        let d = d as i64;
        if d < 0 || d > a - 1 || (d == a - 1 && !self.below_second) {
            return None;
        }
        Some(LowFirstState {
            below_tail: d < a + b || (d == a + b && self.below_tail),
            below_second: d < a + b - 1 || (d == a + b - 1 && self.below_tail),
        })
    }
}

/// `true` iff every digit is in `0..a` and every window read from the most
/// significant digit is `≤_lex (a-1)(a+b-1)(a+b)...` (windows running past
/// the last digit are padded with zeros).
pub fn is_admissible(digits: &[u32], params: &CubicParams) -> bool {
    let mut s = MatchState::Free;
    for &d in digits {
        match s.step(d, params) {
            Some(n) => s = n,
            None => return false,
        }
    }
    true
}

/// Number of admissible words of length `len` (leading zeros allowed),
/// by iterating the transfer matrix of [`MatchState`].
pub fn count_admissible(len: usize, params: &CubicParams) -> BigUint {
    let idx = |s: MatchState| MatchState::ALL.iter().position(|&t| t == s).unwrap();
    let mut counts = [BigUint::from(1u32), BigUint::zero(), BigUint::zero()];
    for _ in 0..len {
        let mut next: [BigUint; 3] = Default::default();
        for s in MatchState::ALL {
            if counts[idx(s)].is_zero() {
                continue;
            }
            for d in 0..params.a() as u32 {
                if let Some(t) = s.step(d, params) {
                    next[idx(t)] += &counts[idx(s)];
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

/// Admissible digit word, most significant digit first, with no leading
/// zeros (zero itself is the empty word).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u32>,
    params: CubicParams,
}

impl DigitString {
    pub fn new(digits: Vec<u32>, params: CubicParams) -> Result<Self> {
        if !is_admissible(&digits, &params) {
            return Err(Error::InadmissibleDigits(join_digits(&digits)));
        }
        let first = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
        Ok(DigitString { digits: digits[first..].to_vec(), params })
    }

    /// Parses comma-separated decimal digits, most significant first.
    pub fn parse(s: &str, params: CubicParams) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new(), params);
        }
        let digits = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InadmissibleDigits(format!("bad digit {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(digits, params)
    }

    pub fn params(&self) -> &CubicParams {
        &self.params
    }

    /// Digits most significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `d_i`, the coefficient of `T_i`.
    pub fn digit(&self, i: usize) -> u32 {
        if i < self.digits.len() {
            self.digits[self.digits.len() - 1 - i]
        } else {
            0
        }
    }

    /// `(i, d_i)` from `i = 0` upwards.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.digits.iter().rev().copied().enumerate()
    }
}

fn join_digits(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&join_digits(&self.digits))
        }
    }
}

pub fn greedy_encode(n: &BigUint, seq: &TSequence) -> DigitString {
    let mut rem = BigInt::from_biguint(Sign::Plus, n.clone());
    let terms = seq.terms_up_to(&rem);
    let mut digits = Vec::with_capacity(terms.len());
    for t in terms.iter().rev() {
        let d = &rem / t;
        rem -= &d * t;
        digits.push(d.to_u32().expect("greedy digit fits in u32"));
    }
    debug_assert!(rem.is_zero());
    DigitString { digits, params: *seq.params() }
}

pub fn encode_u64(n: u64, seq: &TSequence) -> DigitString {
    greedy_encode(&BigUint::from(n), seq)
}

/// `Σ d_i T_i` for an admissible digit list (most significant first).
pub fn decode(digits: &[u32], seq: &TSequence) -> Result<BigUint> {
    if !is_admissible(digits, seq.params()) {
        return Err(Error::InadmissibleDigits(join_digits(digits)));
    }
    let terms = seq.prefix(digits.len());
    let total: BigInt = digits.iter().rev().zip(&terms).map(|(&d, t)| t * d).sum();
    Ok(total.to_biguint().expect("sum of nonnegative terms"))
}

impl DigitString {
    pub fn value(&self, seq: &TSequence) -> BigUint {
        decode(&self.digits, seq).expect("DigitString is admissible by construction")
    }
}

/// First `count` digits of the Rényi expansion `d(1, β)`, by iterating
/// `x ↦ βx - ⌊βx⌋` from `x = 1`. The orbit is kept exactly in `Z[β]`;
/// each floor is certified, refining the embedding when a value sits too
/// close to an integer.
pub fn renyi_expansion_of_one(count: usize, emb: &Embeddings) -> Result<Vec<u32>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let params = *emb.params();
    let mut local: Option<Embeddings> = None;
    let mut x = FieldElement::one();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let y = x.mul_beta(&params);
        let t = loop {
            let e = local.as_ref().unwrap_or(emb);
            match e.embed_beta(&y).floor() {
                Some(t) => break t,
                None => local = Some(e.refined()?),
            }
        };
        x = &y - &FieldElement::from_int(t.clone());
        out.push(t.to_u32().ok_or_else(|| Error::InvalidArgument(format!("digit {t} out of range")))?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AkiyamaCase {
    #[serde(rename = "case-i")]
    I,
    #[serde(rename = "case-ii")]
    II,
    #[serde(rename = "case-iii")]
    III,
    #[serde(rename = "case-iv")]
    IV,
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for AkiyamaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AkiyamaCase::I => "case-i",
            AkiyamaCase::II => "case-ii",
            AkiyamaCase::III => "case-iii",
            AkiyamaCase::IV => "case-iv",
            AkiyamaCase::None => "none",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: AkiyamaCase,
    /// Finiteness property: holds in cases i–iii, fails in case iv.
    pub finiteness: bool,
}

pub fn akiyama_classify(a: i64, b: i64) -> Classification {
    let case = if 1 <= b && b <= a {
        AkiyamaCase::I
    } else if b == -1 && a >= 2 {
        AkiyamaCase::II
    } else if b == a + 1 {
        AkiyamaCase::III
    } else if 1 - a <= b && b <= -2 {
        AkiyamaCase::IV
    } else {
        AkiyamaCase::None
    };
    let finiteness = matches!(case, AkiyamaCase::I | AkiyamaCase::II | AkiyamaCase::III);
    Classification { case, finiteness }
}
