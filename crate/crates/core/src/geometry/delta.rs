use num_bigint::{BigInt, BigUint};

use crate::ball::Real;
use crate::cubic::{fe_mul, CubicParams, Embeddings, FieldElement};
use crate::error::{Error, Result};
use crate::numeration::{encode_u64, greedy_encode, DigitString, TSequence};

/// Everything exact that depends only on `(a, b)`: the `T`-sequence, the
/// vector `v = (1/β, 1/β²)` and the matrix `B`.
#[derive(Clone, Debug)]
pub struct CubicSystem {
    params: CubicParams,
    seq: TSequence,
    v: (FieldElement, FieldElement),
    b: MatrixB,
}

impl CubicSystem {
    pub fn new(params: CubicParams) -> Self {
        let inv = FieldElement::beta_inverse(&params);
        let inv2 = fe_mul(&inv, &inv, &params);
        CubicSystem { params, seq: TSequence::new(params), b: MatrixB::new(&params), v: (inv, inv2) }
    }

    pub fn params(&self) -> &CubicParams {
        &self.params
    }

    pub fn seq(&self) -> &TSequence {
        &self.seq
    }

    /// `(1/β, 1/β²)` as exact elements.
    pub fn v(&self) -> &(FieldElement, FieldElement) {
        &self.v
    }

    pub fn matrix_b(&self) -> &MatrixB {
        &self.b
    }

    /// `q v - g`, exact.
    pub fn residual(&self, q: &BigInt, g: (&BigInt, &BigInt)) -> DeltaVector {
        DeltaVector {
            x1: &self.v.0.scale(q) - &FieldElement::from_int(g.0.clone()),
            x2: &self.v.1.scale(q) - &FieldElement::from_int(g.1.clone()),
            source: None,
        }
    }
}

/// A vector of `Z[β]²`; for `δ(N)` the components are `N/β - P_N` and
/// `N/β² - Q_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaVector {
    pub x1: FieldElement,
    pub x2: FieldElement,
    pub source: Option<u64>,
}

impl DeltaVector {
    pub fn zero() -> Self {
        DeltaVector { x1: FieldElement::zero(), x2: FieldElement::zero(), source: None }
    }

    /// Component-wise equality, ignoring `source`.
    pub fn same_point(&self, other: &DeltaVector) -> bool {
        self.x1 == other.x1 && self.x2 == other.x2
    }

    pub fn add(&self, o: &DeltaVector) -> DeltaVector {
        DeltaVector { x1: &self.x1 + &o.x1, x2: &self.x2 + &o.x2, source: None }
    }

    pub fn sub(&self, o: &DeltaVector) -> DeltaVector {
        DeltaVector { x1: &self.x1 - &o.x1, x2: &self.x2 - &o.x2, source: None }
    }

    pub fn scale(&self, k: &BigInt) -> DeltaVector {
        DeltaVector { x1: self.x1.scale(k), x2: self.x2.scale(k), source: None }
    }

    /// Shift by an integer vector: `self - (g1, g2)`.
    pub fn minus_lattice(&self, g1: i64, g2: i64) -> DeltaVector {
        DeltaVector {
            x1: &self.x1 - &FieldElement::from_int(g1),
            x2: &self.x2 - &FieldElement::from_int(g2),
            source: None,
        }
    }

    pub fn embed(&self, emb: &Embeddings) -> (Real, Real) {
        (emb.embed_beta(&self.x1), emb.embed_beta(&self.x2))
    }

    pub fn to_f64(&self, emb: &Embeddings) -> (f64, f64) {
        let (a, b) = self.embed(emb);
        (a.to_f64(), b.to_f64())
    }
}

/// `B = [[-b/β, -1/β], [1 - b/β², -1/β²]]` with entries in `Z[β]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixB {
    pub entries: [[FieldElement; 2]; 2],
    params: CubicParams,
}

impl MatrixB {
    pub fn new(params: &CubicParams) -> Self {
        let inv = FieldElement::beta_inverse(params);
        let inv2 = fe_mul(&inv, &inv, params);
        let b = params.b();
        MatrixB {
            entries: [
                [inv.scale_i64(-b), inv.scale_i64(-1)],
                [&FieldElement::one() - &inv2.scale_i64(b), inv2.scale_i64(-1)],
            ],
            params: *params,
        }
    }

    pub fn apply(&self, v: &DeltaVector) -> DeltaVector {
        let p = &self.params;
        let [[m11, m12], [m21, m22]] = &self.entries;
        DeltaVector {
            x1: &fe_mul(m11, &v.x1, p) + &fe_mul(m12, &v.x2, p),
            x2: &fe_mul(m21, &v.x1, p) + &fe_mul(m22, &v.x2, p),
            source: None,
        }
    }
}

pub fn apply_b(v: &DeltaVector, sys: &CubicSystem) -> DeltaVector {
    sys.b.apply(v)
}

/// `P_N = Σ_{j≥1} d_j T_{j-1}` and `Q_N = Σ_{j≥2} d_j T_{j-2}`.
pub fn shifted_sums(d: &DigitString, seq: &TSequence) -> (BigInt, BigInt) {
    let terms = seq.prefix(d.len());
    let mut p = BigInt::from(0);
    let mut q = BigInt::from(0);
    for (j, dj) in d.indexed() {
        if j >= 1 {
            p += &terms[j - 1] * dj;
        }
        if j >= 2 {
            q += &terms[j - 2] * dj;
        }
    }
    (p, q)
}

pub fn delta_of(n: u64, sys: &CubicSystem) -> DeltaVector {
    let d = encode_u64(n, &sys.seq);
    let (p, q) = shifted_sums(&d, &sys.seq);
    let mut v = sys.residual(&BigInt::from(n), (&p, &q));
    v.source = Some(n);
    v
}

/// `δ(N)` for an arbitrary-size `N`.
pub fn delta_of_big(n: &BigUint, sys: &CubicSystem) -> DeltaVector {
    let d = greedy_encode(n, &sys.seq);
    let (p, q) = shifted_sums(&d, &sys.seq);
    sys.residual(&BigInt::from(n.clone()), (&p, &q))
}

/// `δ(N) = Σ d_j B^j δ(1)`, evaluated by Horner's rule.
pub fn delta_via_series(d: &DigitString, sys: &CubicSystem) -> Result<DeltaVector> {
    if d.params() != sys.params() {
        return Err(Error::InadmissibleDigits(format!("digits for {:?} used with {:?}", d.params(), sys.params())));
    }
    let delta1 = DeltaVector { x1: sys.v.0.clone(), x2: sys.v.1.clone(), source: Some(1) };
    let mut acc = DeltaVector::zero();
    for &digit in d.digits() {
        acc = sys.b.apply(&acc).add(&delta1.scale(&BigInt::from(digit)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{isolate_roots, validate_params};

    fn sys(a: i64, b: i64) -> CubicSystem {
        CubicSystem::new(validate_params(a, b).unwrap())
    }

    #[test]
    fn delta_of_one() {
        let s = sys(4, -2);
        let d = delta_of(1, &s);
        assert_eq!(d.x1, FieldElement::new(2, -4, 1));
        assert_eq!(&d.x2, &s.v().1);
        assert_eq!(d.source, Some(1));
    }

    #[test]
    fn delta_of_five_embeds() {
        let s = sys(4, -2);
        let e = isolate_roots(*s.params(), 128).unwrap();
        let (x, y) = delta_of(5, &s).to_f64(&e);
        let beta = e.beta().to_f64();
        assert!((x - (5.0 / beta - 1.0)).abs() < 1e-14);
        assert!((y - 5.0 / (beta * beta)).abs() < 1e-14);
        assert!((x - 0.4239).abs() < 1e-4 && (y - 0.4055).abs() < 1e-4);
    }

    #[test]
    fn delta_of_t_n_matches_displayed_vector() {
        let s = sys(4, -3);
        for n in 2..30 {
            let t = s.seq().get(n).unwrap();
            let expect = s.residual(&t, (&s.seq().get(n - 1).unwrap(), &s.seq().get(n - 2).unwrap()));
            assert!(delta_of_big(&t.to_biguint().unwrap(), &s).same_point(&expect));
        }
    }

    #[test]
    fn b_action_and_series() {
        let s = sys(4, -2);
        let t2 = delta_of(14, &s);
        assert!(apply_b(&t2, &s).same_point(&delta_of(49, &s)));
        assert!(apply_b(&DeltaVector::zero(), &s).same_point(&DeltaVector::zero()));
        let p = *s.params();
        let ten = DigitString::new(vec![1, 0], p).unwrap();
        assert!(apply_b(&delta_of(1, &s), &s).same_point(&delta_via_series(&ten, &s).unwrap()));
        let one = DigitString::new(vec![1], p).unwrap();
        assert!(delta_via_series(&one, &s).unwrap().same_point(&delta_of(1, &s)));
        let eleven = DigitString::new(vec![1, 1], p).unwrap();
        assert!(delta_via_series(&eleven, &s).unwrap().same_point(&delta_of(5, &s)));
        let hundred = DigitString::new(vec![1, 0, 0], p).unwrap();
        assert!(delta_via_series(&hundred, &s).unwrap().same_point(&delta_of(14, &s)));
    }

    #[test]
    fn series_rejects_foreign_digits() {
        let s = sys(4, -2);
        let d = DigitString::new(vec![1, 1], validate_params(5, -3).unwrap()).unwrap();
        assert!(delta_via_series(&d, &s).is_err());
    }
}
