use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::CubicParams;

/// `c0 + c1 β + c2 β²` with integer coordinates.
///
/// Addition and negation do not depend on the polynomial; multiplication
/// reduces through `β³ = aβ² + bβ + 1` and therefore takes the parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    c: [BigInt; 3],
}

impl FieldElement {
    pub fn new(c0: impl Into<BigInt>, c1: impl Into<BigInt>, c2: impl Into<BigInt>) -> Self {
        FieldElement { c: [c0.into(), c1.into(), c2.into()] }
    }

    pub fn from_coords(c: [BigInt; 3]) -> Self {
        FieldElement { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn from_int(k: impl Into<BigInt>) -> Self {
        Self::new(k, 0, 0)
    }

    pub fn beta() -> Self {
        Self::new(0, 1, 0)
    }

    /// `β⁻¹ = β² - aβ - b`; `β` is a unit because the constant term of its
    /// minimal polynomial is `-1`.
    pub fn beta_inverse(params: &CubicParams) -> Self {
        Self::new(-params.b(), -params.a(), 1)
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        FieldElement { c: [&self.c[0] * k, &self.c[1] * k, &self.c[2] * k] }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Multiplication by `β`.
    pub fn mul_beta(&self, params: &CubicParams) -> Self {
        let [c0, c1, c2] = &self.c;
        FieldElement { c: [c2.clone(), c0 + c2 * params.b(), c1 + c2 * params.a()] }
    }

    pub fn mul(&self, other: &Self, params: &CubicParams) -> Self {
        fe_mul(self, other, params)
    }

    /// Largest absolute coordinate, as `f64` (used for error bounds).
    pub fn max_abs_coord(&self) -> f64 {
        use num_traits::{Signed, ToPrimitive};
        self.c.iter().map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

/// Exact product in `Z[β]`: multiply as polynomials, then fold `β⁴` and `β³`
/// back into the basis `(1, β, β²)`.
pub fn fe_mul(x: &FieldElement, y: &FieldElement, params: &CubicParams) -> FieldElement {
    let mut p: [BigInt; 5] = Default::default();
    for i in 0..3 {
        if x.c[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            p[i + j] += &x.c[i] * &y.c[j];
        }
    }
    let (a, b) = (params.a(), params.b());
    for k in (3..5).rev() {
        let top = std::mem::take(&mut p[k]);
        p[k - 1] += &top * a;
        p[k - 2] += &top * b;
        p[k - 3] += top;
    }
    let [c0, c1, c2, _, _] = p;
    FieldElement { c: [c0, c1, c2] }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement { c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2]] }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement { c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2]] }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { c: [-&self.c[0], -&self.c[1], -&self.c[2]] }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::validate_params;
    use proptest::prelude::*;

    /// Independent route: multiplication by `x` as the matrix
    /// `x0 I + x1 C + x2 C²`, where `C` is the companion matrix of `P`
    /// acting on coordinate vectors.
    fn companion_mul(x: &FieldElement, y: &FieldElement, params: &CubicParams) -> FieldElement {
        let (a, b) = (BigInt::from(params.a()), BigInt::from(params.b()));
        let c = |v: &[BigInt; 3]| -> [BigInt; 3] { [v[2].clone(), &v[0] + &b * &v[2], &v[1] + &a * &v[2]] };
        let y1 = c(&y.c);
        let y2 = c(&y1);
        let mut out: [BigInt; 3] = Default::default();
        for i in 0..3 {
            out[i] = &x.c[0] * &y.c[i] + &x.c[1] * &y1[i] + &x.c[2] * &y2[i];
        }
        FieldElement { c: out }
    }

    #[test]
    fn minimal_polynomial_relation() {
        let p = validate_params(4, -2).unwrap();
        let b2 = FieldElement::new(0, 0, 1);
        assert_eq!(fe_mul(&FieldElement::beta(), &b2, &p), FieldElement::new(1, -2, 4));
    }

    #[test]
    fn beta_inverse_is_inverse() {
        for a in 3..=20 {
            for b in (1 - a)..=-2 {
                let p = validate_params(a, b).unwrap();
                let inv = FieldElement::beta_inverse(&p);
                assert_eq!(fe_mul(&FieldElement::beta(), &inv, &p), FieldElement::one());
                assert_eq!(FieldElement::beta().mul_beta(&p), FieldElement::new(0, 0, 1));
                assert_eq!(inv.mul_beta(&p), FieldElement::one());
            }
        }
    }

    #[test]
    fn square_of_one_plus_beta() {
        let p = validate_params(4, -2).unwrap();
        let x = FieldElement::new(1, 1, 0);
        let sq = fe_mul(&x, &x, &p);
        assert_eq!(sq, FieldElement::new(1, 2, 1));
        assert_eq!(sq, companion_mul(&x, &x, &p));
    }

    fn element() -> impl Strategy<Value = FieldElement> {
        (-1000i64..1000, -1000i64..1000, -1000i64..1000).prop_map(|(a, b, c)| FieldElement::new(a, b, c))
    }

    fn params() -> impl Strategy<Value = CubicParams> {
        (3i64..12).prop_flat_map(|a| ((1 - a)..=-2).prop_map(move |b| validate_params(a, b).unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(p in params(), x in element(), y in element(), z in element()) {
            let xy = fe_mul(&x, &y, &p);
            prop_assert_eq!(&xy, &fe_mul(&y, &x, &p));
            prop_assert_eq!(fe_mul(&xy, &z, &p), fe_mul(&x, &fe_mul(&y, &z, &p), &p));
            prop_assert_eq!(fe_mul(&x, &(&y + &z), &p), &xy + &fe_mul(&x, &z, &p));
            prop_assert_eq!(xy, companion_mul(&x, &y, &p));
        }
    }
}
