use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficients of `P(x) = x^3 - a x^2 - b x - 1` with `-a + 1 <= b <= -2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CubicParams {
    a: i64,
    b: i64,
    k: i64,
}

impl CubicParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b > -2 || b < 1 - a {
            return Err(Error::OutOfRange { a, b });
        }
        let k = (a - 1) / (a + b + 1);
        Ok(CubicParams { a, b, k })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `K = floor((a - 1) / (a + b + 1))`; the fractal has at least
    /// `6 + 2(K - 1)` neighbours.
    pub fn neighbor_index(&self) -> i64 {
        self.k
    }

    /// Set when `K >= 2`: the approximation results assume six neighbours.
    pub fn neighbor_warning(&self) -> bool {
        self.k >= 2
    }

    /// Discriminant of `P`; negative exactly when `P` has a pair of
    /// non-real roots.
    pub fn discriminant(&self) -> BigInt {
        // x^3 + p x^2 + q x + r with p = -a, q = -b, r = -1
        let p = BigInt::from(-self.a);
        let q = BigInt::from(-self.b);
        let r = BigInt::from(-1);
        BigInt::from(18) * &p * &q * &r - BigInt::from(4) * p.pow(3) * &r + p.pow(2) * q.pow(2)
            - BigInt::from(4) * q.pow(3)
            - BigInt::from(27) * r.pow(2)
    }

    /// Digit bound `a - 1` and the infinite comparison word
    /// `(a-1)(a+b-1)(a+b)(a+b)...`, truncated to `len` letters.
    pub fn comparison_word(&self, len: usize) -> Vec<u32> {
        (0..len)
            .map(|i| match i {
                0 => self.a - 1,
                1 => self.a + self.b - 1,
                _ => self.a + self.b,
            } as u32)
            .collect()
    }
}

pub fn validate_params(a: i64, b: i64) -> Result<CubicParams> {
    CubicParams::new(a, b)
}
