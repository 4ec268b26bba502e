//! Serialization helpers shared by the JSON and CSV writers.

use serde::Serializer;
use serde_json::value::RawValue;

/// `x` with 17 significant digits, e.g. `1.5196803410000000e-1`.
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Serializes a float as a JSON number with 17 significant digits;
/// non-finite values become `null`.
pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(fmt17(*x)).map_err(serde::ser::Error::custom)?;
    s.serialize_some(&raw)
}

pub fn sig17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig17(v, s),
        None => s.serialize_none(),
    }
}
