//! Exact arithmetic in the order `Z[β]` of a cubic Pisot unit and certified
//! numeric embeddings of `β` (real) and its complex conjugate `α`.

mod element;
mod params;
mod roots;

pub use element::{fe_mul, FieldElement};
pub use params::{validate_params, CubicParams};
pub use roots::{fe_embed, isolate_roots, Embedded, Embeddings, Place};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;
/// Precision ceiling for automatic refinement.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
