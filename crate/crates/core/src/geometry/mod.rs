//! The discrepancy vectors `δ(N)`, the Rauzy norm, the conjugation map onto
//! the complex plane, point clouds of the Rauzy fractal and the lattice scan
//! for points of `R ∩ (Z + Zα)`.

mod cloud;
mod conj;
mod delta;
mod norm;
pub mod ppm;
mod scan;

pub use cloud::{cloud_e, cloud_r, for_each_r_point, write_csv_row, CloudKind, FractalCloud, CSV_HEADER};
pub use conj::{conjugation_map_g, ConjugationMap};
pub use delta::{apply_b, delta_of, delta_of_big, delta_via_series, shifted_sums, CubicSystem, DeltaVector, MatrixB};
pub use norm::{matrix_m, norm_of_digits, rauzy_norm, similarity_residual, RauzyNormCtx};
pub use scan::{
    calibrated_scan, expected_hits, lattice_scan, scan_report, zero_interior_probe, InteriorProbe, LatticeDistance,
    RSearch, ScanReport, REQUIRED_SEPARATION,
};
