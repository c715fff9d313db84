//! Numerical tolerances shared by the kernel. Values are relative to the
//! bounding-box scale of the input unless noted.

/// Coplanarity / visibility threshold for hull construction (normalized coordinates).
pub const HULL_EPS: f64 = 1e-12;
/// Points closer than this (normalized) are merged before hulling.
pub const DEDUP_EPS: f64 = 1e-12;
/// Triangles whose vertices lie within this distance of a facet plane are merged into it.
pub const FACET_MERGE_EPS: f64 = 1e-9;
/// Relative threshold below which a facet offset counts as zero for polarity.
pub const ORIGIN_EPS: f64 = 1e-12;
/// Relative threshold for parallel generators.
pub const PARALLEL_EPS: f64 = 1e-12;
