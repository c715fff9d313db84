//! Convex-geometry kernel and stochastic experiment harness for empirical
//! projection-body inequalities in dimensions 2 and 3.
//!
//! Layout
//! - [`kernel`]: points, hulls, polytopes, zonotopes, polars and M-addition.
//! - [`mixed`]: mixed volumes, surface data and shadow-system probes.
//! - [`projection`]: projection bodies, radial measures of polars, centroid bodies.
//! - [`stochastic`]: seeded samplers for the random body constructions.
//! - [`symmetrization`]: Steiner symmetrals, rearrangement, shadow systems.
//! - [`harness`]: Monte Carlo estimators, experiment runners, reports.

pub mod error;
pub mod harness;
pub mod kernel;
pub mod mixed;
pub mod numeric;
pub mod projection;
pub mod stochastic;
pub mod symmetrization;

pub use error::{GeomError, Result};
pub use kernel::{Body, Matrix, MSpec, Point, VPolytope, Zonotope};
