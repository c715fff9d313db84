//! Exact representations and constructive operations for compact convex sets.
//!
//! All coordinates are `f64`. Exact algorithms (hulls, volumes, polars) are
//! restricted to ambient dimension 2 and 3; vertex clouds in higher dimension
//! are accepted as coefficient sets for linear images.

mod hull2;
mod hull3;
pub mod literal;
mod madd;
mod matrix;
mod ops;
mod point;
mod polytope;
pub mod sphere;
pub mod tol;
mod zonotope;

pub use literal::BodyLiteral;
pub use madd::{default_lp_vertices, lp_sphere_points, m_add, MKind, MSpec};
pub use matrix::Matrix;
pub use ops::{linear_image, minkowski_sum, polar, support, Support};
pub use point::Point;
pub use polytope::{ball_polytope, unit_ball_volume, Facet, VPolytope};
pub use zonotope::{zonotope_to_vpolytope, zonotope_volume, Zonotope, MAX_GENERATORS_3D};

pub(crate) use hull3::plane_basis;
pub(crate) use polytope::face_area as polytope_face_area;
pub(crate) use hull3::{cross, dot3};

/// A body argument for functionals that accept either representation.
#[derive(Clone, Debug)]
pub enum Body {
    Polytope(VPolytope),
    Zonotope(Zonotope),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polytope(p) => p.dim(),
            Body::Zonotope(z) => z.dim(),
        }
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        match self {
            Body::Polytope(p) => p.support(u),
            Body::Zonotope(z) => z.support(u),
        }
    }

    /// Vertex representation; zonotopes are converted.
    pub fn to_vpolytope(&self) -> crate::Result<VPolytope> {
        match self {
            Body::Polytope(p) => Ok(p.clone()),
            Body::Zonotope(z) => zonotope_to_vpolytope(z),
        }
    }

    pub fn volume(&self) -> crate::Result<f64> {
        match self {
            Body::Polytope(p) => Ok(p.volume()),
            Body::Zonotope(z) => match zonotope_volume(z) {
                Ok(v) => Ok(v),
                Err(crate::GeomError::BudgetExceeded { .. }) => Ok(zonotope_to_vpolytope(z)?.volume()),
                Err(e) => Err(e),
            },
        }
    }
}

impl From<VPolytope> for Body {
    fn from(p: VPolytope) -> Self {
        Body::Polytope(p)
    }
}

impl From<Zonotope> for Body {
    fn from(z: Zonotope) -> Self {
        Body::Zonotope(z)
    }
}
