//! Constructive operations on polytopes: sums, linear images, polars.

use super::tol::ORIGIN_EPS;
use super::{Body, Matrix, Point, VPolytope, Zonotope};
use crate::{GeomError, Result};

/// Bodies exposing a support function.
pub trait Support {
    fn dim(&self) -> usize;
    fn support(&self, u: &[f64]) -> f64;
}

impl Support for VPolytope {
    fn dim(&self) -> usize {
        VPolytope::dim(self)
    }
    fn support(&self, u: &[f64]) -> f64 {
        VPolytope::support(self, u)
    }
}

impl Support for Zonotope {
    fn dim(&self) -> usize {
        Zonotope::dim(self)
    }
    fn support(&self, u: &[f64]) -> f64 {
        Zonotope::support(self, u)
    }
}

impl Support for Body {
    fn dim(&self) -> usize {
        Body::dim(self)
    }
    fn support(&self, u: &[f64]) -> f64 {
        Body::support(self, u)
    }
}

/// `h_K(u) = max_{y ∈ K} ⟨u, y⟩`; `u` need not be a unit vector.
pub fn support<B: Support + ?Sized>(body: &B, u: &[f64]) -> f64 {
    body.support(u)
}

/// `A + B` as the hull of pairwise vertex sums.
pub fn minkowski_sum(a: &VPolytope, b: &VPolytope) -> Result<VPolytope> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    a.require_exact()?;
    let mut pts = Vec::with_capacity(a.vertices().len() * b.vertices().len());
    for v in a.vertices() {
        for w in b.vertices() {
            pts.push(v + w);
        }
    }
    VPolytope::hull(&pts)
}

/// `XC = {Xc : c ∈ C}` as the hull of the vertex images.
pub fn linear_image(x: &Matrix, c: &VPolytope) -> Result<VPolytope> {
    if x.cols() != c.dim() {
        return Err(GeomError::DimensionMismatch { expected: x.cols(), got: c.dim() });
    }
    let pts: Vec<Point> = c.vertices().iter().map(|v| x.apply(v.coords())).collect();
    VPolytope::hull(&pts)
}

/// Polar body `{x : h_P(x) ≤ 1}` for a polytope with the origin in its interior.
pub fn polar(p: &VPolytope) -> Result<VPolytope> {
    p.require_exact()?;
    if !p.is_full_dimensional() {
        return Err(GeomError::OriginNotInterior);
    }
    let scale = p.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut pts = Vec::with_capacity(p.facets().len());
    for f in p.facets() {
        if f.offset <= ORIGIN_EPS * scale {
            return Err(GeomError::OriginNotInterior);
        }
        pts.push(f.normal.scale(1.0 / f.offset));
    }
    VPolytope::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[f64]]) -> VPolytope {
        VPolytope::hull(&v.iter().map(|c| Point(c.to_vec())).collect::<Vec<_>>()).unwrap()
    }

    fn square(h: f64) -> VPolytope {
        poly(&[&[-h, -h], &[h, -h], &[h, h], &[-h, h]])
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&square(1.0), &[1.0, 0.0]), 1.0);
        let z = Zonotope::new(2, vec![Point(vec![1.0, 0.0]), Point(vec![0.0, 1.0])]).unwrap();
        assert_eq!(support(&z, &[1.0, 1.0]), 2.0);
    }

    #[test]
    fn minkowski_examples() {
        let u = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]);
        let s = minkowski_sum(&u, &u).unwrap();
        assert_eq!(s.vertices().len(), 4);
        assert!((s.volume() - 4.0).abs() < 1e-14);
        let t = minkowski_sum(&u, &poly(&[&[0.5, 0.0]])).unwrap();
        assert!((t.support(&[1.0, 0.0]) - 1.5).abs() < 1e-15);
        assert!((t.volume() - 1.0).abs() < 1e-14);
        let c = poly(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(minkowski_sum(&u, &c).is_err());
    }

    #[test]
    fn linear_image_examples() {
        let sq = square(1.0);
        let img = linear_image(&Matrix::identity(2), &sq).unwrap();
        assert!(img.vertex_set_distance(&sq) < 1e-15);
        // X = [e1 e2 e1+e2], C = simplex S_3
        let x = Matrix::from_columns(2, vec![Point(vec![1.0, 0.0]), Point(vec![0.0, 1.0]), Point(vec![1.0, 1.0])]).unwrap();
        let s3 = VPolytope::from_vertices(3, (0..3).map(|i| Point::basis(3, i)).collect()).unwrap();
        let img = linear_image(&x, &s3).unwrap();
        assert!(img.vertex_set_distance(&poly(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])) < 1e-15);
        assert!(linear_image(&x, &sq).is_err());
    }

    #[test]
    fn polar_examples() {
        let p = polar(&square(1.0)).unwrap();
        assert!(p.vertex_set_distance(&poly(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]])) < 1e-15);
        let p2 = polar(&square(2.0)).unwrap();
        assert!((p2.volume() - 0.5).abs() < 1e-15);
        let oct = poly(&[&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, -1.0]]);
        let cube = polar(&oct).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert!((cube.volume() - 8.0).abs() < 1e-12);
        let shifted = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(polar(&shifted).unwrap_err().to_string(), "origin not interior");
    }
}
