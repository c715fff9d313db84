//! Vertex-represented polytopes.

use super::hull2::hull2_indices;
use super::hull3::{cross, dot3, hull3, norm3, plane_basis, sub3};
use super::point::{dot, Point};
use crate::{GeomError, Result};

/// A facet of a full-dimensional polytope: an edge in 2-D, a polygon in 3-D.
#[derive(Clone, Debug)]
pub struct Facet {
    /// Outward unit normal.
    pub normal: Point,
    /// Support value `⟨normal, x⟩` for x on the facet.
    pub offset: f64,
    /// (n−1)-dimensional measure.
    pub area: f64,
    /// Vertex indices, counter-clockwise seen from outside (3-D) or in edge order (2-D).
    pub ring: Vec<usize>,
}

/// A compact convex set given by its vertices.
///
/// In dimension 2 and 3 the vertex list is irredundant (built by a hull) and
/// the facet structure is available. In other dimensions the polytope is a
/// vertex cloud whose convex hull is the body; only support evaluation and
/// linear images are meaningful there.
#[derive(Clone, Debug)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    affine_dim: Option<usize>,
    facets: Vec<Facet>,
    plane_normal: Option<Point>,
}

impl VPolytope {
    /// Convex hull of a point set in ℝ² or ℝ³.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(GeomError::EmptyPointSet)?;
        let dim = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, got: p.dim() });
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::InvalidParameter("non-finite coordinate".into()));
        }
        match dim {
            2 => Ok(Self::hull_2d(points)),
            3 => Ok(Self::hull_3d(points)),
            d => Err(GeomError::UnsupportedDimension(d)),
        }
    }

    /// Hull in dimension 2 or 3, vertex cloud otherwise.
    pub fn from_vertices(dim: usize, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(GeomError::EmptyPointSet);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, got: p.dim() });
        }
        if dim == 2 || dim == 3 {
            return Self::hull(&points);
        }
        let mut vertices: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if !vertices.contains(&p) {
                vertices.push(p);
            }
        }
        Ok(VPolytope { dim, vertices, affine_dim: None, facets: Vec::new(), plane_normal: None })
    }

    fn hull_2d(points: &[Point]) -> Self {
        let flat: Vec<[f64; 2]> = points.iter().map(|p| p.to2()).collect();
        let ring = hull2_indices(&flat);
        let vertices: Vec<Point> = ring.iter().map(|&i| points[i].clone()).collect();
        let affine_dim = match vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        };
        let mut facets = Vec::new();
        if affine_dim == 2 {
            let k = vertices.len();
            for i in 0..k {
                let a = &vertices[i];
                let b = &vertices[(i + 1) % k];
                let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                let len = dx.hypot(dy);
                let normal = Point(vec![dy / len, -dx / len]);
                let offset = 0.5 * (normal.dot(a.coords()) + normal.dot(b.coords()));
                facets.push(Facet { normal, offset, area: len, ring: vec![i, (i + 1) % k] });
            }
        }
        VPolytope { dim: 2, vertices, affine_dim: Some(affine_dim), facets, plane_normal: None }
    }

    fn hull_3d(points: &[Point]) -> Self {
        let pts: Vec<[f64; 3]> = points.iter().map(|p| p.to3()).collect();
        let h = hull3(&pts);
        let mut remap = vec![usize::MAX; pts.len()];
        let vertices: Vec<Point> = h
            .vertices
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                remap[i] = k;
                points[i].clone()
            })
            .collect();
        let mut facets = Vec::new();
        let mut plane_normal = None;
        if h.affine_dim == 3 {
            for ring in &h.facets {
                let (normal, area) = newell(ring.iter().map(|&i| pts[i]));
                let c = ring.iter().fold([0.0; 3], |acc, &i| [acc[0] + pts[i][0], acc[1] + pts[i][1], acc[2] + pts[i][2]]);
                let m = ring.len() as f64;
                let offset = dot3(normal, [c[0] / m, c[1] / m, c[2] / m]);
                facets.push(Facet {
                    normal: Point(normal.to_vec()),
                    offset,
                    area,
                    ring: ring.iter().map(|&i| remap[i]).collect(),
                });
            }
        } else if h.affine_dim == 2 {
            let (n, _) = newell(h.facets[0].iter().map(|&i| pts[i]));
            plane_normal = Some(Point(n.to_vec()));
        }
        VPolytope { dim: 3, vertices, affine_dim: Some(h.affine_dim), facets, plane_normal }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Affine dimension of the hull; `None` for vertex clouds outside ℝ²/ℝ³.
    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == Some(self.dim)
    }

    /// Facets of a full-dimensional polytope; empty otherwise.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Unit normal of the supporting plane of a planar polytope in ℝ³.
    pub fn plane_normal(&self) -> Option<&Point> {
        self.plane_normal.as_ref()
    }

    pub(crate) fn require_exact(&self) -> Result<()> {
        match self.affine_dim {
            Some(_) => Ok(()),
            None => Err(GeomError::UnsupportedDimension(self.dim)),
        }
    }

    /// Lebesgue measure; 0 for degenerate bodies and vertex clouds.
    pub fn volume(&self) -> f64 {
        if !self.is_full_dimensional() {
            return 0.0;
        }
        match self.dim {
            2 => {
                let k = self.vertices.len();
                let mut s = 0.0;
                for i in 0..k {
                    let a = &self.vertices[i];
                    let b = &self.vertices[(i + 1) % k];
                    s += a[0] * b[1] - a[1] * b[0];
                }
                0.5 * s
            }
            _ => self.facets.iter().map(|f| f.offset * f.area).sum::<f64>() / 3.0,
        }
    }

    /// Support function `max_{v} ⟨v, u⟩`.
    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(v.coords(), u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Center of mass for full-dimensional bodies, vertex mean otherwise.
    pub fn centroid(&self) -> Point {
        if self.is_full_dimensional() {
            match self.dim {
                2 => {
                    let k = self.vertices.len();
                    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
                    for i in 0..k {
                        let p = &self.vertices[i];
                        let q = &self.vertices[(i + 1) % k];
                        let w = p[0] * q[1] - p[1] * q[0];
                        a += w;
                        cx += (p[0] + q[0]) * w;
                        cy += (p[1] + q[1]) * w;
                    }
                    return Point(vec![cx / (3.0 * a), cy / (3.0 * a)]);
                }
                3 => {
                    let r = self.vertices[0].to3();
                    let (mut vol, mut c) = (0.0, [0.0; 3]);
                    for f in &self.facets {
                        let a = self.vertices[f.ring[0]].to3();
                        for w in f.ring[1..].windows(2) {
                            let b = self.vertices[w[0]].to3();
                            let d = self.vertices[w[1]].to3();
                            let v = dot3(sub3(a, r), cross(sub3(b, r), sub3(d, r))) / 6.0;
                            vol += v;
                            for k in 0..3 {
                                c[k] += v * (r[k] + a[k] + b[k] + d[k]) / 4.0;
                            }
                        }
                    }
                    return Point(vec![c[0] / vol, c[1] / vol, c[2] / vol]);
                }
                _ => {}
            }
        }
        let m = self.vertices.len() as f64;
        let mut c = vec![0.0; self.dim];
        for v in &self.vertices {
            for (ck, x) in c.iter_mut().zip(v.coords()) {
                *ck += x / m;
            }
        }
        Point(c)
    }

    /// Edges as vertex index pairs (2-D: ring edges, 3-D: facet ring edges, deduplicated).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        match (self.dim, self.affine_dim) {
            (_, Some(1)) => out.push((0, 1)),
            (2, Some(2)) => {
                let k = self.vertices.len();
                out.extend((0..k).map(|i| (i, (i + 1) % k)));
            }
            (3, Some(2)) => {
                let k = self.vertices.len();
                out.extend((0..k).map(|i| (i, (i + 1) % k)));
            }
            (3, Some(3)) => {
                for f in &self.facets {
                    let k = f.ring.len();
                    for i in 0..k {
                        let (a, b) = (f.ring[i], f.ring[(i + 1) % k]);
                        if a < b {
                            out.push((a, b));
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Image under an arbitrary point map, re-hulled.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<VPolytope> {
        let pts: Vec<Point> = self.vertices.iter().map(f).collect();
        let dim = pts[0].dim();
        VPolytope::from_vertices(dim, pts)
    }

    pub fn translate(&self, t: &[f64]) -> Result<VPolytope> {
        self.map_points(|v| Point(v.coords().iter().zip(t).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, s: f64) -> Result<VPolytope> {
        self.map_points(|v| v.scale(s))
    }

    /// Membership test against the facet inequalities (full-dimensional bodies only).
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset + tol)
    }

    /// Whether `−P = P` up to `tol` on the vertex sets.
    pub fn is_origin_symmetric(&self, tol: f64) -> bool {
        let scale = self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        self.vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| v.coords().iter().zip(w.coords()).all(|(a, b)| (a + b).abs() <= tol * scale)))
    }

    /// Largest distance from a vertex of either set to the nearest vertex of the other.
    pub fn vertex_set_distance(&self, other: &VPolytope) -> f64 {
        let one_way = |a: &[Point], b: &[Point]| {
            a.iter()
                .map(|p| b.iter().map(|q| p.dist(q)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        one_way(&self.vertices, &other.vertices).max(one_way(&other.vertices, &self.vertices))
    }
}

/// Unit normal and area of a planar polygon via Newell's method.
pub(crate) fn newell(ring: impl Iterator<Item = [f64; 3]> + Clone) -> ([f64; 3], f64) {
    let pts: Vec<[f64; 3]> = ring.collect();
    let k = pts.len();
    let mut n = [0.0; 3];
    for i in 0..k {
        let c = cross(pts[i], pts[(i + 1) % k]);
        for j in 0..3 {
            n[j] += c[j];
        }
    }
    let l = norm3(n);
    ([n[0] / l, n[1] / l, n[2] / l], 0.5 * l)
}

/// Area of the face of a point set in ℝ³ in direction `n` (unit), 0 unless 2-dimensional.
pub(crate) fn face_area(vertices: &[Point], n: [f64; 3], rel_tol: f64) -> f64 {
    let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let h = vertices.iter().map(|v| dot3(v.to3(), n)).fold(f64::NEG_INFINITY, f64::max);
    let face: Vec<[f64; 3]> = vertices.iter().map(|v| v.to3()).filter(|v| dot3(*v, n) >= h - rel_tol * scale).collect();
    if face.len() < 3 {
        return 0.0;
    }
    let (e1, e2) = plane_basis(n);
    let flat: Vec<[f64; 2]> = face.iter().map(|p| [dot3(e1, *p), dot3(e2, *p)]).collect();
    let ring = hull2_indices(&flat);
    if ring.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..ring.len() {
        let a = flat[ring[i]];
        let b = flat[ring[(i + 1) % ring.len()]];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s
}

/// Volume ω_n of the Euclidean unit ball.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// Regular polytope approximation of a centered ball, radially scaled to
/// have exactly the requested volume.
///
/// In 2-D `facets` is the number of edges of a regular polygon; in 3-D it
/// must be `20·4^k` (geodesic subdivision of the icosahedron).
pub fn ball_polytope(dim: usize, facets: usize, volume: f64) -> Result<VPolytope> {
    if !(volume > 0.0) {
        return Err(GeomError::InvalidParameter(format!("ball volume must be positive, got {volume}")));
    }
    let unit = match dim {
        2 => {
            if facets < 3 {
                return Err(GeomError::InvalidParameter("a ball polygon needs at least 3 edges".into()));
            }
            let pts: Vec<Point> = (0..facets)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / facets as f64;
                    Point(vec![t.cos(), t.sin()])
                })
                .collect();
            VPolytope::hull(&pts)?
        }
        3 => icosphere(facets)?,
        d => return Err(GeomError::UnsupportedDimension(d)),
    };
    let s = (volume / unit.volume()).powf(1.0 / dim as f64);
    unit.scale(s)
}

fn icosphere(facets: usize) -> Result<VPolytope> {
    let mut level = None;
    let mut f = 20;
    for k in 0..8 {
        if f == facets {
            level = Some(k);
            break;
        }
        f *= 4;
    }
    let level = level.ok_or_else(|| GeomError::InvalidParameter(format!("3-D ball facet count must be 20·4^k, got {facets}")))?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts: Vec<[f64; 3]> = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-phi, phi] {
            pts.push([0.0, a, b]);
            pts.push([a, b, 0.0]);
            pts.push([b, 0.0, a]);
        }
    }
    let normalize = |p: [f64; 3]| {
        let l = norm3(p);
        [p[0] / l, p[1] / l, p[2] / l]
    };
    let mut pts: Vec<[f64; 3]> = pts.into_iter().map(normalize).collect();
    let mut tris: Vec<[usize; 3]> = {
        let poly = VPolytope::hull(&pts.iter().map(|p| Point(p.to_vec())).collect::<Vec<_>>())?;
        pts = poly.vertices().iter().map(|v| v.to3()).collect();
        poly.facets().iter().map(|f| [f.ring[0], f.ring[1], f.ring[2]]).collect()
    };
    for _ in 0..level {
        let mut mid: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let mut m = [0usize; 3];
            for k in 0..3 {
                let (a, b) = (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]));
                m[k] = *mid.entry((a, b)).or_insert_with(|| {
                    let p = normalize([pts[a][0] + pts[b][0], pts[a][1] + pts[b][1], pts[a][2] + pts[b][2]]);
                    pts.push(p);
                    pts.len() - 1
                });
            }
            next.push([t[0], m[0], m[2]]);
            next.push([t[1], m[1], m[0]]);
            next.push([t[2], m[2], m[1]]);
            next.push([m[0], m[1], m[2]]);
        }
        tris = next;
    }
    VPolytope::hull(&pts.iter().map(|p| Point(p.to_vec())).collect::<Vec<_>>())
}
