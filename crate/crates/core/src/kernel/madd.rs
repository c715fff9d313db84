//! M-addition of origin-symmetric bodies.

use super::sphere::{circle_grid, fibonacci_sphere};
use super::{minkowski_sum, Point, VPolytope};
use crate::{GeomError, Result};

const SYM_TOL: f64 = 1e-9;

/// Default boundary point count for the B_q approximation.
pub fn default_lp_vertices(m: usize) -> usize {
    if m <= 2 {
        256
    } else {
        1024
    }
}

#[derive(Clone, Debug)]
pub enum MKind {
    Minkowski,
    /// `vertices = None` selects the default count for the number of bodies.
    Lp { p: f64, vertices: Option<usize> },
    PolytopeM(VPolytope),
}

/// Combination rule for [`m_add`]. A `PolytopeM` body is checked for
/// invariance under coordinate sign flips on construction.
#[derive(Clone, Debug)]
pub struct MSpec {
    kind: MKind,
}

impl MSpec {
    pub fn minkowski() -> Self {
        MSpec { kind: MKind::Minkowski }
    }

    pub fn lp(p: f64) -> Result<Self> {
        Self::lp_inner(p, None)
    }

    pub fn lp_with_vertices(p: f64, vertices: usize) -> Result<Self> {
        if vertices < 4 {
            return Err(GeomError::InvalidParameter(format!("B_q approximation needs at least 4 points, got {vertices}")));
        }
        Self::lp_inner(p, Some(vertices))
    }

    fn lp_inner(p: f64, vertices: Option<usize>) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(GeomError::InvalidParameter(format!("lp addition needs p >= 1, got {p}")));
        }
        Ok(MSpec { kind: MKind::Lp { p, vertices } })
    }

    pub fn polytope_m(m: VPolytope) -> Result<Self> {
        if !is_unconditional(&m) {
            return Err(GeomError::NotUnconditional);
        }
        Ok(MSpec { kind: MKind::PolytopeM(m) })
    }

    pub fn kind(&self) -> &MKind {
        &self.kind
    }
}

fn is_unconditional(m: &VPolytope) -> bool {
    let verts = m.vertices();
    let scale = verts.iter().map(|v| v.norm()).fold(1.0, f64::max);
    verts.iter().all(|v| {
        (0..m.dim()).all(|i| {
            let mut f = v.clone();
            f.0[i] = -f.0[i];
            verts.iter().any(|w| w.dist(&f) <= SYM_TOL * scale)
        })
    })
}

/// Points on the unit sphere of `ℓ_r^m`. Exact vertex sets for `r ∈ {1, ∞}`;
/// otherwise `d` normalized directions (m ∈ {2, 3}).
pub fn lp_sphere_points(m: usize, r: f64, d: usize) -> Result<Vec<Point>> {
    if r.is_infinite() {
        return Ok((0..1usize << m)
            .map(|mask| Point((0..m).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect()))
            .collect());
    }
    if r == 1.0 {
        let mut out = Vec::with_capacity(2 * m);
        for i in 0..m {
            out.push(Point::basis(m, i));
            out.push(-&Point::basis(m, i));
        }
        return Ok(out);
    }
    let dirs = match m {
        1 => vec![Point(vec![1.0]), Point(vec![-1.0])],
        2 => circle_grid(d, 0.0),
        3 => fibonacci_sphere(d),
        _ => return Err(GeomError::UnsupportedDimension(m)),
    };
    Ok(dirs
        .into_iter()
        .map(|u| {
            let n = u.0.iter().map(|x| x.abs().powf(r)).sum::<f64>().powf(1.0 / r);
            u.scale(1.0 / n)
        })
        .collect())
}

/// `⊕_M(K_1, …, K_m)`.
pub fn m_add(spec: &MSpec, bodies: &[VPolytope]) -> Result<VPolytope> {
    let first = bodies.first().ok_or(GeomError::EmptyPointSet)?;
    for b in bodies {
        if b.dim() != first.dim() {
            return Err(GeomError::DimensionMismatch { expected: first.dim(), got: b.dim() });
        }
    }
    match &spec.kind {
        MKind::Minkowski => {
            let mut acc = first.clone();
            for b in &bodies[1..] {
                acc = minkowski_sum(&acc, b)?;
            }
            Ok(acc)
        }
        MKind::Lp { p, vertices } => {
            let m = bodies.len();
            let q = if *p == 1.0 { f64::INFINITY } else if p.is_infinite() { 1.0 } else { p / (p - 1.0) };
            let d = vertices.unwrap_or_else(|| default_lp_vertices(m));
            let coeffs = lp_sphere_points(m, q, d)?;
            combine(&coeffs, bodies)
        }
        MKind::PolytopeM(mb) => {
            if mb.dim() != bodies.len() {
                return Err(GeomError::DimensionMismatch { expected: mb.dim(), got: bodies.len() });
            }
            combine(mb.vertices(), bodies)
        }
    }
}

fn combine(coeffs: &[Point], bodies: &[VPolytope]) -> Result<VPolytope> {
    if bodies.iter().any(|b| !b.is_origin_symmetric(SYM_TOL)) {
        return Err(GeomError::NotSymmetric);
    }
    // bodies are symmetric, so only |a| matters
    let mut abs: Vec<Vec<f64>> = coeffs.iter().map(|a| a.0.iter().map(|x| x.abs()).collect()).collect();
    abs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    abs.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= 1e-15));
    let dim = bodies[0].dim();
    let mut pts = Vec::new();
    for a in &abs {
        let mut acc: Option<VPolytope> = None;
        for (k, b) in bodies.iter().enumerate() {
            if a[k] == 0.0 {
                continue;
            }
            let s = b.scale(a[k])?;
            acc = Some(match acc {
                None => s,
                Some(prev) => minkowski_sum(&prev, &s)?,
            });
        }
        match acc {
            Some(p) => pts.extend_from_slice(p.vertices()),
            None => pts.push(Point::zeros(dim)),
        }
    }
    VPolytope::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[[f64; 2]]) -> VPolytope {
        VPolytope::hull(&v.iter().map(|&c| Point::from(c)).collect::<Vec<_>>()).unwrap()
    }

    fn seg(a: [f64; 2]) -> VPolytope {
        poly(&[a, [-a[0], -a[1]]])
    }

    fn square(h: f64) -> VPolytope {
        poly(&[[-h, -h], [h, -h], [h, h], [-h, h]])
    }

    #[test]
    fn endpoints() {
        let a = square(1.0);
        let b = poly(&[[2.0, 0.0], [0.0, 0.5], [-2.0, 0.0], [0.0, -0.5]]);
        let sum = m_add(&MSpec::lp(1.0).unwrap(), &[a.clone(), b.clone()]).unwrap();
        assert!(sum.vertex_set_distance(&minkowski_sum(&a, &b).unwrap()) < 1e-12);
        let union = m_add(&MSpec::lp(f64::INFINITY).unwrap(), &[a.clone(), b.clone()]).unwrap();
        let mut pts = a.vertices().to_vec();
        pts.extend_from_slice(b.vertices());
        assert!(union.vertex_set_distance(&VPolytope::hull(&pts).unwrap()) < 1e-12);
        let m = MSpec::polytope_m(square(1.0)).unwrap();
        assert!(m_add(&m, &[a.clone(), b.clone()]).unwrap().vertex_set_distance(&sum) < 1e-12);
        let mink = m_add(&MSpec::minkowski(), &[a, b]).unwrap();
        assert!(mink.vertex_set_distance(&sum) < 1e-12);
    }

    #[test]
    fn l2_sum_of_segments() {
        let r = m_add(&MSpec::lp(2.0).unwrap(), &[seg([1.0, 0.0]), seg([0.0, 1.0])]).unwrap();
        for u in circle_grid(97, 0.1) {
            let want = (u[0] * u[0] + u[1] * u[1]).sqrt();
            let got = r.support(u.coords());
            assert!(got <= want + 1e-12 && got >= want * (1.0 - 1e-3), "{got} {want}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let tri = poly(&[[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]);
        assert!(matches!(m_add(&MSpec::lp(2.0).unwrap(), &[tri.clone(), tri]), Err(GeomError::NotSymmetric)));
        let skew = poly(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(MSpec::polytope_m(skew), Err(GeomError::NotUnconditional)));
        assert!(MSpec::lp(0.5).is_err());
    }

    #[test]
    fn polytope_m_monotone() {
        let a = seg([1.0, 0.2]);
        let b = square(0.5);
        let small = m_add(&MSpec::polytope_m(poly(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])).unwrap(), &[a.clone(), b.clone()]).unwrap();
        let big = m_add(&MSpec::polytope_m(square(1.0)).unwrap(), &[a, b]).unwrap();
        for u in circle_grid(64, 0.0) {
            assert!(small.support(u.coords()) <= big.support(u.coords()) + 1e-12);
        }
    }
}
