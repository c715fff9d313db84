//! Mixed volumes, surface data and mixed area measures of polytopes.

use crate::kernel::polytope_face_area as face_area;
use crate::kernel::{minkowski_sum, Body, Point, Support, VPolytope};
use crate::symmetrization::ShadowSystem;
use crate::{GeomError, Result};

/// One facet of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetData {
    pub normal: Point,
    /// (n−1)-dimensional measure.
    pub area: f64,
    pub offset: f64,
}

/// A point mass `weight · δ_normal` of a (mixed) surface area measure.
#[derive(Clone, Debug, PartialEq)]
pub struct AreaAtom {
    pub normal: Point,
    pub weight: f64,
}

const FACE_TOL: f64 = 1e-9;

fn check_exact_dim(p: &VPolytope) -> Result<()> {
    match p.dim() {
        2 | 3 => Ok(()),
        d => Err(GeomError::UnsupportedDimension(d)),
    }
}

pub fn facets(p: &VPolytope) -> Result<Vec<FacetData>> {
    check_exact_dim(p)?;
    if !p.is_full_dimensional() {
        return Err(GeomError::Degenerate("facets need a full-dimensional body"));
    }
    Ok(p.facets()
        .iter()
        .map(|f| FacetData { normal: f.normal.clone(), area: f.area, offset: f.offset })
        .collect())
}

pub fn surface_area(p: &VPolytope) -> Result<f64> {
    Ok(facets(p)?.iter().map(|f| f.area).sum())
}

/// Surface area measure. A body of codimension one has two atoms of equal
/// weight on its two sides; lower-dimensional bodies have the zero measure.
pub fn surface_measure(p: &VPolytope) -> Result<Vec<AreaAtom>> {
    check_exact_dim(p)?;
    let n = p.dim();
    if p.is_full_dimensional() {
        return Ok(p.facets().iter().map(|f| AreaAtom { normal: f.normal.clone(), weight: f.area }).collect());
    }
    if p.affine_dim() != Some(n - 1) {
        return Ok(Vec::new());
    }
    let (normal, weight) = if n == 2 {
        let v = p.vertices();
        let d = &v[1] - &v[0];
        let len = d.norm();
        (Point(vec![d[1] / len, -d[0] / len]), len)
    } else {
        let normal = p.plane_normal().expect("planar body has a normal").clone();
        let w = face_area(p.vertices(), normal.to3(), FACE_TOL);
        (normal, w)
    };
    Ok(vec![AreaAtom { normal: -&normal, weight }, AreaAtom { normal, weight }])
}

/// Mixed area measure `S(K_1, …, K_{n−1}; ·)` of `n − 1` polytopes in ℝⁿ, so
/// that `V(K_1, …, K_{n−1}, L) = (1/n) Σ weight · h_L(normal)`.
pub fn mixed_area_measure(bodies: &[VPolytope]) -> Result<Vec<AreaAtom>> {
    let first = bodies.first().ok_or(GeomError::EmptyPointSet)?;
    let n = first.dim();
    check_exact_dim(first)?;
    for b in bodies {
        if b.dim() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: b.dim() });
        }
    }
    if bodies.len() != n - 1 {
        return Err(GeomError::DimensionMismatch { expected: n - 1, got: bodies.len() });
    }
    if n == 2 {
        return surface_measure(first);
    }
    let (a, b) = (&bodies[0], &bodies[1]);
    let sum = minkowski_sum(a, b)?;
    let atoms = surface_measure(&sum)?;
    Ok(atoms
        .into_iter()
        .filter_map(|atom| {
            let u = atom.normal.to3();
            let w = 0.5 * (atom.weight - face_area(a.vertices(), u, FACE_TOL) - face_area(b.vertices(), u, FACE_TOL));
            (w > 0.0).then_some(AreaAtom { normal: atom.normal, weight: w })
        })
        .collect())
}

fn integrate_support<S: Support + ?Sized>(atoms: &[AreaAtom], l: &S, n: usize) -> f64 {
    atoms.iter().map(|a| a.weight * l.support(a.normal.coords())).sum::<f64>() / n as f64
}

/// `V(K_1, …, K_n)` by inclusion–exclusion over Minkowski sums.
pub fn mixed_volume(bodies: &[VPolytope]) -> Result<f64> {
    let n = bodies.len();
    let first = bodies.first().ok_or(GeomError::EmptyPointSet)?;
    for b in bodies {
        if b.dim() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: b.dim() });
        }
    }
    check_exact_dim(first)?;
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut acc: Option<VPolytope> = None;
        for (i, b) in bodies.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(s) => minkowski_sum(&s, b)?,
                });
            }
        }
        let vol = acc.expect("non-empty subset").volume();
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
        total += sign * vol;
    }
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    Ok(total / fact)
}

/// Mixed volume of polytope or zonotope arguments. A zonotope argument is
/// integrated against the mixed area measure of the others.
pub fn mixed_volume_bodies(bodies: &[Body]) -> Result<f64> {
    let Some(zi) = bodies.iter().position(|b| matches!(b, Body::Zonotope(_))) else {
        let polys: Vec<VPolytope> = bodies.iter().map(|b| b.to_vpolytope()).collect::<Result<_>>()?;
        return mixed_volume(&polys);
    };
    let n = bodies.len();
    for b in bodies {
        if b.dim() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: b.dim() });
        }
    }
    let rest: Vec<VPolytope> = bodies
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != zi)
        .map(|(_, b)| b.to_vpolytope())
        .collect::<Result<_>>()?;
    let atoms = mixed_area_measure(&rest)?;
    Ok(integrate_support(&atoms, &bodies[zi], n))
}

/// `V_1(K, L) = V(K, …, K, L)`.
pub fn v1(k: &VPolytope, l: &Body) -> Result<f64> {
    let n = k.dim();
    if l.dim() != n {
        return Err(GeomError::DimensionMismatch { expected: n, got: l.dim() });
    }
    match l {
        Body::Polytope(p) => {
            let mut args = vec![k.clone(); n - 1];
            args.push(p.clone());
            mixed_volume(&args)
        }
        Body::Zonotope(z) => Ok(integrate_support(&surface_measure(k)?, z, n)),
    }
}

/// `V(K_1, …, K_{n−1}, [0, y])`.
pub fn mixed_volume_with_segment(bodies: &[VPolytope], y: &Point) -> Result<f64> {
    let n = bodies.len() + 1;
    if y.dim() != n {
        return Err(GeomError::DimensionMismatch { expected: n, got: y.dim() });
    }
    let seg = VPolytope::hull(&[Point::zeros(n), y.clone()])?;
    let mut args = bodies.to_vec();
    args.push(seg);
    mixed_volume(&args)
}

/// `t ↦ V(K_t^1, …, K_t^n)` for linear parameter systems.
pub fn shadow_convexity_probe(systems: &[ShadowSystem], t: f64) -> Result<f64> {
    let bodies: Vec<VPolytope> = systems.iter().map(|s| s.at(t)).collect::<Result<_>>()?;
    mixed_volume(&bodies)
}
