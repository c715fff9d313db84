//! Projection bodies, polar radial measures and centroid bodies.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::kernel::sphere::directions;
use crate::kernel::{cross, polar, unit_ball_volume, zonotope_to_vpolytope, Body, Point, Support, VPolytope, Zonotope};
use crate::mixed::{facets, mixed_area_measure, surface_measure};
use crate::numeric::{pairwise_sum, simpson};
use crate::{GeomError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Zonotope,
    MixedProjection,
    Centroid,
    Explicit,
}

#[derive(Clone)]
enum Repr {
    Zonotope(Zonotope),
    Func(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
}

/// A body known through its support function.
#[derive(Clone)]
pub struct SupportEvaluator {
    dim: usize,
    provenance: Provenance,
    repr: Repr,
}

impl fmt::Debug for SupportEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SupportEvaluator").field("dim", &self.dim).field("provenance", &self.provenance).finish()
    }
}

impl SupportEvaluator {
    pub fn from_zonotope(z: Zonotope) -> Self {
        SupportEvaluator { dim: z.dim(), provenance: Provenance::Zonotope, repr: Repr::Zonotope(z) }
    }

    pub fn explicit(dim: usize, h: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        SupportEvaluator { dim, provenance: Provenance::Explicit, repr: Repr::Func(Arc::new(h)) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Underlying zonotope when the body is one.
    pub fn zonotope(&self) -> Option<&Zonotope> {
        match &self.repr {
            Repr::Zonotope(z) => Some(z),
            Repr::Func(_) => None,
        }
    }

    #[inline]
    pub fn eval(&self, u: &[f64]) -> f64 {
        match &self.repr {
            Repr::Zonotope(z) => z.support(u),
            Repr::Func(f) => f(u),
        }
    }
}

impl Support for SupportEvaluator {
    fn dim(&self) -> usize {
        self.dim
    }
    fn support(&self, u: &[f64]) -> f64 {
        self.eval(u)
    }
}

/// `ΠK` as the zonotope with generators `(area(F)/2)·n_F`.
pub fn projection_body(k: &VPolytope) -> Result<Zonotope> {
    let gens = facets(k)?.into_iter().map(|f| f.normal.scale(0.5 * f.area)).collect();
    Zonotope::new(k.dim(), gens)
}

/// `ΠB` for a possibly lower-dimensional polytope or a zonotope.
///
/// A zonotope `Σ[−g_i, g_i]` has `ΠZ` generated by `2·Jg_i` in the plane
/// (`J` the quarter turn) and by `4·(g_i × g_j)`, `i < j`, in space.
pub fn projection_zonotope(body: &Body) -> Result<Zonotope> {
    match body {
        Body::Polytope(p) => {
            let gens = surface_measure(p)?.into_iter().map(|a| a.normal.scale(0.5 * a.weight)).collect();
            Zonotope::new(p.dim(), gens)
        }
        Body::Zonotope(z) => {
            let g = z.simplified();
            let g = g.generators();
            match z.dim() {
                2 => Zonotope::new(2, g.iter().map(|v| Point(vec![-2.0 * v[1], 2.0 * v[0]])).collect()),
                3 => {
                    let mut gens = Vec::with_capacity(g.len() * g.len().saturating_sub(1) / 2);
                    for i in 0..g.len() {
                        for j in i + 1..g.len() {
                            let c = cross(g[i].to3(), g[j].to3());
                            gens.push(Point(vec![4.0 * c[0], 4.0 * c[1], 4.0 * c[2]]));
                        }
                    }
                    Zonotope::new(3, gens)
                }
                d => Err(GeomError::UnsupportedDimension(d)),
            }
        }
    }
}

/// Mixed projection body of polytope or zonotope arguments. Two zonotopes
/// in space give generators `2·(a_i × b_j)`; other zonotope arguments are
/// converted to vertex form.
pub fn mixed_projection_of(bodies: &[Body]) -> Result<SupportEvaluator> {
    if bodies.len() == 1 {
        let z = projection_zonotope(&bodies[0])?;
        return Ok(SupportEvaluator { dim: z.dim(), provenance: Provenance::MixedProjection, repr: Repr::Zonotope(z) });
    }
    if let [Body::Zonotope(a), Body::Zonotope(b)] = bodies {
        if a.dim() != 3 || b.dim() != 3 {
            return Err(GeomError::DimensionMismatch { expected: 3, got: a.dim().min(b.dim()) });
        }
        let (a, b) = (a.simplified(), b.simplified());
        let mut gens = Vec::with_capacity(a.generators().len() * b.generators().len());
        for x in a.generators() {
            for y in b.generators() {
                let c = cross(x.to3(), y.to3());
                gens.push(Point(vec![2.0 * c[0], 2.0 * c[1], 2.0 * c[2]]));
            }
        }
        return Ok(SupportEvaluator { dim: 3, provenance: Provenance::MixedProjection, repr: Repr::Zonotope(Zonotope::new(3, gens)?) });
    }
    let polys: Vec<VPolytope> = bodies.iter().map(|b| b.to_vpolytope()).collect::<Result<_>>()?;
    mixed_projection_support(&polys)
}

/// Support of the mixed projection body `Π(K_1, …, K_{n−1})`. The body is a
/// zonotope whose generators are half the atoms of the mixed area measure.
pub fn mixed_projection_support(bodies: &[VPolytope]) -> Result<SupportEvaluator> {
    let n = bodies.first().ok_or(GeomError::EmptyPointSet)?.dim();
    let gens = mixed_area_measure(bodies)?.into_iter().map(|a| a.normal.scale(0.5 * a.weight)).collect();
    Ok(SupportEvaluator { dim: n, provenance: Provenance::MixedProjection, repr: Repr::Zonotope(Zonotope::new(n, gens)?) })
}

/// Radial measure with a nonincreasing density `ρ(|x|)`.
#[derive(Clone)]
pub enum RadialMeasure {
    Lebesgue,
    /// Standard normal distribution scaled by `sigma`.
    Gaussian { sigma: f64 },
    /// Lebesgue measure restricted to the centered ball of the given radius.
    Ball { radius: f64 },
    /// Density `rho`, taken to vanish beyond `cutoff`.
    Custom { rho: Arc<dyn Fn(f64) -> f64 + Send + Sync>, cutoff: f64 },
}

impl fmt::Debug for RadialMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialMeasure::Lebesgue => write!(f, "Lebesgue"),
            RadialMeasure::Gaussian { sigma } => write!(f, "Gaussian {{ sigma: {sigma} }}"),
            RadialMeasure::Ball { radius } => write!(f, "Ball {{ radius: {radius} }}"),
            RadialMeasure::Custom { cutoff, .. } => write!(f, "Custom {{ cutoff: {cutoff} }}"),
        }
    }
}

const CUSTOM_GRID: usize = 1024;

impl RadialMeasure {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(GeomError::InvalidParameter(format!("gaussian sigma must be positive, got {sigma}")));
        }
        Ok(RadialMeasure::Gaussian { sigma })
    }

    pub fn ball(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidParameter(format!("ball radius must be positive, got {radius}")));
        }
        Ok(RadialMeasure::Ball { radius })
    }

    /// Custom density; rejected unless nonnegative and nonincreasing on a grid over `[0, cutoff]`.
    pub fn custom(rho: impl Fn(f64) -> f64 + Send + Sync + 'static, cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(GeomError::InvalidParameter(format!("density cutoff must be positive and finite, got {cutoff}")));
        }
        let mut prev = f64::INFINITY;
        for k in 0..=CUSTOM_GRID {
            let v = rho(cutoff * k as f64 / CUSTOM_GRID as f64);
            if !(v >= 0.0) || v > prev * (1.0 + 1e-12) {
                return Err(GeomError::InvalidParameter("radial density must be nonnegative and nonincreasing".into()));
            }
            prev = v;
        }
        Ok(RadialMeasure::Custom { rho: Arc::new(rho), cutoff })
    }

    pub fn is_lebesgue(&self) -> bool {
        matches!(self, RadialMeasure::Lebesgue)
    }

    /// `∫_0^R ρ(r) r^{n−1} dr`; `R` may be infinite for finite measures.
    pub fn radial_integral(&self, n: usize, r: f64) -> f64 {
        let nf = n as f64;
        match self {
            RadialMeasure::Lebesgue => r.powi(n as i32) / nf,
            RadialMeasure::Ball { radius } => r.min(*radius).powi(n as i32) / nf,
            RadialMeasure::Gaussian { sigma } => {
                let s = r / sigma;
                match n {
                    2 => (1.0 - (-0.5 * s * s).exp()) / (2.0 * PI),
                    3 => {
                        let tail = if s.is_finite() { s * (-0.5 * s * s).exp() } else { 0.0 };
                        ((PI / 2.0).sqrt() * libm::erf(s / 2f64.sqrt()) - tail) / (2.0 * PI).powf(1.5)
                    }
                    _ => {
                        let cap = r.min(40.0 * sigma);
                        let c = (2.0 * PI * sigma * sigma).powf(-nf / 2.0);
                        c * simpson(|t| (-0.5 * (t / sigma).powi(2)).exp() * t.powi(n as i32 - 1), 0.0, cap, 4096)
                    }
                }
            }
            RadialMeasure::Custom { rho, cutoff } => {
                let cap = r.min(*cutoff);
                simpson(|t| rho(t) * t.powi(n as i32 - 1), 0.0, cap, CUSTOM_GRID)
            }
        }
    }
}

/// Sphere quadrature settings; `nodes = None` selects 4096 (n = 2) or 8192 (n = 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    #[serde(default)]
    pub nodes: Option<usize>,
    /// Recompute with doubled nodes and fail above 1e−4 relative change.
    #[serde(default)]
    pub certify: bool,
}

pub const CERTIFY_REL_TOL: f64 = 1e-4;

impl QuadratureSpec {
    pub fn with_nodes(nodes: usize) -> Self {
        QuadratureSpec { nodes: Some(nodes), certify: false }
    }

    pub fn certified(self) -> Self {
        QuadratureSpec { certify: true, ..self }
    }

    pub fn node_count(&self, n: usize) -> usize {
        self.nodes.unwrap_or(if n == 2 { 4096 } else { 8192 })
    }
}

/// Quadrature nodes with equal weights summing to the sphere measure.
fn nodes(n: usize, count: usize) -> (Vec<Point>, f64) {
    match n {
        2 => (crate::kernel::sphere::circle_grid(count, PI / count as f64), 2.0 * PI / count as f64),
        _ => (directions(3, count), 4.0 * PI / count as f64),
    }
}

/// `ν({x : h(x) ≤ 1})` in polar coordinates.
pub fn polar_measure<S: Support + Sync + ?Sized>(h: &S, nu: &RadialMeasure, quad: &QuadratureSpec) -> Result<f64> {
    let n = h.dim();
    if n != 2 && n != 3 {
        return Err(GeomError::UnsupportedDimension(n));
    }
    let count = quad.node_count(n);
    let value = polar_measure_nodes(h, nu, n, count)?;
    if quad.certify {
        let fine = polar_measure_nodes(h, nu, n, 2 * count)?;
        let rel = (fine - value).abs() / fine.abs().max(f64::MIN_POSITIVE);
        if rel > CERTIFY_REL_TOL {
            return Err(GeomError::QuadratureNotCertified { rel });
        }
        return Ok(fine);
    }
    Ok(value)
}

/// Polar measure of a zonotope. Rank-deficient zonotopes have unbounded
/// polars, which is an error for Lebesgue measure.
pub fn zonotope_polar_measure(z: &Zonotope, nu: &RadialMeasure, quad: &QuadratureSpec) -> Result<f64> {
    if nu.is_lebesgue() && z.rank() < z.dim() {
        return Err(GeomError::UnboundedPolar);
    }
    polar_measure(z, nu, quad)
}

fn polar_measure_nodes<S: Support + Sync + ?Sized>(h: &S, nu: &RadialMeasure, n: usize, count: usize) -> Result<f64> {
    let (pts, w) = nodes(n, count);
    let vals: Vec<f64> = pts
        .par_iter()
        .with_min_len(512)
        .map(|u| {
            let hu = h.support(u.coords());
            let r = if hu > 0.0 { 1.0 / hu } else { f64::INFINITY };
            nu.radial_integral(n, r)
        })
        .collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::UnboundedPolar);
    }
    Ok(w * pairwise_sum(&vals))
}

/// Centroid body support `h_{Z(L)}(u) = (1/|L|) ∫_L |⟨x, u⟩| dx`, evaluated
/// exactly by clipping `L` with the halfspace `⟨x, u⟩ ≥ 0`.
pub fn centroid_body_support(l: &VPolytope) -> Result<SupportEvaluator> {
    facets(l)?;
    let body = l.clone();
    let vol = l.volume();
    let c = l.centroid();
    let h = move |u: &[f64]| {
        let (vpos, cpos) = positive_part(&body, u);
        (2.0 * vpos * cpos.dot(u) - vol * c.dot(u)) / vol
    };
    Ok(SupportEvaluator { dim: l.dim(), provenance: Provenance::Centroid, repr: Repr::Func(Arc::new(h)) })
}

/// Volume and centroid of `L ∩ {⟨x, u⟩ ≥ 0}`.
fn positive_part(l: &VPolytope, u: &[f64]) -> (f64, Point) {
    let verts = l.vertices();
    let vals: Vec<f64> = verts.iter().map(|v| v.dot(u)).collect();
    let mut pts: Vec<Point> = verts.iter().zip(&vals).filter(|(_, &s)| s >= 0.0).map(|(v, _)| v.clone()).collect();
    for (a, b) in l.edges() {
        let (sa, sb) = (vals[a], vals[b]);
        if (sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0) {
            let t = sa / (sa - sb);
            pts.push(&verts[a] + &(&verts[b] - &verts[a]).scale(t));
        }
    }
    match VPolytope::hull(&pts) {
        Ok(p) if p.is_full_dimensional() => (p.volume(), p.centroid()),
        _ => (0.0, Point::zeros(l.dim())),
    }
}

/// `Z_m` of a sample: generators `X_i / m`.
pub fn empirical_centroid_body(samples: &[Point]) -> Result<Zonotope> {
    let first = samples.first().ok_or(GeomError::EmptyPointSet)?;
    let m = samples.len() as f64;
    Zonotope::new(first.dim(), samples.iter().map(|x| x.scale(1.0 / m)).collect())
}

/// `|Π°K| · |K|^{n−1}` through sphere quadrature.
pub fn petty_product(k: &VPolytope, quad: &QuadratureSpec) -> Result<f64> {
    let pi = projection_body(k)?;
    let n = k.dim();
    Ok(zonotope_polar_measure(&pi, &RadialMeasure::Lebesgue, quad)? * k.volume().powi(n as i32 - 1))
}

/// `|Π°K| · |K|^{n−1}` through the explicit polar polytope.
pub fn petty_product_exact(k: &VPolytope) -> Result<f64> {
    let n = k.dim();
    let pi = zonotope_to_vpolytope(&projection_body(k)?)?;
    Ok(polar(&pi)?.volume() * k.volume().powi(n as i32 - 1))
}

/// Value of the Petty functional on Euclidean balls, `(ω_n/ω_{n−1})ⁿ`.
pub fn petty_ball_value(n: usize) -> f64 {
    (unit_ball_volume(n) / unit_ball_volume(n - 1)).powi(n as i32)
}
