//! Steiner symmetrization, rearrangement and shadow systems.

use std::collections::BTreeSet;

use rand::Rng;

use crate::harness::estimate::{estimate, EstimateWithCI};
use crate::kernel::{ball_polytope, dot3, plane_basis, Point, VPolytope};
use crate::stochastic::{default_ball_facets, Density, RngStream};
use crate::{GeomError, Result};

/// Linear parameter system `K_t = conv{x_i + α_i t u}`.
#[derive(Clone, Debug)]
pub struct ShadowSystem {
    base: Vec<Point>,
    speeds: Vec<f64>,
    direction: Point,
}

impl ShadowSystem {
    pub fn new(base: Vec<Point>, speeds: Vec<f64>, direction: Point) -> Result<Self> {
        if base.is_empty() {
            return Err(GeomError::EmptyPointSet);
        }
        if base.len() != speeds.len() {
            return Err(GeomError::DimensionMismatch { expected: base.len(), got: speeds.len() });
        }
        let n = direction.dim();
        if let Some(p) = base.iter().find(|p| p.dim() != n) {
            return Err(GeomError::DimensionMismatch { expected: n, got: p.dim() });
        }
        if speeds.iter().any(|s| !s.is_finite()) {
            return Err(GeomError::InvalidParameter("non-finite shadow speed".into()));
        }
        Ok(ShadowSystem { base, speeds, direction })
    }

    pub fn base(&self) -> &[Point] {
        &self.base
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    pub fn direction(&self) -> &Point {
        &self.direction
    }

    /// `K_t`.
    pub fn at(&self, t: f64) -> Result<VPolytope> {
        let pts: Vec<Point> = self
            .base
            .iter()
            .zip(&self.speeds)
            .map(|(x, a)| x + &self.direction.scale(a * t))
            .collect();
        VPolytope::hull(&pts)
    }
}

pub fn shadow_at(s: &ShadowSystem, t: f64) -> Result<VPolytope> {
    s.at(t)
}

fn unit(u: &Point) -> Result<Point> {
    let l = u.norm();
    if !(l > 0.0) || !l.is_finite() {
        return Err(GeomError::InvalidParameter("direction must be a nonzero finite vector".into()));
    }
    Ok(u.scale(1.0 / l))
}

/// Upper and lower boundary profiles of a body along a direction `u`:
/// the chord through `x ∈ u⊥` is `{x + λu : lower(x) ≤ λ ≤ upper(x)}`.
#[derive(Clone, Debug)]
pub struct ChordFunctions {
    direction: Point,
    /// `(normal, offset, ⟨normal, u⟩)` of non-vertical facets.
    caps: Vec<(Point, f64, f64)>,
    /// Points of `u⊥` where the profiles may break.
    breakpoints: Vec<Point>,
}

const VERTICAL_EPS: f64 = 1e-12;

/// Cap on profile breakpoints of a 3-D body; exact symmetrals gain vertices quickly under iteration.
pub const MAX_BREAKPOINTS: usize = 20_000;

impl ChordFunctions {
    pub fn new(k: &VPolytope, u: &Point) -> Result<Self> {
        if k.dim() != 2 && k.dim() != 3 {
            return Err(GeomError::UnsupportedDimension(k.dim()));
        }
        if u.dim() != k.dim() {
            return Err(GeomError::DimensionMismatch { expected: k.dim(), got: u.dim() });
        }
        if !k.is_full_dimensional() {
            return Err(GeomError::Degenerate("Steiner symmetrization needs a full-dimensional body"));
        }
        let u = unit(u)?;
        let caps = k
            .facets()
            .iter()
            .filter_map(|f| {
                let s = f.normal.dot(u.coords());
                (s.abs() > VERTICAL_EPS).then(|| (f.normal.clone(), f.offset, s))
            })
            .collect();
        let project = |v: &Point| v - &u.scale(v.dot(u.coords()));
        let mut breakpoints: Vec<Point> = k.vertices().iter().map(project).collect();
        if k.dim() == 3 {
            let (e1, e2) = plane_basis(u.to3());
            let flat = |p: &Point| [dot3(e1, p.to3()), dot3(e2, p.to3())];
            let verts: Vec<[f64; 2]> = k.vertices().iter().map(flat).collect();
            // Interior kinks of the profiles lie on projected edges of the upper or the lower
            // surface; within one surface the projected edges do not cross.
            let mut upper = BTreeSet::new();
            let mut lower = BTreeSet::new();
            for f in k.facets() {
                let s = f.normal.dot(u.coords());
                let side = if s > VERTICAL_EPS {
                    &mut upper
                } else if s < -VERTICAL_EPS {
                    &mut lower
                } else {
                    continue;
                };
                for i in 0..f.ring.len() {
                    let (a, b) = (f.ring[i], f.ring[(i + 1) % f.ring.len()]);
                    side.insert((a.min(b), a.max(b)));
                }
            }
            let seg = |&(a, b): &(usize, usize)| (verts[a], verts[b]);
            let upper: Vec<_> = upper.difference(&lower).map(seg).collect();
            let lower: Vec<_> = lower.iter().map(seg).collect();
            let scale = k.vertices().iter().map(|v| v.norm()).fold(1.0, f64::max);
            for p in edge_crossings(&upper, &lower, 1e-12 * scale, MAX_BREAKPOINTS)? {
                breakpoints.push(Point(vec![
                    p[0] * e1[0] + p[1] * e2[0],
                    p[0] * e1[1] + p[1] * e2[1],
                    p[0] * e1[2] + p[1] * e2[2],
                ]));
            }
        }
        Ok(ChordFunctions { direction: u, caps, breakpoints })
    }

    pub fn direction(&self) -> &Point {
        &self.direction
    }

    pub fn breakpoints(&self) -> &[Point] {
        &self.breakpoints
    }

    /// `(lower(x), upper(x))` for `x` in `u⊥`.
    pub fn profile(&self, x: &Point) -> (f64, f64) {
        let mut hi = f64::INFINITY;
        let mut lo = f64::NEG_INFINITY;
        for (n, h, s) in &self.caps {
            let lam = (h - n.dot(x.coords())) / s;
            if *s > 0.0 {
                hi = hi.min(lam);
            } else {
                lo = lo.max(lam);
            }
        }
        (lo, hi)
    }

    pub fn upper(&self, x: &Point) -> f64 {
        self.profile(x).1
    }

    pub fn lower(&self, x: &Point) -> f64 {
        self.profile(x).0
    }

    pub fn length(&self, x: &Point) -> f64 {
        let (lo, hi) = self.profile(x);
        (hi - lo).max(0.0)
    }
}

type Segment = ([f64; 2], [f64; 2]);

/// Proper crossings between the segments of `a` and those of `b`, found through a uniform grid.
fn edge_crossings(a: &[Segment], b: &[Segment], eps: f64, budget: usize) -> Result<Vec<[f64; 2]>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for (p, q) in a.iter().chain(b) {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]).min(q[i]);
            hi[i] = hi[i].max(p[i]).max(q[i]);
        }
    }
    let g = ((a.len() + b.len()) as f64).sqrt().ceil().max(1.0) as usize;
    let width = [(hi[0] - lo[0]).max(f64::MIN_POSITIVE), (hi[1] - lo[1]).max(f64::MIN_POSITIVE)];
    let cell = |x: f64, i: usize| (((x - lo[i]) / width[i] * g as f64) as usize).min(g - 1);
    let step = [width[0] / g as f64, width[1] / g as f64];
    // Whether the line through p, q meets the closed cell (cx, cy).
    let meets = |p: [f64; 2], q: [f64; 2], cx: usize, cy: usize| {
        let (x0, y0) = (lo[0] + cx as f64 * step[0], lo[1] + cy as f64 * step[1]);
        let side = |x: f64, y: f64| (q[0] - p[0]) * (y - p[1]) - (q[1] - p[1]) * (x - p[0]);
        let s = [side(x0, y0), side(x0 + step[0], y0), side(x0, y0 + step[1]), side(x0 + step[0], y0 + step[1])];
        s.iter().any(|&v| v >= 0.0) && s.iter().any(|&v| v <= 0.0)
    };
    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); g * g];
    for (j, &(p, q)) in b.iter().enumerate() {
        for cx in cell(p[0].min(q[0]), 0)..=cell(p[0].max(q[0]), 0) {
            for cy in cell(p[1].min(q[1]), 1)..=cell(p[1].max(q[1]), 1) {
                if meets(p, q, cx, cy) {
                    grid[cx * g + cy].push(j);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for &sa in a {
        let (p, q) = sa;
        seen.clear();
        for cx in cell(p[0].min(q[0]), 0)..=cell(p[0].max(q[0]), 0) {
            for cy in cell(p[1].min(q[1]), 1)..=cell(p[1].max(q[1]), 1) {
                if meets(p, q, cx, cy) {
                    seen.extend_from_slice(&grid[cx * g + cy]);
                }
            }
        }
        seen.sort_unstable();
        seen.dedup();
        out.extend(seen.iter().filter_map(|&j| segment_crossing(sa, b[j], eps)));
        if out.len() > budget {
            return Err(GeomError::VertexBudget { max: budget });
        }
    }
    Ok(out)
}

/// Proper crossing point of two segments in the plane (shared endpoints excluded).
fn segment_crossing(a: ([f64; 2], [f64; 2]), b: ([f64; 2], [f64; 2]), eps: f64) -> Option<[f64; 2]> {
    let r = [a.1[0] - a.0[0], a.1[1] - a.0[1]];
    let s = [b.1[0] - b.0[0], b.1[1] - b.0[1]];
    let den = r[0] * s[1] - r[1] * s[0];
    if den.abs() <= eps * (r[0].hypot(r[1]) + s[0].hypot(s[1])) {
        return None;
    }
    let q = [b.0[0] - a.0[0], b.0[1] - a.0[1]];
    let t = (q[0] * s[1] - q[1] * s[0]) / den;
    let w = (q[0] * r[1] - q[1] * r[0]) / den;
    let inside = |x: f64| x > 0.0 && x < 1.0;
    (inside(t) && inside(w)).then(|| [a.0[0] + t * r[0], a.0[1] + t * r[1]])
}

/// Steiner symmetral of `K` with respect to the hyperplane `u⊥`.
pub fn steiner_symmetrize(k: &VPolytope, u: &Point) -> Result<VPolytope> {
    let chords = ChordFunctions::new(k, u)?;
    let d = chords.direction();
    let mut pts = Vec::with_capacity(2 * chords.breakpoints.len());
    for x in chords.breakpoints() {
        let half = 0.5 * chords.length(x);
        pts.push(x + &d.scale(half));
        pts.push(x + &d.scale(-half));
    }
    VPolytope::hull(&pts)
}

/// Shadow system along `u` with `K_0 = K`, `K_{1/2}` the Steiner symmetral
/// and `K_1` the reflection of `K` in `u⊥`.
pub fn steiner_shadow_system(k: &VPolytope, u: &Point) -> Result<ShadowSystem> {
    let chords = ChordFunctions::new(k, u)?;
    let d = chords.direction().clone();
    let mut base = Vec::new();
    let mut speeds = Vec::new();
    for x in chords.breakpoints() {
        let (mut g, mut f) = chords.profile(x);
        if f < g {
            // Breakpoints where the chord degenerates to a point may come out slightly inverted.
            g = 0.5 * (f + g);
            f = g;
        }
        base.push(x + &d.scale(f));
        base.push(x + &d.scale(g));
        speeds.push(-(f + g));
        speeds.push(-(f + g));
    }
    ShadowSystem::new(base, speeds, d)
}

/// Centered regular-polytope ball of the same volume as `K`.
pub fn rearrange_body(k: &VPolytope) -> Result<VPolytope> {
    rearrange_body_with(k, default_ball_facets(k.dim()))
}

pub fn rearrange_body_with(k: &VPolytope, facets: usize) -> Result<VPolytope> {
    if k.dim() != 2 && k.dim() != 3 {
        return Err(GeomError::UnsupportedDimension(k.dim()));
    }
    if !k.is_full_dimensional() {
        return Err(GeomError::Degenerate("rearrangement needs a full-dimensional body"));
    }
    ball_polytope(k.dim(), facets, k.volume())
}

/// Iterated Steiner symmetrization in random directions.
pub fn iterate_steiner<R: Rng + ?Sized>(k: &VPolytope, steps: usize, rng: &mut R) -> Result<Vec<VPolytope>> {
    let mut out = vec![k.clone()];
    for _ in 0..steps {
        let u = match k.dim() {
            2 => {
                let t = rng.random::<f64>() * std::f64::consts::PI;
                Point(vec![t.cos(), t.sin()])
            }
            _ => {
                let z: f64 = rng.random::<f64>() * 2.0 - 1.0;
                let t = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
                let r = (1.0 - z * z).sqrt();
                Point(vec![r * t.cos(), r * t.sin(), z])
            }
        };
        let next = steiner_symmetrize(out.last().unwrap(), &u)?;
        out.push(next);
    }
    Ok(out)
}

/// Hausdorff distance from `K` to the centered Euclidean ball of equal volume.
pub fn distance_to_equal_ball(k: &VPolytope) -> f64 {
    let n = k.dim();
    let r = (k.volume() / crate::kernel::unit_ball_volume(n)).powf(1.0 / n as f64);
    let outer = k.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max) - r;
    let inner = r - k.facets().iter().map(|f| f.offset).fold(f64::INFINITY, f64::min);
    outer.max(inner).max(0.0)
}

/// Estimates of `E F` with columns drawn uniformly from the given bodies and
/// from their Steiner symmetrals along `u`. The two sides use unrelated
/// seeds derived from `seed`.
pub fn steiner_step_expectation<F>(functional: F, bodies: &[VPolytope], u: &Point, trials: usize, seed: u64) -> Result<(EstimateWithCI, EstimateWithCI)>
where
    F: Fn(&[Density], RngStream) -> Result<f64> + Sync,
{
    let original: Vec<Density> = bodies.iter().cloned().map(Density::uniform).collect::<Result<_>>()?;
    let symmetrized: Vec<Density> = bodies
        .iter()
        .map(|b| steiner_symmetrize(b, u).and_then(Density::uniform))
        .collect::<Result<_>>()?;
    let lhs_seed = RngStream::derive_master(seed, 0);
    let rhs_seed = RngStream::derive_master(seed, 1);
    let (lhs, _) = estimate(trials, lhs_seed, |s| functional(&original, s))?;
    let (rhs, _) = estimate(trials, rhs_seed, |s| functional(&symmetrized, s))?;
    Ok((lhs, rhs))
}
