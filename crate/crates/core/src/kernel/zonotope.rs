//! Zonotopes Σ[−g, g] given by generator lists.

use super::hull3::{cross, dot3, norm3, plane_basis};
use super::point::{dot, Point};
use super::polytope::VPolytope;
use super::tol::PARALLEL_EPS;
use crate::{GeomError, Result};

/// Default budget on the number of n-subsets for the determinant volume formula.
pub const DEFAULT_SUBSET_BUDGET: u128 = 1_000_000;
/// Largest (merged) generator count accepted by the 3-D vertex conversion.
pub const MAX_GENERATORS_3D: usize = 20;

/// Minkowski sum of the segments `[−g, g]` over its generators `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    dim: usize,
    generators: Vec<Point>,
}

impl Zonotope {
    pub fn new(dim: usize, generators: Vec<Point>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, got: g.dim() });
        }
        Ok(Zonotope { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// `h(u) = Σ |⟨g, u⟩|`.
    #[inline]
    pub fn support(&self, u: &[f64]) -> f64 {
        self.generators.iter().map(|g| dot(g.coords(), u).abs()).sum()
    }

    pub fn scale(&self, s: f64) -> Zonotope {
        Zonotope { dim: self.dim, generators: self.generators.iter().map(|g| g.scale(s)).collect() }
    }

    /// Minkowski sum of two zonotopes (generator concatenation).
    pub fn sum(&self, other: &Zonotope) -> Result<Zonotope> {
        if other.dim != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Zonotope { dim: self.dim, generators })
    }

    /// Same set with parallel generators merged and zero generators dropped.
    pub fn simplified(&self) -> Zonotope {
        let scale = self.generators.iter().map(|g| g.norm()).fold(0.0, f64::max);
        let mut merged: Vec<(Point, f64)> = Vec::new();
        for g in &self.generators {
            let len = g.norm();
            if len <= PARALLEL_EPS * scale || len == 0.0 {
                continue;
            }
            let mut dir = g.scale(1.0 / len);
            if let Some(&first) = dir.coords().iter().find(|x| x.abs() > 1e-9) {
                if first < 0.0 {
                    dir = -&dir;
                }
            }
            match merged.iter_mut().find(|(d, _)| (d.dot(dir.coords()) - 1.0).abs() <= PARALLEL_EPS * 16.0 && d.dist(&dir) <= 1e-9) {
                Some((_, l)) => *l += len,
                None => merged.push((dir, len)),
            }
        }
        Zonotope { dim: self.dim, generators: merged.into_iter().map(|(d, l)| d.scale(l)).collect() }
    }

    /// Rank of the generator matrix (numerical, relative tolerance).
    pub fn rank(&self) -> usize {
        let cols: Vec<Vec<f64>> = self.generators.iter().map(|g| g.coords().to_vec()).collect();
        numeric_rank(self.dim, &cols)
    }
}

pub(crate) fn numeric_rank(dim: usize, cols: &[Vec<f64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let scale = cols.iter().flat_map(|c| c.iter()).fold(0.0f64, |a, b| a.max(b.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut rows: Vec<Vec<f64>> = (0..dim).map(|i| cols.iter().map(|c| c[i] / scale).collect()).collect();
    let m = cols.len();
    let mut rank = 0;
    for col in 0..m {
        if rank == dim {
            break;
        }
        let piv = (rank..dim).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs())).unwrap();
        if rows[piv][col].abs() <= 1e-10 {
            continue;
        }
        rows.swap(rank, piv);
        for r in 0..dim {
            if r != rank {
                let f = rows[r][col] / rows[rank][col];
                for c in col..m {
                    rows[r][c] -= f * rows[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(cols: &[&Point]) -> f64 {
    match cols.len() {
        1 => cols[0][0],
        2 => cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0],
        3 => dot3(cols[0].to3(), cross(cols[1].to3(), cols[2].to3())),
        n => nalgebra::DMatrix::from_fn(n, n, |i, j| cols[j][i]).determinant(),
    }
}

fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (m - i) as u128 / (i + 1) as u128;
    }
    r
}

/// `Σ_{|S| = n} 2ⁿ |det(g_S)|` over n-subsets of generators, any dimension.
pub fn zonotope_volume(z: &Zonotope) -> Result<f64> {
    zonotope_volume_with_budget(z, DEFAULT_SUBSET_BUDGET)
}

pub fn zonotope_volume_with_budget(z: &Zonotope, budget: u128) -> Result<f64> {
    let n = z.dim;
    let m = z.generators.len();
    if m < n || n == 0 {
        return Ok(0.0);
    }
    let subsets = binomial(m, n);
    if subsets > budget {
        return Err(GeomError::BudgetExceeded { subsets, budget });
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut total = 0.0;
    let factor = (1u64 << n) as f64;
    loop {
        let cols: Vec<&Point> = idx.iter().map(|&i| &z.generators[i]).collect();
        total += det(&cols).abs();
        let mut k = n;
        while k > 0 && idx[k - 1] == k - 1 + m - n {
            k -= 1;
        }
        if k == 0 {
            return Ok(factor * total);
        }
        idx[k - 1] += 1;
        for j in k..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices of a planar zonotope by sorting edge directions.
fn zonotope_vertices_2d(gens: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut g: Vec<[f64; 2]> = gens
        .iter()
        .filter(|g| g[0] != 0.0 || g[1] != 0.0)
        .map(|&g| if g[1] < 0.0 || (g[1] == 0.0 && g[0] < 0.0) { [-g[0], -g[1]] } else { g })
        .collect();
    if g.is_empty() {
        return vec![[0.0, 0.0]];
    }
    g.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    let mut v = [-g.iter().map(|x| x[0]).sum::<f64>(), -g.iter().map(|x| x[1]).sum::<f64>()];
    let mut out = Vec::with_capacity(2 * g.len());
    for s in [1.0, -1.0] {
        for e in &g {
            out.push(v);
            v = [v[0] + 2.0 * s * e[0], v[1] + 2.0 * s * e[1]];
        }
    }
    out
}

/// Vertex representation of a zonotope in ℝ² (any number of generators)
/// or ℝ³ (at most [`MAX_GENERATORS_3D`] generators after merging parallels).
pub fn zonotope_to_vpolytope(z: &Zonotope) -> Result<VPolytope> {
    match z.dim {
        2 => {
            let g: Vec<[f64; 2]> = z.generators.iter().map(|g| g.to2()).collect();
            let pts: Vec<Point> = zonotope_vertices_2d(&g).into_iter().map(|p| Point(p.to_vec())).collect();
            VPolytope::hull(&pts)
        }
        3 => {
            let s = z.simplified();
            if s.generators.len() > MAX_GENERATORS_3D {
                return Err(GeomError::TooManyGenerators { got: s.generators.len(), max: MAX_GENERATORS_3D });
            }
            let g: Vec<[f64; 3]> = s.generators.iter().map(|g| g.to3()).collect();
            let pts: Vec<Point> = zonotope_vertices_3d(&g).into_iter().map(|p| Point(p.to_vec())).collect();
            VPolytope::hull(&pts)
        }
        d => Err(GeomError::UnsupportedDimension(d)),
    }
}

/// Candidate vertices of a 3-D zonotope: for every plane spanned by a pair
/// of generators, the two facets `±c + Z(in-plane generators)`.
fn zonotope_vertices_3d(g: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let m = g.len();
    if m == 0 {
        return vec![[0.0; 3]];
    }
    let lift = |c: [f64; 3], e1: [f64; 3], e2: [f64; 3], w: [f64; 2]| {
        [c[0] + w[0] * e1[0] + w[1] * e2[0], c[1] + w[0] * e1[1] + w[1] * e2[1], c[2] + w[0] * e1[2] + w[1] * e2[2]]
    };
    let cols: Vec<Vec<f64>> = g.iter().map(|x| x.to_vec()).collect();
    match numeric_rank(3, &cols) {
        0 => return vec![[0.0; 3]],
        1 => {
            let d = g[0];
            let dn = norm3(d);
            let half: f64 = g.iter().map(|x| dot3(*x, d).abs() / dn).sum();
            let u = [d[0] / dn, d[1] / dn, d[2] / dn];
            return vec![[half * u[0], half * u[1], half * u[2]], [-half * u[0], -half * u[1], -half * u[2]]];
        }
        2 => {
            let mut n = [0.0; 3];
            for i in 0..m {
                for j in i + 1..m {
                    let c = cross(g[i], g[j]);
                    if norm3(c) > norm3(n) {
                        n = c;
                    }
                }
            }
            let nl = norm3(n);
            let (e1, e2) = plane_basis([n[0] / nl, n[1] / nl, n[2] / nl]);
            let flat: Vec<[f64; 2]> = g.iter().map(|x| [dot3(*x, e1), dot3(*x, e2)]).collect();
            return zonotope_vertices_2d(&flat).into_iter().map(|w| lift([0.0; 3], e1, e2, w)).collect();
        }
        _ => {}
    }
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let n = cross(g[i], g[j]);
            let nl = norm3(n);
            if nl <= PARALLEL_EPS * norm3(g[i]) * norm3(g[j]) {
                continue;
            }
            let n = [n[0] / nl, n[1] / nl, n[2] / nl];
            let mut c = [0.0; 3];
            let mut plane: Vec<usize> = Vec::new();
            for (k, gk) in g.iter().enumerate() {
                let s = dot3(*gk, n);
                if s.abs() <= 1e-12 * norm3(*gk) {
                    plane.push(k);
                } else {
                    let sg = s.signum();
                    for t in 0..3 {
                        c[t] += sg * gk[t];
                    }
                }
            }
            // each plane once: at its two lowest-index generators
            if plane.len() > 2 && (plane[0] != i || plane[1] != j) {
                continue;
            }
            let (e1, e2) = plane_basis(n);
            let flat: Vec<[f64; 2]> = plane.iter().map(|&k| [dot3(g[k], e1), dot3(g[k], e2)]).collect();
            for w in zonotope_vertices_2d(&flat) {
                out.push(lift(c, e1, e2, w));
                out.push(lift([-c[0], -c[1], -c[2]], e1, e2, w));
            }
        }
    }
    out
}
