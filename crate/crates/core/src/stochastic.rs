//! Seeded samplers for random hulls, random L_p bodies and random zonotopes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::kernel::{ball_polytope, unit_ball_volume, zonotope_to_vpolytope, Matrix, Point, VPolytope, Zonotope};
use crate::{GeomError, Result};

/// Counter-based substream of a master seed: ChaCha8 keyed by the master
/// seed, with the stream index selecting the ChaCha stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master: u64,
    pub index: u64,
}

impl RngStream {
    pub fn new(master: u64, index: u64) -> Self {
        RngStream { master, index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.master);
        r.set_stream(self.index);
        r
    }

    /// An unrelated master seed derived from this one and a label.
    pub fn derive_master(master: u64, label: u64) -> u64 {
        splitmix64(master ^ splitmix64(label.wrapping_add(0x5851_f42d_4c95_7f2d)))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Default facet count of the polytope standing in for a ball.
pub fn default_ball_facets(n: usize) -> usize {
    if n == 2 {
        64
    } else {
        320
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Body { body: VPolytope, simplices: Vec<Vec<Point>>, cdf: Vec<f64> },
    Ball { dim: usize, radius: f64 },
    Gaussian { dim: usize, sigma: f64 },
}

/// Distribution of a random column.
#[derive(Clone, Debug)]
pub struct Density {
    kind: Kind,
    rearranged: bool,
}

impl Density {
    /// Uniform distribution on a full-dimensional polytope.
    pub fn uniform(body: VPolytope) -> Result<Self> {
        if body.dim() != 2 && body.dim() != 3 {
            return Err(GeomError::UnsupportedDimension(body.dim()));
        }
        if !body.is_full_dimensional() {
            return Err(GeomError::Degenerate("uniform density needs a full-dimensional body"));
        }
        let simplices = triangulate(&body);
        let vols: Vec<f64> = simplices.iter().map(|s| simplex_volume(s)).collect();
        let total: f64 = vols.iter().sum();
        let mut acc = 0.0;
        let cdf = vols
            .iter()
            .map(|v| {
                acc += v / total;
                acc
            })
            .collect();
        Ok(Density { kind: Kind::Body { body, simplices, cdf }, rearranged: false })
    }

    pub fn gaussian(sigma: f64, dim: usize) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(GeomError::InvalidParameter(format!("gaussian sigma must be positive, got {sigma}")));
        }
        if dim == 0 {
            return Err(GeomError::UnsupportedDimension(0));
        }
        Ok(Density { kind: Kind::Gaussian { dim, sigma }, rearranged: false })
    }

    /// Symmetric decreasing rearrangement: the uniform distribution on the
    /// centered ball of equal volume, or the gaussian itself.
    pub fn rearranged(&self) -> Density {
        let kind = match &self.kind {
            Kind::Body { body, .. } => {
                let n = body.dim();
                let radius = (body.volume() / unit_ball_volume(n)).powf(1.0 / n as f64);
                Kind::Ball { dim: n, radius }
            }
            k => k.clone(),
        };
        Density { kind, rearranged: true }
    }

    pub fn is_rearranged(&self) -> bool {
        self.rearranged
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            Kind::Body { body, .. } => body.dim(),
            Kind::Ball { dim, .. } | Kind::Gaussian { dim, .. } => *dim,
        }
    }

    /// Whether the density is the normalized indicator of a body.
    pub fn is_indicator(&self) -> bool {
        !matches!(self.kind, Kind::Gaussian { .. })
    }

    /// The support body for indicator densities; balls are realized as the
    /// regular polytope of equal volume with `facets` facets.
    pub fn body_polytope(&self, facets: usize) -> Result<VPolytope> {
        match &self.kind {
            Kind::Body { body, .. } => Ok(body.clone()),
            Kind::Ball { dim, radius } => ball_polytope(*dim, facets, unit_ball_volume(*dim) * radius.powi(*dim as i32)),
            Kind::Gaussian { .. } => Err(GeomError::InvalidParameter("gaussian density has no support body".into())),
        }
    }

    /// Radius of the ball for a rearranged indicator density.
    pub fn ball_radius(&self) -> Option<f64> {
        match self.kind {
            Kind::Ball { radius, .. } => Some(radius),
            _ => None,
        }
    }
}

fn triangulate(body: &VPolytope) -> Vec<Vec<Point>> {
    let v = body.vertices();
    match body.dim() {
        2 => (1..v.len() - 1).map(|i| vec![v[0].clone(), v[i].clone(), v[i + 1].clone()]).collect(),
        _ => {
            let c = body.centroid();
            let mut out = Vec::new();
            for f in body.facets() {
                for w in f.ring[1..].windows(2) {
                    out.push(vec![c.clone(), v[f.ring[0]].clone(), v[w[0]].clone(), v[w[1]].clone()]);
                }
            }
            out
        }
    }
}

fn simplex_volume(s: &[Point]) -> f64 {
    if s.len() == 3 {
        let (a, b) = (&s[1] - &s[0], &s[2] - &s[0]);
        (a[0] * b[1] - a[1] * b[0]).abs() / 2.0
    } else {
        let (a, b, c) = ((&s[1] - &s[0]).to3(), (&s[2] - &s[0]).to3(), (&s[3] - &s[0]).to3());
        crate::kernel::dot3(a, crate::kernel::cross(b, c)).abs() / 6.0
    }
}

fn unit_direction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let l = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if l > 1e-300 {
            return g.into_iter().map(|x| x / l).collect();
        }
    }
}

/// One draw from `d`.
pub fn sample_point<R: Rng + ?Sized>(d: &Density, rng: &mut R) -> Point {
    match &d.kind {
        Kind::Body { simplices, cdf, .. } => {
            let t: f64 = rng.random();
            let k = cdf.partition_point(|&c| c < t).min(simplices.len() - 1);
            let s = &simplices[k];
            let w: Vec<f64> = (0..s.len()).map(|_| rng.sample::<f64, _>(Exp1)).collect();
            let total: f64 = w.iter().sum();
            let n = s[0].dim();
            let mut x = vec![0.0; n];
            for (p, wi) in s.iter().zip(&w) {
                for i in 0..n {
                    x[i] += wi / total * p[i];
                }
            }
            Point(x)
        }
        Kind::Ball { dim, radius } => {
            let u = unit_direction(*dim, rng);
            let r = radius * rng.random::<f64>().powf(1.0 / *dim as f64);
            Point(u.into_iter().map(|x| r * x).collect())
        }
        Kind::Gaussian { dim, sigma } => Point((0..*dim).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect()),
    }
}

pub fn sample_points<R: Rng + ?Sized>(d: &Density, m: usize, rng: &mut R) -> Vec<Point> {
    (0..m).map(|_| sample_point(d, rng)).collect()
}

/// Column blocks: `m_i` independent columns from density `i`.
#[derive(Clone, Debug)]
pub struct BlockSpec {
    blocks: Vec<(Density, usize)>,
}

impl BlockSpec {
    pub fn new(blocks: Vec<(Density, usize)>) -> Result<Self> {
        let first = blocks.first().ok_or(GeomError::InvalidParameter("block spec needs at least one block".into()))?;
        let n = first.0.dim();
        for (d, m) in &blocks {
            if *m == 0 {
                return Err(GeomError::InvalidParameter("block size must be at least 1".into()));
            }
            if d.dim() != n {
                return Err(GeomError::DimensionMismatch { expected: n, got: d.dim() });
            }
        }
        Ok(BlockSpec { blocks })
    }

    pub fn blocks(&self) -> &[(Density, usize)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks[0].0.dim()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }
}

pub fn sample_matrix<R: Rng + ?Sized>(spec: &BlockSpec, rng: &mut R) -> Matrix {
    let mut cols = Vec::with_capacity(spec.total());
    for (d, m) in &spec.blocks {
        cols.extend(sample_points(d, *m, rng));
    }
    Matrix::from_columns(spec.dim(), cols).expect("block densities share a dimension")
}

/// `[K]_m`: hull of `m` samples.
pub fn random_hull<R: Rng + ?Sized>(d: &Density, m: usize, rng: &mut R) -> Result<VPolytope> {
    if m == 0 {
        return Err(GeomError::InvalidParameter("m must be at least 1".into()));
    }
    VPolytope::hull(&sample_points(d, m, rng))
}

/// `[K]_m^∞`: zonotope generated by `m` samples.
pub fn random_zonotope<R: Rng + ?Sized>(d: &Density, m: usize, rng: &mut R) -> Result<Zonotope> {
    if m == 0 {
        return Err(GeomError::InvalidParameter("m must be at least 1".into()));
    }
    Zonotope::new(d.dim(), sample_points(d, m, rng))
}

/// Number of boundary directions used for `1 < p < ∞`.
pub fn default_lp_directions(n: usize) -> usize {
    if n == 2 {
        256
    } else {
        1024
    }
}

/// `[K]_m^p = X B_p^m` for a sampled matrix `X`.
pub fn random_lp_body<R: Rng + ?Sized>(d: &Density, m: usize, p: f64, rng: &mut R) -> Result<VPolytope> {
    if !(p >= 1.0) {
        return Err(GeomError::InvalidParameter(format!("p must be at least 1, got {p}")));
    }
    if m == 0 {
        return Err(GeomError::InvalidParameter("m must be at least 1".into()));
    }
    let x = Matrix::from_columns(d.dim(), sample_points(d, m, rng))?;
    lp_image(&x, p, default_lp_directions(d.dim()))
}

/// `X B_p^m`. For `p ∈ {1, ∞}` the result is exact; otherwise it is the hull
/// of the boundary points `X c*(u)`, where `c*(u) ∈ B_p^m` attains
/// `h_{XB_p}(u) = ‖Xᵀu‖_q`, over `directions` unit vectors `u`.
pub fn lp_image(x: &Matrix, p: f64, directions: usize) -> Result<VPolytope> {
    let n = x.rows();
    if p == 1.0 {
        let mut pts: Vec<Point> = x.columns().to_vec();
        pts.extend(x.columns().iter().map(|c| -c));
        return VPolytope::hull(&pts);
    }
    if p.is_infinite() {
        return zonotope_to_vpolytope(&Zonotope::new(n, x.columns().to_vec())?);
    }
    let q = p / (p - 1.0);
    let dirs = crate::kernel::sphere::directions(n, directions);
    let mut pts = Vec::with_capacity(dirs.len());
    for u in &dirs {
        let y = x.transpose_apply(u.coords());
        let norm_q = y.iter().map(|v| v.abs().powf(q)).sum::<f64>().powf(1.0 / q);
        if norm_q == 0.0 {
            pts.push(Point::zeros(n));
            continue;
        }
        let c: Vec<f64> = y.iter().map(|v| v.signum() * (v.abs() / norm_q).powf(q - 1.0)).collect();
        pts.push(x.apply(&c));
    }
    VPolytope::hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square01() -> VPolytope {
        VPolytope::hull(&[Point(vec![0.0, 0.0]), Point(vec![1.0, 0.0]), Point(vec![1.0, 1.0]), Point(vec![0.0, 1.0])]).unwrap()
    }

    #[test]
    fn streams_reproduce_and_differ() {
        let a: Vec<u64> = (0..4).map(|_| RngStream::new(7, 3).rng().random()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let b: u64 = RngStream::new(7, 4).rng().random();
        assert_ne!(a[0], b);
        assert_ne!(RngStream::derive_master(7, 1), RngStream::derive_master(7, 2));
    }

    #[test]
    fn uniform_square_mean() {
        let d = Density::uniform(square01()).unwrap();
        let mut rng = RngStream::new(1, 0).rng();
        let n = 100_000;
        let pts = sample_points(&d, n, &mut rng);
        for i in 0..2 {
            let mean = pts.iter().map(|p| p[i]).sum::<f64>() / n as f64;
            let se = (1.0 / 12.0 / n as f64).sqrt();
            assert!((mean - 0.5).abs() < 3.0 * se, "{mean}");
        }
        assert!(pts.iter().all(|p| (0.0..=1.0).contains(&p[0]) && (0.0..=1.0).contains(&p[1])));
    }

    #[test]
    fn ball_and_rearrangement() {
        let d = Density::uniform(square01()).unwrap().rearranged();
        let r = d.ball_radius().unwrap();
        assert!((std::f64::consts::PI * r * r - 1.0).abs() < 1e-14);
        let mut rng = RngStream::new(2, 0).rng();
        assert!(sample_points(&d, 1000, &mut rng).iter().all(|p| p.norm() <= r));
        let poly = d.body_polytope(64).unwrap();
        assert!((poly.volume() - 1.0).abs() < 1e-12);
        let g = Density::gaussian(1.0, 2).unwrap();
        assert!(!g.rearranged().is_indicator());
    }

    #[test]
    fn matrix_blocks() {
        let k = Density::uniform(square01()).unwrap();
        let l = Density::uniform(square01().translate(&[5.0, 0.0]).unwrap()).unwrap();
        let spec = BlockSpec::new(vec![(k, 2), (l, 2)]).unwrap();
        let x = sample_matrix(&spec, &mut RngStream::new(3, 0).rng());
        assert_eq!((x.rows(), x.cols()), (2, 4));
        assert!(x.column(0)[0] <= 1.0 && x.column(1)[0] <= 1.0);
        assert!(x.column(2)[0] >= 5.0 && x.column(3)[0] >= 5.0);
        let y = sample_matrix(&spec, &mut RngStream::new(3, 0).rng());
        assert_eq!(x.columns(), y.columns());
    }

    #[test]
    fn random_bodies() {
        let d = Density::uniform(square01()).unwrap();
        let h = random_hull(&d, 1, &mut RngStream::new(4, 0).rng()).unwrap();
        assert_eq!(h.vertices().len(), 1);
        let z = random_zonotope(&d, 1, &mut RngStream::new(4, 0).rng()).unwrap();
        assert_eq!(z.generators()[0], h.vertices()[0]);
        let x = Matrix::from_columns(2, vec![Point(vec![1.0, 0.5]), Point(vec![-0.3, 0.8])]).unwrap();
        let b2 = lp_image(&x, 2.0, 256).unwrap();
        for u in crate::kernel::sphere::circle_grid(37, 0.05) {
            let y = x.transpose_apply(u.coords());
            let want = (y[0] * y[0] + y[1] * y[1]).sqrt();
            let got = b2.support(u.coords());
            assert!(got <= want + 1e-12 && got >= want * (1.0 - 1e-3));
        }
        let b1 = lp_image(&x, 1.0, 0).unwrap();
        assert_eq!(b1.vertices().len(), 4);
        let binf = lp_image(&x, f64::INFINITY, 0).unwrap();
        assert!((binf.volume() - 4.0 * (0.8 + 0.15)).abs() < 1e-12);
    }
}
