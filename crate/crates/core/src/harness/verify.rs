//! Kernel oracle suite: each check compares a kernel result against an
//! independent computation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::kernel::sphere::directions;
use crate::kernel::{linear_image, minkowski_sum, polar, zonotope_to_vpolytope, zonotope_volume, Matrix, Point, VPolytope, Zonotope};
use crate::mixed::mixed_volume;
use crate::projection::projection_body;
use crate::stochastic::{sample_points, Density, RngStream};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

const SEED: u64 = 0x0dd5_eed5;

fn check(name: &str, cases: usize, max_error: f64, tolerance: f64) -> CheckResult {
    CheckResult { name: name.into(), cases, max_error, tolerance, passed: max_error <= tolerance }
}

fn gaussian_points(n: usize, m: usize, stream: u64) -> Vec<Point> {
    let d = Density::gaussian(1.0, n).expect("valid sigma");
    sample_points(&d, m, &mut RngStream::new(SEED, stream).rng())
}

fn cube(n: usize, h: f64) -> VPolytope {
    let pts: Vec<Point> = (0..1usize << n)
        .map(|m| Point((0..n).map(|i| if m >> i & 1 == 1 { h } else { -h }).collect()))
        .collect();
    VPolytope::hull(&pts).expect("cube")
}

/// Determinant volume of random zonotopes against the volume of their vertex hulls.
pub fn check_zonotope_volume() -> Result<CheckResult> {
    let mut err = 0.0f64;
    let mut cases = 0;
    for n in [2usize, 3] {
        for m in 0..=8usize {
            for rep in 0..5u64 {
                let z = Zonotope::new(n, gaussian_points(n, m, 1000 + 100 * n as u64 + 10 * m as u64 + rep))?;
                let a = zonotope_volume(&z)?;
                let b = zonotope_to_vpolytope(&z)?.volume();
                err = err.max((a - b).abs() / a.abs().max(1.0));
                cases += 1;
            }
        }
    }
    Ok(check("zonotope determinant volume = hull volume", cases, err, 1e-9))
}

/// Random bodies containing the origin in their interior.
pub fn random_origin_bodies(n: usize, count: usize, stream: u64) -> Result<Vec<VPolytope>> {
    let mut out = Vec::with_capacity(count);
    let mut s = stream;
    while out.len() < count {
        let mut rng = RngStream::new(SEED, s).rng();
        s += 1;
        let m = rng.random_range(n + 2..n + 16);
        let p = VPolytope::hull(&gaussian_points(n, m, 1_000_000 + s))?;
        if p.is_full_dimensional() && p.facets().iter().all(|f| f.offset > 0.05) {
            out.push(p);
        }
    }
    Ok(out)
}

/// `polar(polar(P)) = P` on random bodies.
pub fn check_polar_involution() -> Result<CheckResult> {
    let mut err = 0.0f64;
    let mut cases = 0;
    for (n, stream) in [(2usize, 2000u64), (3, 3000)] {
        for p in random_origin_bodies(n, 50, stream)? {
            let pp = polar(&polar(&p)?)?;
            err = err.max(pp.vertex_set_distance(&p));
            cases += 1;
        }
    }
    Ok(check("polar involution (Hausdorff on vertex sets)", cases, err, 1e-8))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `|λK + μL|` against its mixed-volume polynomial expansion.
pub fn check_polarization() -> Result<CheckResult> {
    let lambdas = [0.25, 0.5, 1.0, 2.0];
    let mut err = 0.0f64;
    let mut cases = 0;
    for n in [2usize, 3] {
        for rep in 0..10u64 {
            let k = VPolytope::hull(&gaussian_points(n, 8, 4000 + 10 * n as u64 + rep))?;
            let l = VPolytope::hull(&gaussian_points(n, 8, 5000 + 10 * n as u64 + rep))?;
            let coeff: Vec<f64> = (0..=n)
                .map(|i| {
                    let mut args = vec![k.clone(); i];
                    args.extend(std::iter::repeat_n(l.clone(), n - i));
                    mixed_volume(&args)
                })
                .collect::<Result<_>>()?;
            for &a in &lambdas {
                for &b in &lambdas {
                    let direct = minkowski_sum(&k.scale(a)?, &l.scale(b)?)?.volume();
                    let poly: f64 = (0..=n).map(|i| binomial(n, i) * a.powi(i as i32) * b.powi((n - i) as i32) * coeff[i]).sum();
                    err = err.max((direct - poly).abs() / direct.abs());
                    cases += 1;
                }
            }
        }
    }
    Ok(check("mixed-volume polarization vs Minkowski expansion", cases, err, 1e-7))
}

/// `Π([−1,1]ⁿ) = 2^{n−1}[−1,1]ⁿ`.
pub fn check_cube_projection_body() -> Result<CheckResult> {
    let mut err = 0.0f64;
    for n in [2usize, 3] {
        let got = zonotope_to_vpolytope(&projection_body(&cube(n, 1.0))?)?;
        let want = cube(n, (1u32 << (n - 1)) as f64);
        let d = if got.vertices().len() == want.vertices().len() { got.vertex_set_distance(&want) } else { f64::INFINITY };
        err = err.max(d);
    }
    Ok(check("projection body of the cube", 2, err, 1e-12))
}

/// Number of strict hull vertices by gift wrapping.
pub fn gift_wrap_count(pts: &[[f64; 2]]) -> usize {
    let start = (0..pts.len()).min_by(|&a, &b| pts[a][0].total_cmp(&pts[b][0]).then(pts[a][1].total_cmp(&pts[b][1]))).unwrap();
    let mut count = 0;
    let mut cur = start;
    loop {
        count += 1;
        let mut next = if cur == 0 { 1 } else { 0 };
        for j in 0..pts.len() {
            if j == cur {
                continue;
            }
            let (a, b, c) = (pts[cur], pts[next], pts[j]);
            let cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            let d2 = |p: [f64; 2]| (p[0] - a[0]).powi(2) + (p[1] - a[1]).powi(2);
            if cr < 0.0 || (cr == 0.0 && d2(c) > d2(b)) {
                next = j;
            }
        }
        cur = next;
        if cur == start || count > pts.len() {
            return count;
        }
    }
}

/// Hull vertex count of 1000 uniform points in the unit square against gift wrapping.
pub fn check_hull_gift_wrapping() -> Result<CheckResult> {
    let mut err = 0.0f64;
    for rep in 0..5u64 {
        let mut rng = RngStream::new(SEED, 6000 + rep).rng();
        let pts: Vec<[f64; 2]> = (0..1000).map(|_| [rng.random(), rng.random()]).collect();
        let hull = VPolytope::hull(&pts.iter().map(|&p| Point::from(p)).collect::<Vec<_>>())?;
        err = err.max((hull.vertices().len() as f64 - gift_wrap_count(&pts) as f64).abs());
    }
    Ok(check("hull vertex count vs gift wrapping", 5, err, 0.0))
}

/// `h_{A+B} = h_A + h_B` and `h_{XC}(u) = h_C(Xᵀu)` on sampled directions.
pub fn check_support_identities() -> Result<CheckResult> {
    let mut err = 0.0f64;
    let mut cases = 0;
    for n in [2usize, 3] {
        for rep in 0..5u64 {
            let a = VPolytope::hull(&gaussian_points(n, 7, 7000 + 10 * n as u64 + rep))?;
            let b = VPolytope::hull(&gaussian_points(n, 9, 8000 + 10 * n as u64 + rep))?;
            let s = minkowski_sum(&a, &b)?;
            let x = Matrix::from_columns(n, gaussian_points(n, 4, 9000 + 10 * n as u64 + rep))?;
            let c = VPolytope::from_vertices(4, gaussian_points(4, 6, 9500 + 10 * n as u64 + rep))?;
            let img = linear_image(&x, &c)?;
            for u in directions(n, 64) {
                let u = u.coords();
                err = err.max((s.support(u) - a.support(u) - b.support(u)).abs());
                err = err.max((img.support(u) - c.support(&x.transpose_apply(u))).abs());
                cases += 2;
            }
        }
    }
    Ok(check("support additivity and linear-image support", cases, err, 1e-9))
}

/// Runs every check.
pub fn verify_kernel() -> Result<VerifyReport> {
    let checks = vec![
        check_zonotope_volume()?,
        check_polar_involution()?,
        check_polarization()?,
        check_cube_projection_body()?,
        check_hull_gift_wrapping()?,
        check_support_identities()?,
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}
