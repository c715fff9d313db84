//! Deterministic direction sets on the unit circle and sphere.

use std::f64::consts::PI;

use super::Point;

/// `n` equally spaced unit vectors in the plane, starting at angle `offset`.
pub fn circle_grid(n: usize, offset: f64) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let t = offset + 2.0 * PI * k as f64 / n as f64;
            Point(vec![t.cos(), t.sin()])
        })
        .collect()
}

/// Fibonacci lattice of `n` nearly equal-area points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Point> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden * k as f64;
            Point(vec![r * t.cos(), r * t.sin(), z])
        })
        .collect()
}

/// Unit directions for dimension 2 or 3.
pub fn directions(dim: usize, n: usize) -> Vec<Point> {
    match dim {
        2 => circle_grid(n, 0.0),
        _ => fibonacci_sphere(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_balanced() {
        for pts in [circle_grid(17, 0.3), fibonacci_sphere(101)] {
            let d = pts[0].dim();
            let mut s = vec![0.0; d];
            for p in &pts {
                assert!((p.norm() - 1.0).abs() < 1e-14);
                for i in 0..d {
                    s[i] += p[i];
                }
            }
            assert!(s.iter().all(|x| x.abs() < 1e-2 * pts.len() as f64));
        }
    }
}
