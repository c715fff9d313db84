#![allow(dead_code)]

use petty_core::kernel::{Point, VPolytope};
use proptest::prelude::*;

pub fn pts(v: &[&[f64]]) -> Vec<Point> {
    v.iter().map(|c| Point(c.to_vec())).collect()
}

pub fn poly(v: &[&[f64]]) -> VPolytope {
    VPolytope::hull(&pts(v)).unwrap()
}

pub fn square(h: f64) -> VPolytope {
    poly(&[&[-h, -h], &[h, -h], &[h, h], &[-h, h]])
}

pub fn cube3(h: f64) -> VPolytope {
    let v: Vec<Point> = (0..8)
        .map(|m| Point((0..3).map(|i| if m >> i & 1 == 1 { h } else { -h }).collect()))
        .collect();
    VPolytope::hull(&v).unwrap()
}

pub fn regular_polygon(k: usize, r: f64) -> VPolytope {
    let v: Vec<Point> = (0..k)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            Point(vec![r * t.cos(), r * t.sin()])
        })
        .collect();
    VPolytope::hull(&v).unwrap()
}

/// Clouds of points in `[-1, 1]^n`.
pub fn cloud(n: usize, min: usize, max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), min..max)
        .prop_map(|v| v.into_iter().map(Point).collect())
}

/// Full-dimensional polytopes: a cloud plus a small cross-polytope around the origin.
pub fn body(n: usize, min: usize, max: usize) -> impl Strategy<Value = VPolytope> {
    cloud(n, min, max).prop_map(move |mut v| {
        for i in 0..n {
            for s in [-0.2, 0.2] {
                let mut e = vec![0.0; n];
                e[i] = s;
                v.push(Point(e));
            }
        }
        VPolytope::hull(&v).unwrap()
    })
}

pub fn unit_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|v| {
            let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / l).collect()
        })
}

/// Shoelace area of the 2-D hull of `p` found by gift wrapping.
pub fn wrap_area(p: &[[f64; 2]]) -> f64 {
    let start = (0..p.len()).min_by(|&a, &b| p[a][0].total_cmp(&p[b][0]).then(p[a][1].total_cmp(&p[b][1]))).unwrap();
    let mut ring = vec![start];
    let mut cur = start;
    loop {
        let mut next = (cur + 1) % p.len();
        for j in 0..p.len() {
            let (a, b, c) = (p[cur], p[next], p[j]);
            let cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            let d2 = |q: [f64; 2]| (q[0] - a[0]).powi(2) + (q[1] - a[1]).powi(2);
            if cr < 0.0 || (cr == 0.0 && d2(c) > d2(b)) {
                next = j;
            }
        }
        cur = next;
        if cur == start || ring.len() > p.len() {
            break;
        }
        ring.push(cur);
    }
    let mut a = 0.0;
    for i in 0..ring.len() {
        let (x, y) = (p[ring[i]], p[ring[(i + 1) % ring.len()]]);
        a += x[0] * y[1] - x[1] * y[0];
    }
    0.5 * a.abs()
}

/// One-sample Kolmogorov–Smirnov statistic.
pub fn ks(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}
