//! Planar convex hull (Andrew's monotone chain).

use super::tol::{DEDUP_EPS, HULL_EPS};

#[inline]
fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices of the hull vertices of `pts` in counter-clockwise order.
///
/// Collinear and duplicate points are dropped. Tolerances apply to
/// coordinates normalized by the bounding box, so the result is scale-free.
/// Returns one index for a (numerically) single point and two for a segment.
pub(crate) fn hull2_indices(pts: &[[f64; 2]]) -> Vec<usize> {
    if pts.is_empty() {
        return Vec::new();
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let center = [(lo[0] + hi[0]) * 0.5, (lo[1] + hi[1]) * 0.5];
    let scale = ((hi[0] - lo[0]).max(hi[1] - lo[1]) * 0.5).max(f64::MIN_POSITIVE);
    let q: Vec<[f64; 2]> = pts
        .iter()
        .map(|p| [(p[0] - center[0]) / scale, (p[1] - center[1]) / scale])
        .collect();
    if hi[0] - lo[0] <= 0.0 && hi[1] - lo[1] <= 0.0 {
        return vec![0];
    }

    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| q[a][0].total_cmp(&q[b][0]).then(q[a][1].total_cmp(&q[b][1])));

    let mut chain: Vec<usize> = Vec::with_capacity(2 * pts.len());
    for &i in &order {
        while chain.len() >= 2 && cross(q[chain[chain.len() - 2]], q[chain[chain.len() - 1]], q[i]) <= HULL_EPS {
            chain.pop();
        }
        chain.push(i);
    }
    let lower_len = chain.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while chain.len() >= lower_len && cross(q[chain[chain.len() - 2]], q[chain[chain.len() - 1]], q[i]) <= HULL_EPS {
            chain.pop();
        }
        chain.push(i);
    }
    chain.pop();

    let near = |a: usize, b: usize| (q[a][0] - q[b][0]).abs() <= DEDUP_EPS && (q[a][1] - q[b][1]).abs() <= DEDUP_EPS;
    chain.dedup_by(|a, b| near(*a, *b));
    while chain.len() > 1 && near(chain[0], *chain.last().unwrap()) {
        chain.pop();
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_interior_and_collinear() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]];
        let h = hull2_indices(&pts);
        assert_eq!(h.len(), 4);
        let mut s = h.clone();
        s.sort();
        assert_eq!(s, vec![0, 1, 3, 4]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(hull2_indices(&[[1.0, 2.0]]).len(), 1);
        assert_eq!(hull2_indices(&[[1.0, 2.0], [1.0, 2.0]]).len(), 1);
        let seg = hull2_indices(&[[0.0, 0.0], [1.0, 1.0], [0.5, 0.5], [2.0, 2.0]]);
        assert_eq!(seg.len(), 2);
    }

    #[test]
    fn counter_clockwise() {
        let pts = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]];
        let h = hull2_indices(&pts);
        let a = pts[h[0]];
        let b = pts[h[1]];
        let c = pts[h[2]];
        assert!(cross(a, b, c) > 0.0);
    }
}
