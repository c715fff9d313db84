//! Spatial convex hull: incremental insertion (farthest points first) followed
//! by merging coplanar triangles into facet polygons.

use super::hull2::hull2_indices;
use super::tol::{DEDUP_EPS, FACET_MERGE_EPS, HULL_EPS};
use std::collections::HashMap;

#[inline]
pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[inline]
pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn unit(a: [f64; 3]) -> [f64; 3] {
    let l = norm3(a);
    if l > 0.0 {
        [a[0] / l, a[1] / l, a[2] / l]
    } else {
        a
    }
}

/// Orthonormal pair spanning the plane orthogonal to unit vector `n`,
/// oriented so that `e1 × e2 = n`.
pub(crate) fn plane_basis(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let pick = if n[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else if n[1].abs() < 0.6 { [0.0, 1.0, 0.0] } else { [0.0, 0.0, 1.0] };
    let e1 = unit(cross(pick, n));
    let e2 = cross(n, e1);
    (e1, e2)
}

pub(crate) struct Hull3 {
    pub affine_dim: usize,
    /// Input indices of the hull vertices.
    pub vertices: Vec<usize>,
    /// Facet rings (input indices), counter-clockwise seen from outside.
    /// For a planar hull this holds the single ring.
    pub facets: Vec<Vec<usize>>,
}

struct Face {
    v: [usize; 3],
    n: [f64; 3],
    d: f64,
    alive: bool,
}

fn make_face(q: &[[f64; 3]], v: [usize; 3]) -> Face {
    let n = unit(cross(sub3(q[v[1]], q[v[0]]), sub3(q[v[2]], q[v[0]])));
    let d = dot3(n, q[v[0]]);
    Face { v, n, d, alive: true }
}

pub(crate) fn hull3(pts: &[[f64; 3]]) -> Hull3 {
    assert!(!pts.is_empty());
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in pts {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let center = [(lo[0] + hi[0]) * 0.5, (lo[1] + hi[1]) * 0.5, (lo[2] + hi[2]) * 0.5];
    let scale = (0..3).map(|k| (hi[k] - lo[k]) * 0.5).fold(0.0, f64::max);
    if scale <= 0.0 {
        return Hull3 { affine_dim: 0, vertices: vec![0], facets: Vec::new() };
    }
    let q: Vec<[f64; 3]> = pts
        .iter()
        .map(|p| [(p[0] - center[0]) / scale, (p[1] - center[1]) / scale, (p[2] - center[2]) / scale])
        .collect();

    // Tolerance dedup over x-sorted order.
    let mut order: Vec<usize> = (0..q.len()).collect();
    order.sort_by(|&a, &b| q[a][0].total_cmp(&q[b][0]));
    let mut uniq: Vec<usize> = Vec::with_capacity(q.len());
    for &i in &order {
        let mut dup = false;
        for &j in uniq.iter().rev() {
            if q[i][0] - q[j][0] > DEDUP_EPS {
                break;
            }
            if (q[i][1] - q[j][1]).abs() <= DEDUP_EPS && (q[i][2] - q[j][2]).abs() <= DEDUP_EPS {
                dup = true;
                break;
            }
        }
        if !dup {
            uniq.push(i);
        }
    }

    let i0 = uniq[0];
    let far = |f: &dyn Fn(usize) -> f64| -> (usize, f64) {
        uniq.iter().map(|&i| (i, f(i))).fold((i0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
    };
    let (i1, d1) = far(&|i| norm3(sub3(q[i], q[i0])));
    if d1 <= HULL_EPS {
        return Hull3 { affine_dim: 0, vertices: vec![i0], facets: Vec::new() };
    }
    let dir = unit(sub3(q[i1], q[i0]));
    let (i2, d2) = far(&|i| norm3(cross(dir, sub3(q[i], q[i0]))));
    if d2 <= HULL_EPS {
        let (a, _) = far(&|i| -dot3(dir, q[i]));
        let (b, _) = far(&|i| dot3(dir, q[i]));
        return Hull3 { affine_dim: 1, vertices: vec![a, b], facets: Vec::new() };
    }
    let normal = unit(cross(sub3(q[i1], q[i0]), sub3(q[i2], q[i0])));
    let (i3, d3) = far(&|i| dot3(normal, sub3(q[i], q[i0])).abs());
    if d3 <= HULL_EPS {
        let (e1, e2) = plane_basis(normal);
        let flat: Vec<[f64; 2]> = uniq.iter().map(|&i| [dot3(e1, q[i]), dot3(e2, q[i])]).collect();
        let ring: Vec<usize> = hull2_indices(&flat).into_iter().map(|k| uniq[k]).collect();
        return Hull3 { affine_dim: 2, vertices: ring.clone(), facets: vec![ring] };
    }

    let mut faces: Vec<Face> = Vec::new();
    let tet = [i0, i1, i2, i3];
    let centroid = {
        let mut c = [0.0; 3];
        for &i in &tet {
            for k in 0..3 {
                c[k] += q[i][k] * 0.25;
            }
        }
        c
    };
    for f in [[i0, i1, i2], [i0, i3, i1], [i1, i3, i2], [i0, i2, i3]] {
        let mut face = make_face(&q, f);
        if dot3(face.n, centroid) - face.d > 0.0 {
            face = make_face(&q, [f[0], f[2], f[1]]);
        }
        faces.push(face);
    }
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            edges.insert((f.v[k], f.v[(k + 1) % 3]), fi);
        }
    }

    // Quickhull: every pending point sits in the outside set of one face it sees.
    let mut outside: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    let assign = |faces: &[Face], cands: &[usize], p: usize| -> Option<usize> {
        cands.iter().copied().find(|&fi| dot3(faces[fi].n, q[p]) - faces[fi].d > HULL_EPS)
    };
    for &p in uniq.iter().filter(|i| !tet.contains(i)) {
        if let Some(fi) = assign(&faces, &[0, 1, 2, 3], p) {
            outside[fi].push(p);
        }
    }
    let mut stack: Vec<usize> = (0..4).filter(|&fi| !outside[fi].is_empty()).collect();
    let mut visible: Vec<usize> = Vec::new();
    let mut is_visible: Vec<bool> = vec![false; faces.len()];
    while let Some(start) = stack.pop() {
        if !faces[start].alive || outside[start].is_empty() {
            continue;
        }
        let f0 = &faces[start];
        let p = *outside[start]
            .iter()
            .max_by(|&&a, &&b| (dot3(f0.n, q[a]) - f0.d).total_cmp(&(dot3(f0.n, q[b]) - f0.d)))
            .unwrap();
        // Connected visible region around the seed face.
        visible.clear();
        visible.push(start);
        is_visible.resize(faces.len(), false);
        is_visible[start] = true;
        let mut head = 0;
        while head < visible.len() {
            let v = faces[visible[head]].v;
            head += 1;
            for k in 0..3 {
                if let Some(&tw) = edges.get(&(v[(k + 1) % 3], v[k])) {
                    if !is_visible[tw] && faces[tw].alive && dot3(faces[tw].n, q[p]) - faces[tw].d > HULL_EPS {
                        is_visible[tw] = true;
                        visible.push(tw);
                    }
                }
            }
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &fi in &visible {
            let v = faces[fi].v;
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                match edges.get(&(b, a)) {
                    Some(&tw) if is_visible[tw] => {}
                    _ => horizon.push((a, b)),
                }
            }
        }
        let mut pending: Vec<usize> = Vec::new();
        for &fi in &visible {
            faces[fi].alive = false;
            is_visible[fi] = false;
            pending.extend(outside[fi].drain(..).filter(|&i| i != p));
            let v = faces[fi].v;
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if edges.get(&key) == Some(&fi) {
                    edges.remove(&key);
                }
            }
        }
        let first = faces.len();
        for (a, b) in horizon {
            let fi = faces.len();
            faces.push(make_face(&q, [a, b, p]));
            outside.push(Vec::new());
            edges.insert((a, b), fi);
            edges.insert((b, p), fi);
            edges.insert((p, a), fi);
        }
        let fresh: Vec<usize> = (first..faces.len()).collect();
        for i in pending {
            if let Some(fi) = assign(&faces, &fresh, i) {
                outside[fi].push(i);
            }
        }
        stack.extend(fresh.into_iter().filter(|&fi| !outside[fi].is_empty()));
    }

    // Merge coplanar triangles into facet polygons.
    let mut tris: Vec<(f64, usize)> = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.alive)
        .map(|(i, f)| (norm3(cross(sub3(q[f.v[1]], q[f.v[0]]), sub3(q[f.v[2]], q[f.v[0]]))), i))
        .collect();
    tris.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut clusters: Vec<([f64; 3], f64, Vec<usize>)> = Vec::new();
    for &(_, fi) in &tris {
        let f = &faces[fi];
        let slot = clusters.iter().position(|(n, d, _)| {
            dot3(*n, f.n) > 0.0 && f.v.iter().all(|&v| (dot3(*n, q[v]) - d).abs() <= FACET_MERGE_EPS)
        });
        match slot {
            Some(c) => clusters[c].2.extend_from_slice(&f.v),
            None => clusters.push((f.n, f.d, f.v.to_vec())),
        }
    }
    let mut facets = Vec::with_capacity(clusters.len());
    let mut used = vec![false; pts.len()];
    for (n, _, mut vs) in clusters {
        vs.sort_unstable();
        vs.dedup();
        let (e1, e2) = plane_basis(n);
        let flat: Vec<[f64; 2]> = vs.iter().map(|&i| [dot3(e1, q[i]), dot3(e2, q[i])]).collect();
        let ring: Vec<usize> = hull2_indices(&flat).into_iter().map(|k| vs[k]).collect();
        if ring.len() < 3 {
            continue;
        }
        for &i in &ring {
            used[i] = true;
        }
        facets.push(ring);
    }
    let vertices: Vec<usize> = (0..pts.len()).filter(|&i| used[i]).collect();
    Hull3 { affine_dim: 3, vertices, facets }
}
