//! The standard family of test bodies.

use crate::kernel::{ball_polytope, BodyLiteral, Point, VPolytope};
use crate::stochastic::{random_hull, Density, RngStream};

const FAMILY_SEED: u64 = 0x5eed_f00d;

fn literal(l: BodyLiteral) -> VPolytope {
    l.to_vpolytope().expect("family literal is valid")
}

fn regular_polygon(k: usize, r: f64) -> VPolytope {
    let pts: Vec<Point> = crate::kernel::sphere::circle_grid(k, 0.0).into_iter().map(|p| p.scale(r)).collect();
    VPolytope::hull(&pts).unwrap()
}

/// Named bodies in dimension 2 or 3: regular shapes, thin shapes, a ball
/// approximation and seeded random hulls.
pub fn standard_family(n: usize) -> Vec<(String, VPolytope)> {
    let mut out = Vec::new();
    if n == 2 {
        out.push(("square".into(), literal(BodyLiteral::Cube { dim: 2, half: 1.0 })));
        out.push(("triangle".into(), literal(BodyLiteral::Simplex { dim: 2 })));
        out.push((
            "thin-rectangle".into(),
            literal(BodyLiteral::Polygon { vertices: vec![[-2.0, -0.25], [2.0, -0.25], [2.0, 0.25], [-2.0, 0.25]] }),
        ));
        out.push(("hexagon".into(), regular_polygon(6, 1.0)));
        out.push(("ball64".into(), ball_polytope(2, 64, std::f64::consts::PI).unwrap()));
    } else {
        out.push(("cube".into(), literal(BodyLiteral::Cube { dim: 3, half: 1.0 })));
        out.push(("simplex".into(), literal(BodyLiteral::Simplex { dim: 3 })));
        out.push((
            "octahedron".into(),
            literal(BodyLiteral::Polytope3 {
                vertices: vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]],
            }),
        ));
        out.push((
            "slab".into(),
            literal(BodyLiteral::Polytope3 {
                vertices: (0..8)
                    .map(|m| [if m & 1 == 1 { 2.0 } else { -2.0 }, if m & 2 == 2 { 1.0 } else { -1.0 }, if m & 4 == 4 { 0.2 } else { -0.2 }])
                    .collect(),
            }),
        ));
        out.push(("ball320".into(), ball_polytope(3, 320, 4.0 / 3.0 * std::f64::consts::PI).unwrap()));
    }
    let cube = literal(BodyLiteral::Cube { dim: n, half: 1.0 });
    let d = Density::uniform(cube).unwrap();
    for i in 0..4 {
        let mut rng = RngStream::new(FAMILY_SEED + n as u64, i).rng();
        out.push((format!("random-{i}"), random_hull(&d, 8 + 4 * i as usize, &mut rng).unwrap()));
    }
    out
}
