mod common;

use common::*;
use petty_core::harness::standard_family;
use petty_core::kernel::sphere::directions;
use petty_core::kernel::{Body, Point, VPolytope, Zonotope};
use petty_core::projection::{
    centroid_body_support, mixed_projection_of, mixed_projection_support, petty_ball_value, petty_product, petty_product_exact,
    polar_measure, projection_body, zonotope_polar_measure, QuadratureSpec, RadialMeasure,
};
use petty_core::stochastic::{sample_points, Density, RngStream};
use petty_core::symmetrization::rearrange_body;
use petty_core::GeomError;
use proptest::prelude::*;

/// `|P_{u⊥} K|` from projected vertices.
fn shadow_measure(k: &VPolytope, u: &[f64]) -> f64 {
    match u.len() {
        2 => {
            let w = [-u[1], u[0]];
            let s: Vec<f64> = k.vertices().iter().map(|v| v.dot(&w)).collect();
            s.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - s.iter().cloned().fold(f64::INFINITY, f64::min)
        }
        _ => {
            let a = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let d = a[0] * u[0] + a[1] * u[1] + a[2] * u[2];
            let e1: Vec<f64> = (0..3).map(|i| a[i] - d * u[i]).collect();
            let l = e1.iter().map(|x| x * x).sum::<f64>().sqrt();
            let e1: Vec<f64> = e1.iter().map(|x| x / l).collect();
            let e2 = [u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2], u[0] * e1[1] - u[1] * e1[0]];
            let flat: Vec<[f64; 2]> = k.vertices().iter().map(|v| [v.dot(&e1), v.dot(&e2)]).collect();
            wrap_area(&flat)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_support_is_shadow_measure(k in body(3, 4, 14), us in prop::collection::vec(unit_vec(3), 64)) {
        let pk = projection_body(&k).unwrap();
        for u in &us {
            let want = shadow_measure(&k, u);
            prop_assert!((pk.support(u) - want).abs() <= 1e-8 * want.max(1.0));
        }
    }

    #[test]
    fn projection_support_is_width_in_plane(k in body(2, 3, 14), us in prop::collection::vec(unit_vec(2), 64)) {
        let pk = projection_body(&k).unwrap();
        for u in &us {
            let want = shadow_measure(&k, u);
            prop_assert!((pk.support(u) - want).abs() <= 1e-8 * want.max(1.0));
        }
    }

    #[test]
    fn projection_body_ignores_reflection(k in body(3, 4, 12), us in prop::collection::vec(unit_vec(3), 32)) {
        let a = projection_body(&k).unwrap();
        let b = projection_body(&k.scale(-1.0).unwrap()).unwrap();
        let sum = a.generators().iter().fold(vec![0.0; 3], |acc, g| (0..3).map(|i| acc[i] + g[i]).collect());
        prop_assert!(sum.iter().all(|x| x.abs() < 1e-9));
        for u in &us {
            prop_assert!((a.support(u) - b.support(u)).abs() <= 1e-9);
        }
    }

    #[test]
    fn polar_measure_reverses_inclusion(gens in cloud(2, 2, 6), extra in cloud(2, 1, 2), sigma in 0.5f64..2.0) {
        let z = Zonotope::new(2, gens.clone()).unwrap();
        let mut more = gens;
        more.extend(extra);
        let z2 = Zonotope::new(2, more).unwrap();
        let nu = RadialMeasure::gaussian(sigma).unwrap();
        let q = QuadratureSpec::default();
        let small = zonotope_polar_measure(&z, &nu, &q).unwrap();
        let big = zonotope_polar_measure(&z2, &nu, &q).unwrap();
        prop_assert!(big <= small + 1e-12);
    }
}

#[test]
fn petty_values_on_square_and_disk() {
    let sq = square(1.0);
    assert!((petty_product_exact(&sq).unwrap() - 2.0).abs() < 1e-6);
    assert!((petty_product(&sq, &QuadratureSpec::default()).unwrap() - 2.0).abs() < 1e-5);
    let ball_value = std::f64::consts::PI.powi(2) / 4.0;
    assert!((petty_ball_value(2) - ball_value).abs() < 1e-12);
    let disk = regular_polygon(64, 1.0);
    let p = petty_product(&disk, &QuadratureSpec::default().certified()).unwrap();
    assert!((p / ball_value - 1.0).abs() < 1e-2);
}

#[test]
fn petty_inequality_on_standard_family() {
    let q = QuadratureSpec::default();
    for n in [2, 3] {
        for (name, k) in standard_family(n) {
            let p = petty_product(&k, &q).unwrap();
            let ball = petty_product(&rearrange_body(&k).unwrap(), &q).unwrap();
            assert!(p <= ball * (1.0 + 1e-3), "{name}: {p} > {ball}");
            assert!(p <= petty_ball_value(n) * (1.0 + 1e-3), "{name}");
        }
    }
}

#[test]
fn mixed_inequality_sanity_in_space() {
    let q = QuadratureSpec::default();
    let family = standard_family(3);
    for (i, (a, ka)) in family.iter().enumerate() {
        for (b, kb) in family.iter().skip(i + 1) {
            let lhs = polar_measure(&mixed_projection_support(&[ka.clone(), kb.clone()]).unwrap(), &RadialMeasure::Lebesgue, &q).unwrap();
            let balls = [rearrange_body(ka).unwrap(), rearrange_body(kb).unwrap()];
            let rhs = polar_measure(&mixed_projection_support(&balls).unwrap(), &RadialMeasure::Lebesgue, &q).unwrap();
            assert!(lhs <= rhs * (1.0 + 1e-2), "{a}/{b}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn mixed_projection_of_equal_arguments_is_projection_body() {
    let k = cube3(0.7);
    let mixed = mixed_projection_support(&[k.clone(), k.clone()]).unwrap();
    let pk = projection_body(&k).unwrap();
    for u in directions(3, 50) {
        assert!((mixed.eval(u.coords()) - pk.support(u.coords())).abs() < 1e-9);
    }
}

#[test]
fn mixed_projection_of_segments_is_a_determinant() {
    // Two segments [-a, a], [-b, b]: h(u) = 2|det(a, b, u)|.
    let a = Zonotope::new(3, vec![Point(vec![1.0, 0.2, 0.0])]).unwrap();
    let b = Zonotope::new(3, vec![Point(vec![0.1, 1.0, 0.3])]).unwrap();
    let h = mixed_projection_of(&[Body::Zonotope(a.clone()), Body::Zonotope(b.clone())]).unwrap();
    let general = mixed_projection_of(&[Body::Polytope(petty_core::kernel::zonotope_to_vpolytope(&a).unwrap()), Body::Zonotope(b)]).unwrap();
    for u in directions(3, 40) {
        let u = u.coords();
        let (x, y) = ([1.0, 0.2, 0.0], [0.1, 1.0, 0.3]);
        let det = x[0] * (y[1] * u[2] - y[2] * u[1]) - x[1] * (y[0] * u[2] - y[2] * u[0]) + x[2] * (y[0] * u[1] - y[1] * u[0]);
        assert!((h.eval(u) - 2.0 * det.abs()).abs() < 1e-12);
        assert!((general.eval(u) - 2.0 * det.abs()).abs() < 1e-9);
    }
}

#[test]
fn lebesgue_polar_of_flat_zonotope_is_unbounded() {
    let z = Zonotope::new(2, vec![Point(vec![1.0, 1.0])]).unwrap();
    let q = QuadratureSpec::default();
    assert!(matches!(zonotope_polar_measure(&z, &RadialMeasure::Lebesgue, &q), Err(GeomError::UnboundedPolar)));
    let g = zonotope_polar_measure(&z, &RadialMeasure::gaussian(1.0).unwrap(), &q).unwrap();
    assert!(g.is_finite() && g > 0.0 && g < 1.0);
}

#[test]
fn centroid_support_matches_sample_mean() {
    let l = poly(&[&[0.0, 0.0], &[2.0, 0.0], &[0.5, 1.5]]);
    let h = centroid_body_support(&l).unwrap();
    let d = Density::uniform(l).unwrap();
    let xs = sample_points(&d, 200_000, &mut RngStream::new(9, 0).rng());
    for u in directions(2, 12) {
        let vals: Vec<f64> = xs.iter().map(|x| x.dot(u.coords()).abs()).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (vals.len() - 1) as f64).sqrt();
        let se = sd / (vals.len() as f64).sqrt();
        assert!((h.eval(u.coords()) - mean).abs() < 4.0 * se, "{} vs {mean}", h.eval(u.coords()));
    }
}
