mod common;

use common::*;
use petty_core::harness::standard_family;
use petty_core::kernel::{minkowski_sum, unit_ball_volume, zonotope_to_vpolytope, Body, Point, VPolytope, Zonotope};
use petty_core::mixed::{mixed_volume, shadow_convexity_probe, surface_area, v1};
use petty_core::projection::{projection_body, zonotope_polar_measure, QuadratureSpec, RadialMeasure};
use petty_core::symmetrization::ShadowSystem;
use proptest::prelude::*;

fn shadow(n: usize, count: usize) -> impl Strategy<Value = (Vec<Point>, Vec<f64>)> {
    (cloud(n, count, count + 1), prop::collection::vec(-1.5f64..1.5, count))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polarization_expansion(k in body(3, 4, 10), l in body(3, 4, 10), a in 0.1f64..2.0, b in 0.1f64..2.0) {
        let coeff = |i: usize| {
            let mut args = vec![k.clone(); i];
            args.extend(std::iter::repeat_n(l.clone(), 3 - i));
            mixed_volume(&args).unwrap()
        };
        let binom = [1.0, 3.0, 3.0, 1.0];
        let poly: f64 = (0..=3).map(|i| binom[i] * a.powi(i as i32) * b.powi(3 - i as i32) * coeff(i)).sum();
        let direct = minkowski_sum(&k.scale(a).unwrap(), &l.scale(b).unwrap()).unwrap().volume();
        prop_assert!((direct - poly).abs() <= 1e-7 * direct);
    }

    #[test]
    fn multilinear_in_first_argument(k in body(2, 3, 8), kk in body(2, 3, 8), l in body(2, 3, 8), a in 0.0f64..2.0, b in 0.0f64..2.0) {
        let comb = minkowski_sum(&k.scale(a.max(1e-3)).unwrap(), &kk.scale(b.max(1e-3)).unwrap()).unwrap();
        let (a, b) = (a.max(1e-3), b.max(1e-3));
        let lhs = mixed_volume(&[comb, l.clone()]).unwrap();
        let rhs = a * mixed_volume(&[k, l.clone()]).unwrap() + b * mixed_volume(&[kk, l]).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(1.0));
    }

    #[test]
    fn monotone_under_inclusion(k in body(3, 4, 8), extra in cloud(3, 1, 4), l in body(3, 4, 8), m in body(3, 4, 8)) {
        let mut v = k.vertices().to_vec();
        v.extend(extra.into_iter().map(|p| p.scale(1.5)));
        let big = VPolytope::hull(&v).unwrap();
        let small = mixed_volume(&[k, l.clone(), m.clone()]).unwrap();
        prop_assert!(small <= mixed_volume(&[big, l, m]).unwrap() + 1e-9);
    }

    #[test]
    fn zonotope_argument_matches_explicit_hull(k in body(3, 4, 8), gens in cloud(3, 1, 6)) {
        let z = Zonotope::new(3, gens).unwrap();
        let exact = mixed_volume(&[k.clone(), k.clone(), zonotope_to_vpolytope(&z).unwrap()]).unwrap();
        let fast = v1(&k, &Body::Zonotope(z)).unwrap();
        prop_assert!((exact - fast).abs() <= 1e-9 * exact.max(1.0));
    }

    #[test]
    fn shephard_midpoint_convexity_2d(a in shadow(2, 6), b in shadow(2, 6), u in unit_vec(2), t0 in -1.0f64..1.0, t1 in -1.0f64..1.0) {
        let u = Point(u);
        let s = [ShadowSystem::new(a.0, a.1, u.clone()).unwrap(), ShadowSystem::new(b.0, b.1, u).unwrap()];
        let f = |t: f64| shadow_convexity_probe(&s, t).unwrap();
        prop_assert!(0.5 * (f(t0) + f(t1)) - f(0.5 * (t0 + t1)) >= -1e-9);
    }

    #[test]
    fn shephard_midpoint_convexity_3d(a in shadow(3, 7), b in shadow(3, 7), c in shadow(3, 7), u in unit_vec(3), t0 in -1.0f64..1.0, t1 in -1.0f64..1.0) {
        let u = Point(u);
        let s = [
            ShadowSystem::new(a.0, a.1, u.clone()).unwrap(),
            ShadowSystem::new(b.0, b.1, u.clone()).unwrap(),
            ShadowSystem::new(c.0, c.1, u).unwrap(),
        ];
        let f = |t: f64| shadow_convexity_probe(&s, t).unwrap();
        prop_assert!(0.5 * (f(t0) + f(t1)) - f(0.5 * (t0 + t1)) >= -1e-9);
    }
}

#[test]
fn cauchy_bound_on_standard_family() {
    for n in [2, 3] {
        for (name, k) in standard_family(n) {
            let pk = projection_body(&k).unwrap();
            let polar_vol = zonotope_polar_measure(&pk, &RadialMeasure::Lebesgue, &QuadratureSpec::default()).unwrap();
            let lhs = unit_ball_volume(n).powf(1.0 / n as f64) * polar_vol.powf(-1.0 / n as f64);
            let s = surface_area(&k).unwrap();
            assert!(lhs <= s * (1.0 + 1e-6), "{name}: {lhs} > {s}");
        }
    }
}

#[test]
fn cube_mixed_volumes() {
    let c = cube3(1.0);
    let seg = poly(&[&[0.0, 0.0, 0.0], &[0.0, 0.0, 2.0]]);
    assert!((mixed_volume(&[c.clone(), c.clone(), c.clone()]).unwrap() - 8.0).abs() < 1e-9);
    // V(C, C, [0, 2e_3]) = |P_{e_3⊥} C| · 2 / 3
    assert!((mixed_volume(&[c.clone(), c, seg]).unwrap() - 8.0 / 3.0).abs() < 1e-9);
}
