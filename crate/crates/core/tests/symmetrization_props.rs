mod common;

use common::*;
use petty_core::harness::{verdict, Direction, Verdict};
use petty_core::kernel::{Point, VPolytope};
use petty_core::stochastic::{random_hull, RngStream};
use petty_core::symmetrization::{
    distance_to_equal_ball, iterate_steiner, shadow_at, steiner_shadow_system, steiner_step_expectation, steiner_symmetrize,
};
use proptest::prelude::*;

fn reflect(p: &VPolytope, u: &Point) -> VPolytope {
    p.map_points(|v| v - &u.scale(2.0 * v.dot(u.coords()))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_symmetral_keeps_area_and_is_symmetric(k in body(2, 3, 14), u in unit_vec(2)) {
        let u = Point(u);
        let s = steiner_symmetrize(&k, &u).unwrap();
        prop_assert!((s.volume() - k.volume()).abs() <= 1e-12 * k.volume().max(1.0));
        prop_assert!(reflect(&s, &u).vertex_set_distance(&s) <= 1e-9);
        prop_assert!(VPolytope::hull(s.vertices()).unwrap().vertex_set_distance(&s) <= 1e-9);
    }

    #[test]
    fn spatial_symmetral_keeps_volume_and_is_symmetric(k in body(3, 4, 14), u in unit_vec(3)) {
        let u = Point(u);
        let s = steiner_symmetrize(&k, &u).unwrap();
        prop_assert!((s.volume() / k.volume() - 1.0).abs() <= 1e-8);
        prop_assert!(reflect(&s, &u).vertex_set_distance(&s) <= 1e-9);
        prop_assert!(VPolytope::hull(s.vertices()).unwrap().vertex_set_distance(&s) <= 1e-9);
    }

    #[test]
    fn shadow_system_midpoint_is_the_symmetral(n in 2usize..4, k3 in body(3, 4, 12), u3 in unit_vec(3)) {
        let (k, u) = if n == 2 {
            let v: Vec<Point> = k3.vertices().iter().map(|p| Point(p.0[..2].to_vec())).collect();
            let l = u3[..2].iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
            (VPolytope::hull(&v).unwrap(), Point(vec![u3[0] / l + 1e-3, u3[1] / l]))
        } else {
            (k3, Point(u3))
        };
        let u = u.scale(1.0 / u.norm());
        let sys = steiner_shadow_system(&k, &u).unwrap();
        let mid = shadow_at(&sys, 0.5).unwrap();
        prop_assert!(mid.vertex_set_distance(&steiner_symmetrize(&k, &u).unwrap()) <= 1e-9);
        prop_assert!(shadow_at(&sys, 0.0).unwrap().vertex_set_distance(&k) <= 1e-9);
        prop_assert!(shadow_at(&sys, 1.0).unwrap().vertex_set_distance(&reflect(&k, &u)) <= 1e-9);
    }

    #[test]
    fn shadow_system_is_lipschitz(k in body(2, 3, 12), u in unit_vec(2), t in 0.0f64..1.0, dt in -0.3f64..0.3) {
        let sys = steiner_shadow_system(&k, &Point(u)).unwrap();
        let lip = sys.speeds().iter().fold(0.0f64, |a, s| a.max(s.abs()));
        let a = shadow_at(&sys, t).unwrap();
        let b = shadow_at(&sys, t + dt).unwrap();
        let h = hausdorff(&a, &b);
        prop_assert!(h <= lip * dt.abs() + 1e-9, "{h} > {}", lip * dt.abs());
    }
}

/// Hausdorff distance of planar polygons from vertex-to-polygon distances.
fn hausdorff(a: &VPolytope, b: &VPolytope) -> f64 {
    let to = |x: &Point, p: &VPolytope| -> f64 {
        if p.contains(x.coords(), 1e-12) {
            return 0.0;
        }
        let v = p.vertices();
        (0..v.len())
            .map(|i| {
                let (s, e) = (&v[i], &v[(i + 1) % v.len()]);
                let d = e - s;
                let t = ((x - s).dot(d.coords()) / d.dot(d.coords())).clamp(0.0, 1.0);
                x.dist(&(s + &d.scale(t)))
            })
            .fold(f64::INFINITY, f64::min)
    };
    let ab = a.vertices().iter().map(|x| to(x, b)).fold(0.0, f64::max);
    let ba = b.vertices().iter().map(|x| to(x, a)).fold(0.0, f64::max);
    ab.max(ba)
}

#[test]
fn ten_steps_approach_the_disk() {
    let tri = poly(&[&[0.0, 1.6], &[-1.35, -0.78], &[1.35, -0.78]]);
    let seq = iterate_steiner(&tri, 10, &mut RngStream::new(19, 0).rng()).unwrap();
    let last = seq.last().unwrap();
    let diameter = 2.0 * (tri.volume() / std::f64::consts::PI).sqrt();
    assert!(distance_to_equal_ball(last) < 0.05 * diameter);
    assert!((last.volume() / tri.volume() - 1.0).abs() < 1e-12);
    assert!(distance_to_equal_ball(last) < distance_to_equal_ball(&tri));
}

#[test]
fn expected_hull_area_drops_under_a_steiner_step() {
    let k = poly(&[&[0.0, 0.0], &[3.0, 0.0], &[0.4, 1.3]]);
    let u = Point(vec![0.0, 1.0]);
    let (lhs, rhs) = steiner_step_expectation(
        |d, s| Ok(random_hull(&d[0], 4, &mut s.rng())?.volume()),
        &[k],
        &u,
        40_000,
        8,
    )
    .unwrap();
    assert!(lhs.mean >= rhs.mean);
    assert_ne!(verdict(&lhs, &rhs, Direction::LhsGeRhs), Verdict::Violated);
}
