mod common;

use common::*;
use petty_core::kernel::{
    linear_image, m_add, minkowski_sum, polar, zonotope_to_vpolytope, zonotope_volume, MSpec, Matrix, Point, VPolytope,
    Zonotope,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent(n in 2usize..4, seed in cloud(3, 4, 30)) {
        let v: Vec<Point> = seed.into_iter().map(|p| Point(p.0[..n].to_vec())).collect();
        let h = VPolytope::hull(&v).unwrap();
        let again = VPolytope::hull(h.vertices()).unwrap();
        prop_assert!(again.vertex_set_distance(&h) <= 1e-9);
        prop_assert_eq!(again.vertices().len(), h.vertices().len());
    }

    #[test]
    fn minkowski_volume_superadditive(a in body(2, 3, 12), b in body(2, 3, 12), c in body(3, 4, 12), d in body(3, 4, 12)) {
        prop_assert!(minkowski_sum(&a, &b).unwrap().volume() >= a.volume() + b.volume() - 1e-9);
        prop_assert!(minkowski_sum(&c, &d).unwrap().volume() >= c.volume() + d.volume() - 1e-9);
    }

    #[test]
    fn support_is_additive(a in body(3, 4, 12), b in body(3, 4, 12), us in prop::collection::vec(unit_vec(3), 64)) {
        let s = minkowski_sum(&a, &b).unwrap();
        for u in &us {
            prop_assert!((s.support(u) - a.support(u) - b.support(u)).abs() <= 1e-9);
        }
    }

    #[test]
    fn polar_is_an_involution(a in body(2, 3, 16), b in body(3, 4, 16)) {
        prop_assert!(polar(&polar(&a).unwrap()).unwrap().vertex_set_distance(&a) <= 1e-8);
        prop_assert!(polar(&polar(&b).unwrap()).unwrap().vertex_set_distance(&b) <= 1e-8);
    }

    #[test]
    fn linear_image_support(m in 1usize..6, cols in cloud(3, 6, 7), c in cloud(6, 1, 10), us in prop::collection::vec(unit_vec(3), 64)) {
        let x = Matrix::from_columns(3, cols[..m].to_vec()).unwrap();
        let cs: Vec<Point> = c.into_iter().map(|p| Point(p.0[..m].to_vec())).collect();
        let c = VPolytope::from_vertices(m, cs).unwrap();
        let img = linear_image(&x, &c).unwrap();
        for u in &us {
            prop_assert!((img.support(u) - c.support(&x.transpose_apply(u))).abs() <= 1e-9);
        }
    }

    #[test]
    fn zonotope_volume_matches_hull(n in 2usize..4, gens in cloud(3, 0, 9)) {
        let g: Vec<Point> = gens.into_iter().map(|p| Point(p.0[..n].to_vec())).collect();
        let z = Zonotope::new(n, g).unwrap();
        let a = zonotope_volume(&z).unwrap();
        let b = zonotope_to_vpolytope(&z).unwrap().volume();
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn polytope_m_addition_is_monotone(k in body(2, 3, 8), l in body(2, 3, 8), s in 0.1f64..1.0, us in prop::collection::vec(unit_vec(2), 32)) {
        let k = minkowski_sum(&k, &k.scale(-1.0).unwrap()).unwrap();
        let l = minkowski_sum(&l, &l.scale(-1.0).unwrap()).unwrap();
        let big = square(1.0);
        let small = poly(&[&[-s, 0.0], &[0.0, -s], &[s, 0.0], &[0.0, s]]);
        let r_small = m_add(&MSpec::polytope_m(small).unwrap(), &[k.clone(), l.clone()]).unwrap();
        let r_big = m_add(&MSpec::polytope_m(big).unwrap(), &[k, l]).unwrap();
        for u in &us {
            prop_assert!(r_small.support(u) <= r_big.support(u) + 1e-9);
        }
    }
}

#[test]
fn hull_agrees_with_gift_wrapping_area() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let p: Vec<[f64; 2]> = (0..200).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
        let h = VPolytope::hull(&p.iter().map(|&q| Point::from(q)).collect::<Vec<_>>()).unwrap();
        assert!((h.volume() - wrap_area(&p)).abs() < 1e-12);
    }
}

#[test]
fn lp_addition_interpolates() {
    let seg = |a: &[f64]| poly(&[a, &a.iter().map(|x| -x).collect::<Vec<_>>()]);
    let (a, b) = (seg(&[1.0, 0.0]), seg(&[0.0, 1.0]));
    let sum1 = m_add(&MSpec::lp(1.0).unwrap(), &[a.clone(), b.clone()]).unwrap();
    let suminf = m_add(&MSpec::lp(f64::INFINITY).unwrap(), &[a.clone(), b.clone()]).unwrap();
    assert!(sum1.vertex_set_distance(&square(1.0)) < 1e-12);
    assert!((suminf.volume() - 2.0).abs() < 1e-9);
    let sum2 = m_add(&MSpec::lp(2.0).unwrap(), &[a.clone(), b.clone()]).unwrap();
    assert!(sum2.volume() > 2.0 && sum2.volume() < std::f64::consts::PI);
    let mink = m_add(&MSpec::minkowski(), &[a, b]).unwrap();
    assert!(mink.vertex_set_distance(&square(1.0)) < 1e-12);
}
