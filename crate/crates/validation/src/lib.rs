//! Acceptance criteria for the kernel and the experiment harness. Each
//! criterion returns an [`Outcome`]; the `acceptance` test target runs them
//! all and prints one line per criterion.

use std::time::{Duration, Instant};

use petty_core::harness::{run, standard_family, verify_kernel, ExperimentConfig, ExperimentReport, Verdict};
use petty_core::kernel::{unit_ball_volume, Point, VPolytope};
use petty_core::mixed::{shadow_convexity_probe, surface_area};
use petty_core::projection::{
    petty_ball_value, petty_product, petty_product_exact, projection_body, zonotope_polar_measure, QuadratureSpec, RadialMeasure,
};
use petty_core::stochastic::{random_hull, sample_points, Density, RngStream};
use petty_core::symmetrization::{distance_to_equal_ball, iterate_steiner, shadow_at, steiner_shadow_system, steiner_symmetrize, ShadowSystem};
use petty_core::Result;
use rand::Rng;
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub budget: Option<Duration>,
    pub check: fn() -> Result<Outcome>,
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, name: "kernel oracle suite", budget: secs(60), check: kernel_oracles },
        Criterion { id: 2, name: "deterministic volume-product functional", budget: secs(120), check: petty_functional },
        Criterion { id: 3, name: "Cauchy bound on the test family", budget: None, check: cauchy_bound },
        Criterion { id: 4, name: "polar projection run, planar triangle vs disk", budget: secs(300), check: polar_projection_run },
        Criterion { id: 5, name: "random hull volume vs rearranged", budget: secs(180), check: mixed_volume_run },
        Criterion { id: 6, name: "V1 of random hull and zonotope vs rearranged", budget: None, check: v1_run },
        Criterion { id: 7, name: "law of large numbers and constancy of the limit", budget: None, check: lln_run },
        Criterion { id: 8, name: "convexity along shadow systems", budget: None, check: shephard },
        Criterion { id: 9, name: "Steiner symmetrization suite", budget: None, check: steiner_suite },
        Criterion { id: 10, name: "byte-identical reports across thread counts", budget: None, check: reproducibility },
    ]
}

/// Runs a criterion, failing it when it errors or exceeds its time budget.
pub fn evaluate(c: &Criterion) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = match (c.check)() {
        Ok(o) => o,
        Err(e) => Outcome::new(false, format!("error: {e}")),
    };
    let took = start.elapsed();
    if let Some(b) = c.budget {
        if took > b {
            out.passed = false;
            out.detail.push_str(&format!("; took {:.1}s, budget {}s", took.as_secs_f64(), b.as_secs()));
        }
    }
    (out, took)
}

fn config(v: Value) -> Result<ExperimentConfig> {
    ExperimentConfig::from_json(&v.to_string())
}

fn polygon(k: &VPolytope) -> Value {
    json!({"type": "polygon", "vertices": k.vertices().iter().map(|p| [p[0], p[1]]).collect::<Vec<_>>()})
}

/// Equilateral triangle of area π centred at the origin.
fn triangle_area_pi() -> VPolytope {
    let side = (4.0 * std::f64::consts::PI / 3f64.sqrt()).sqrt();
    let r = side / 3f64.sqrt();
    let v: Vec<Point> = [90.0f64, 210.0, 330.0]
        .iter()
        .map(|a| Point(vec![r * a.to_radians().cos(), r * a.to_radians().sin()]))
        .collect();
    VPolytope::hull(&v).expect("triangle")
}

fn square_area_pi() -> VPolytope {
    let h = std::f64::consts::PI.sqrt() / 2.0;
    VPolytope::hull(&[Point(vec![-h, -h]), Point(vec![h, -h]), Point(vec![h, h]), Point(vec![-h, h])]).expect("square")
}

fn regular_polygon(k: usize) -> VPolytope {
    let v: Vec<Point> = (0..k)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            Point(vec![t.cos(), t.sin()])
        })
        .collect();
    VPolytope::hull(&v).expect("polygon")
}

fn random_polytope(n: usize, seed: u64, index: u64) -> Result<VPolytope> {
    let mut rng = RngStream::new(seed, index).rng();
    let m = rng.random_range(n + 2..n + 18);
    let d = Density::gaussian(1.0, n)?;
    loop {
        let p = VPolytope::hull(&sample_points(&d, m, &mut rng))?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
}

fn estimates(r: &ExperimentReport) -> (f64, f64, f64, f64) {
    let (l, rr) = (r.lhs.as_ref().expect("lhs"), r.rhs.as_ref().expect("rhs"));
    (l.mean, l.stderr, rr.mean, rr.stderr)
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default()
}

pub fn kernel_oracles() -> Result<Outcome> {
    let report = verify_kernel()?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let worst = report
        .checks
        .iter()
        .map(|c| format!("{}: {:.1e}", c.name, c.max_error))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Outcome::new(report.passed, if failed.is_empty() { worst } else { format!("failed: {}", failed.join(", ")) }))
}

pub fn petty_functional() -> Result<Outcome> {
    let q = QuadratureSpec::default();
    let sq = VPolytope::hull(&[Point(vec![-1.0, -1.0]), Point(vec![1.0, -1.0]), Point(vec![1.0, 1.0]), Point(vec![-1.0, 1.0])])?;
    let square = petty_product_exact(&sq)?;
    let ball2 = petty_ball_value(2);
    let gon = petty_product(&regular_polygon(64), &q)?;
    let mut worst = 0.0f64;
    for (n, count) in [(2usize, 200u64), (3, 50)] {
        let ball = petty_ball_value(n);
        for i in 0..count {
            let k = random_polytope(n, 0xacce_0002 + n as u64, i)?;
            worst = worst.max(petty_product(&k, &q)? / ball);
        }
    }
    let ok_square = (square - 2.0).abs() <= 1e-6;
    let ok_gon = (gon / ball2 - 1.0).abs() <= 1e-2;
    let ok_random = worst <= 1.0 + 1e-2;
    Ok(Outcome::new(
        ok_square && ok_gon && ok_random,
        format!("square {square:.9}, 64-gon {gon:.6} vs {ball2:.6}, max product/ball over 250 random {worst:.6}"),
    ))
}

pub fn cauchy_bound() -> Result<Outcome> {
    let q = QuadratureSpec::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in [2, 3] {
        for (_, k) in standard_family(n) {
            let polar = zonotope_polar_measure(&projection_body(&k)?, &RadialMeasure::Lebesgue, &q)?;
            let lhs = unit_ball_volume(n).powf(1.0 / n as f64) * polar.powf(-1.0 / n as f64);
            worst = worst.max(lhs / surface_area(&k)?);
            count += 1;
        }
    }
    Ok(Outcome::new(worst <= 1.0 + 1e-6, format!("max ratio to surface area {worst:.6} over {count} bodies")))
}

pub fn polar_projection_run() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for measure in [json!({"type": "lebesgue"}), json!({"type": "gaussian", "sigma": 1.0})] {
        let cfg = config(json!({
            "experiment": "thm12", "dim": 2,
            "blocks": [{"density": {"type": "uniform", "body": polygon(&triangle_area_pi())}, "m": 4}],
            "arguments": [{"block": 0, "c": {"type": "simplex"}}],
            "measure": measure, "trials": 20000, "seed": 7
        }))?;
        let r = run(&cfg)?;
        let (l, ls, rr, rs) = estimates(&r);
        ok &= r.verdict != Verdict::Violated && l <= rr;
        parts.push(format!("{}: {} lhs {l:.5}±{ls:.5} rhs {rr:.5}±{rs:.5}", measure["type"].as_str().unwrap(), verdict_name(r.verdict)));
    }
    Ok(Outcome::new(ok, parts.join("; ")))
}

pub fn mixed_volume_run() -> Result<Outcome> {
    let cfg = config(json!({
        "experiment": "empmixed", "dim": 2,
        "blocks": [{"density": {"type": "uniform", "body": polygon(&square_area_pi())}, "m": 4}],
        "arguments": [{"block": 0, "c": {"type": "simplex"}}, {"block": 0, "c": {"type": "simplex"}}],
        "trials": 50000, "seed": 5
    }))?;
    let r = run(&cfg)?;
    let (l, ls, rr, rs) = estimates(&r);
    let separated = r.verdict == Verdict::Consistent;
    let t = triangle_area_pi();
    let d = Density::uniform(t.clone())?;
    let (e, _) = petty_core::harness::estimate(100_000, 12, |s| Ok(random_hull(&d, 3, &mut s.rng())?.volume() / t.volume()))?;
    let z = (e.mean - 1.0 / 12.0) / e.stderr;
    Ok(Outcome::new(
        separated && z.abs() <= 3.0,
        format!(
            "{} lhs {l:.5}±{ls:.5} rhs {rr:.5}±{rs:.5}; E|[T]_3|/|T| = {:.5}±{:.5} (z = {z:.2})",
            verdict_name(r.verdict),
            e.mean,
            e.stderr
        ),
    ))
}

pub fn v1_run() -> Result<Outcome> {
    let sq = VPolytope::hull(&[Point(vec![-1.0, -1.0]), Point(vec![1.0, -1.0]), Point(vec![1.0, 1.0]), Point(vec![-1.0, 1.0])])?;
    let cfg = config(json!({"experiment": "emppetty2", "dim": 2, "bodies": [polygon(&sq)], "m1": 4, "m2": 4, "trials": 20000, "seed": 3}))?;
    let r = run(&cfg)?;
    let (l, ls, rr, rs) = estimates(&r);
    Ok(Outcome::new(
        l >= rr && r.verdict != Verdict::Violated,
        format!("{} lhs {l:.5}±{ls:.5} rhs {rr:.5}±{rs:.5}", verdict_name(r.verdict)),
    ))
}

pub fn lln_run() -> Result<Outcome> {
    let sq = VPolytope::hull(&[Point(vec![-1.0, -1.0]), Point(vec![1.0, -1.0]), Point(vec![1.0, 1.0]), Point(vec![-1.0, 1.0])])?;
    let tri = VPolytope::hull(&[Point(vec![0.0, 0.0]), Point(vec![1.0, 0.0]), Point(vec![0.2, 0.9])])?;
    let cfg = config(json!({
        "experiment": "lln", "dim": 2,
        "bodies": [polygon(&sq), polygon(&tri), polygon(&regular_polygon(64))],
        "sweep": {"m1": [4, 16, 64], "m2": [4, 16, 64]},
        "trials": 20000, "seed": 17
    }))?;
    let r = run(&cfg)?;
    let table = r.table.as_ref().expect("lln table");
    let last = table.rows.last().expect("rows");
    let (mean, stderr, target, z) = (last[2], last[3], last[4], last[5]);
    let spread = r.values["target_rel_spread"].as_f64().unwrap_or(f64::INFINITY);
    let converged = z.abs() <= 3.0;
    let constant = spread <= 1e-2;
    Ok(Outcome::new(
        converged && constant,
        format!(
            "m1 = m2 = 64: estimate/m2 {mean:.5}±{stderr:.5} vs target {target:.5} (z = {z:.1}, {}); target spread {spread:.2e} ({})",
            if converged { "ok" } else { "FAIL" },
            if constant { "ok" } else { "FAIL" }
        ),
    ))
}

fn random_shadow(n: usize, rng: &mut impl Rng, u: &Point) -> Result<ShadowSystem> {
    let k = rng.random_range(n + 1..n + 8);
    let base: Vec<Point> = (0..k).map(|_| Point((0..n).map(|_| rng.random_range(-1.0..1.0)).collect())).collect();
    let speeds: Vec<f64> = (0..k).map(|_| rng.random_range(-1.5..1.5)).collect();
    ShadowSystem::new(base, speeds, u.clone())
}

pub fn shephard() -> Result<Outcome> {
    let mut worst = f64::INFINITY;
    let mut count = 0;
    for n in [2usize, 3] {
        for i in 0..200u64 {
            let mut rng = RngStream::new(0xacce_0008, 10 * i + n as u64).rng();
            let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let l = u.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
            let u = Point(u.into_iter().map(|x| x / l).collect());
            let systems: Vec<ShadowSystem> = (0..n).map(|_| random_shadow(n, &mut rng, &u)).collect::<Result<_>>()?;
            let (t0, t1) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let f = |t: f64| shadow_convexity_probe(&systems, t);
            let defect = 0.5 * (f(t0)? + f(t1)?) - f(0.5 * (t0 + t1))?;
            worst = worst.min(defect);
            count += 1;
        }
    }
    Ok(Outcome::new(worst >= -1e-9, format!("min midpoint defect {worst:.3e} over {count} systems")))
}

fn reflect(p: &VPolytope, u: &Point) -> Result<VPolytope> {
    p.map_points(|v| v - &u.scale(2.0 * v.dot(u.coords())))
}

pub fn steiner_suite() -> Result<Outcome> {
    let (mut area, mut vol, mut sym, mut mid) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..50u64 {
        for n in [2usize, 3] {
            let k = random_polytope(n, 0xacce_0009, 10 * i + n as u64)?;
            let mut rng = RngStream::new(0xacce_0109, 10 * i + n as u64).rng();
            let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let l = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            let u = Point(u.into_iter().map(|x| x / l).collect());
            let s = steiner_symmetrize(&k, &u)?;
            let rel = (s.volume() / k.volume() - 1.0).abs();
            if n == 2 {
                area = area.max(rel);
            } else {
                vol = vol.max(rel);
            }
            sym = sym.max(reflect(&s, &u)?.vertex_set_distance(&s));
            mid = mid.max(shadow_at(&steiner_shadow_system(&k, &u)?, 0.5)?.vertex_set_distance(&s));
        }
    }
    let tri = triangle_area_pi();
    let seq = iterate_steiner(&tri, 10, &mut RngStream::new(19, 0).rng())?;
    let diameter = 2.0 * (tri.volume() / std::f64::consts::PI).sqrt();
    let conv = distance_to_equal_ball(seq.last().expect("steps")) / diameter;
    let ok = area <= 1e-12 && vol <= 1e-8 && sym <= 1e-9 && mid <= 1e-9 && conv < 0.05;
    Ok(Outcome::new(
        ok,
        format!(
            "area err {area:.1e}, volume err {vol:.1e}, reflection {sym:.1e}, shadow midpoint {mid:.1e}, 10-step distance {:.2}% of diameter",
            100.0 * conv
        ),
    ))
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

pub fn reproducibility() -> Result<Outcome> {
    let tri = polygon(&triangle_area_pi());
    let sq = polygon(&square_area_pi());
    let box3 = json!({"type": "cube", "dim": 3, "half": 0.8});
    let tet = json!({"type": "polytope3", "vertices": [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]});
    let configs = vec![
        json!({"experiment": "thm12", "dim": 2, "blocks": [{"density": {"type": "uniform", "body": tri}, "m": 4}],
               "arguments": [{"block": 0, "c": {"type": "simplex"}}], "trials": 500, "seed": 7}),
        json!({"experiment": "thm11", "dim": 3,
               "blocks": [{"density": {"type": "uniform", "body": box3}, "m": 3}, {"density": {"type": "uniform", "body": tet}, "m": 2}],
               "arguments": [{"block": 0, "c": {"type": "cube"}}, {"block": 1, "c": {"type": "cube"}}],
               "measure": {"type": "gaussian", "sigma": 1.0}, "trials": 100, "seed": 11}),
        json!({"experiment": "cor13", "dim": 3, "bodies": [box3, tet], "m": 3, "measure": {"type": "gaussian", "sigma": 1.0}, "trials": 100, "seed": 13}),
        json!({"experiment": "empmixed", "dim": 2, "blocks": [{"density": {"type": "uniform", "body": sq}, "m": 4}],
               "arguments": [{"block": 0, "c": {"type": "simplex"}}, {"block": 0, "c": {"type": "cube"}}], "trials": 2000, "seed": 5}),
        json!({"experiment": "emppetty2", "dim": 2, "bodies": [sq], "m1": 4, "m2": 4, "trials": 2000, "seed": 3}),
        json!({"experiment": "lln", "dim": 2, "bodies": [sq], "sweep": {"m1": [4, 8], "m2": [4, 8]}, "trials": 1000, "seed": 17}),
        json!({"experiment": "petty", "dim": 2, "bodies": [sq, tri]}),
        json!({"experiment": "symmetrize", "dim": 2, "bodies": [tri], "steps": 6, "seed": 19}),
    ];
    let mut differing = Vec::new();
    for c in &configs {
        let cfg = config(c.clone())?;
        let one = with_threads(1, || run(&cfg).map(|r| r.to_json()))?;
        let four = with_threads(4, || run(&cfg).map(|r| r.to_json()))?;
        if one != four {
            differing.push(cfg.experiment.name());
        }
    }
    Ok(Outcome::new(
        differing.is_empty(),
        if differing.is_empty() { format!("{} experiment kinds identical at 1 and 4 threads", configs.len()) } else { format!("differ: {}", differing.join(", ")) },
    ))
}
