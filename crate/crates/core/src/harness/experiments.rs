//! Experiment runners.

use serde_json::json;

use super::config::{ExperimentConfig, ExperimentKind};
use super::estimate::{estimate, verdict, Diagnostics, Direction, EstimateWithCI, Verdict};
use super::report::{ExperimentReport, SideDiagnostics, Table};
use crate::kernel::{ball_polytope, polar, unit_ball_volume, zonotope_to_vpolytope, Body, VPolytope};
use crate::mixed::{mixed_volume_bodies, surface_measure, v1};
use crate::projection::{
    centroid_body_support, mixed_projection_of, petty_ball_value, petty_product, petty_product_exact, projection_body,
    projection_zonotope, zonotope_polar_measure, QuadratureSpec, RadialMeasure, SupportEvaluator,
};
use crate::stochastic::{random_hull, random_zonotope, sample_matrix, BlockSpec, Density, RngStream};
use crate::symmetrization::{distance_to_equal_ball, iterate_steiner};
use crate::{GeomError, Result};

/// Seed of the left-hand side (original densities).
pub fn lhs_seed(seed: u64) -> u64 {
    RngStream::derive_master(seed, 0)
}

/// Seed of the right-hand side (rearranged densities).
pub fn rhs_seed(seed: u64) -> u64 {
    RngStream::derive_master(seed, 1)
}

/// Runs the experiment named in the configuration.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::Thm12 => run_thm12(cfg),
        ExperimentKind::Thm11 => run_thm11(cfg),
        ExperimentKind::Cor13 => run_cor13(cfg),
        ExperimentKind::EmpMixed => run_empmixed(cfg),
        ExperimentKind::EmpPetty2 => run_emppetty2(cfg),
        ExperimentKind::Lln => run_lln(cfg),
        ExperimentKind::Petty => run_petty(cfg),
        ExperimentKind::Symmetrize => run_symmetrize(cfg),
    }
}

fn block_specs(cfg: &ExperimentConfig) -> Result<(BlockSpec, BlockSpec)> {
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for b in &cfg.blocks {
        let d = b.density.build(cfg.dim)?;
        rhs.push((d.rearranged(), b.m));
        lhs.push((d, b.m));
    }
    Ok((BlockSpec::new(lhs)?, BlockSpec::new(rhs)?))
}

/// Samples one matrix for all blocks and applies each argument's C-set to its block.
fn sample_arguments(cfg: &ExperimentConfig, spec: &BlockSpec, stream: RngStream) -> Result<Vec<Body>> {
    let mut rng = stream.rng();
    let x = sample_matrix(spec, &mut rng);
    let mut offsets = Vec::with_capacity(cfg.blocks.len());
    let mut start = 0;
    for b in &cfg.blocks {
        offsets.push(start);
        start += b.m;
    }
    cfg.arguments
        .iter()
        .map(|a| {
            let s = offsets[a.block];
            a.c.image(&x.block(s, s + cfg.blocks[a.block].m))
        })
        .collect()
}

fn polar_measure_of(h: &SupportEvaluator, nu: &RadialMeasure, quad: &QuadratureSpec) -> Result<f64> {
    match h.zonotope() {
        Some(z) => zonotope_polar_measure(z, nu, quad),
        None => crate::projection::polar_measure(h, nu, quad),
    }
}

/// `ν(Π°(B_1, …, B_{n−1}))`.
fn nu_polar_projection(bodies: &[Body], nu: &RadialMeasure, quad: &QuadratureSpec) -> Result<f64> {
    polar_measure_of(&mixed_projection_of(bodies)?, nu, quad)
}

fn two_sided<F>(cfg: &ExperimentConfig, dir: Direction, f: F) -> Result<ExperimentReport>
where
    F: Fn(bool, RngStream) -> Result<f64> + Sync,
{
    let (lhs, dl) = estimate(cfg.trials, lhs_seed(cfg.seed), |s| f(false, s))?;
    let (rhs, dr) = estimate(cfg.trials, rhs_seed(cfg.seed), |s| f(true, s))?;
    Ok(finish(cfg, dir, lhs, rhs, dl, dr))
}

fn finish(cfg: &ExperimentConfig, dir: Direction, lhs: EstimateWithCI, rhs: EstimateWithCI, dl: Diagnostics, dr: Diagnostics) -> ExperimentReport {
    let v = if lhs.n == 0 || rhs.n == 0 { Verdict::Inconclusive } else { verdict(&lhs, &rhs, dir) };
    let mut r = ExperimentReport::new(cfg, v);
    r.direction = Some(dir);
    r.lhs = Some(lhs);
    r.rhs = Some(rhs);
    r.diagnostics = SideDiagnostics { lhs: dl, rhs: dr };
    r
}

/// `E ν(Π°(XC)) ≤ E ν(Π°(X^# C))`.
pub fn run_thm12(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    if cfg.experiment != ExperimentKind::Thm12 {
        return Err(GeomError::InvalidParameter("not a thm12 configuration".into()));
    }
    polar_projection_experiment(cfg)
}

/// `E ν(Π°(X C_1, …, X C_{n−1})) ≤ E ν(Π°(X^# C_1, …, X^# C_{n−1}))`.
pub fn run_thm11(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    if cfg.experiment != ExperimentKind::Thm11 {
        return Err(GeomError::InvalidParameter("not a thm11 configuration".into()));
    }
    polar_projection_experiment(cfg)
}

fn polar_projection_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (lhs, rhs) = block_specs(cfg)?;
    let nu = cfg.measure.build()?;
    two_sided(cfg, Direction::LhsLeRhs, |rearranged, s| {
        let spec = if rearranged { &rhs } else { &lhs };
        let bodies = sample_arguments(cfg, spec, s)?;
        nu_polar_projection(&bodies, &nu, &cfg.quadrature)
    })
}

/// Polar mixed projection body of two empirical centroid bodies.
pub fn run_cor13(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let m = cfg.m.expect("validated");
    let nu = cfg.measure.build()?;
    let orig: Vec<Density> = cfg.bodies[..2].iter().map(|b| Density::uniform(b.to_vpolytope()?)).collect::<Result<_>>()?;
    let sym: Vec<Density> = orig.iter().map(|d| d.rearranged()).collect();
    two_sided(cfg, Direction::LhsLeRhs, |rearranged, s| {
        let dens = if rearranged { &sym } else { &orig };
        let mut rng = s.rng();
        let z: Vec<Body> = dens
            .iter()
            .map(|d| random_zonotope(d, m, &mut rng).map(|z| Body::Zonotope(z.scale(1.0 / m as f64))))
            .collect::<Result<_>>()?;
        nu_polar_projection(&z, &nu, &cfg.quadrature)
    })
}

/// `E V(X C_1, …, X C_n) ≥ E V(X^# C_1, …, X^# C_n)`, optionally with unit-ball arguments appended.
pub fn run_empmixed(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let (lhs, rhs) = block_specs(cfg)?;
    let n = cfg.dim;
    let ball = Body::Polytope(ball_polytope(n, cfg.ball_facets(), unit_ball_volume(n))?);
    two_sided(cfg, Direction::LhsGeRhs, |rearranged, s| {
        let spec = if rearranged { &rhs } else { &lhs };
        let mut bodies = sample_arguments(cfg, spec, s)?;
        bodies.extend(std::iter::repeat_n(ball.clone(), cfg.ball_args));
        mixed_volume_bodies(&bodies)
    })
}

/// `Π°K` as an explicit polytope.
pub fn polar_projection_polytope(k: &VPolytope) -> Result<VPolytope> {
    polar(&zonotope_to_vpolytope(&projection_body(k)?)?)
}

/// `E V_1([K]_{m1}, [Π°K]^∞_{m2}) ≥ E V_1([K*]_{m1}, [(Π°K)*]^∞_{m2})`.
pub fn run_emppetty2(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let k = cfg.bodies[0].to_vpolytope()?;
    let l = polar_projection_polytope(&k)?;
    let (m1, m2) = (cfg.m1.expect("validated"), cfg.m2.expect("validated"));
    let orig = [Density::uniform(k.clone())?, Density::uniform(l.clone())?];
    let sym = [orig[0].rearranged(), orig[1].rearranged()];
    let mut r = two_sided(cfg, Direction::LhsGeRhs, |rearranged, s| {
        let d = if rearranged { &sym } else { &orig };
        v1_trial(&d[0], &d[1], m1, m2, s)
    })?;
    r.value("volume_k", k.volume());
    r.value("volume_polar_projection", l.volume());
    Ok(r)
}

fn v1_trial(dk: &Density, dl: &Density, m1: usize, m2: usize, s: RngStream) -> Result<f64> {
    let mut rng = s.rng();
    let hull = random_hull(dk, m1, &mut rng)?;
    let zon = random_zonotope(dl, m2, &mut rng)?;
    v1(&hull, &Body::Zonotope(zon))
}

/// `V_1(K, Z(L))` for the centroid body of `L`.
pub fn v1_centroid_target(k: &VPolytope, l: &VPolytope) -> Result<f64> {
    let z = centroid_body_support(l)?;
    let n = k.dim() as f64;
    Ok(surface_measure(k)?.iter().map(|a| a.weight * z.eval(a.normal.coords())).sum::<f64>() / n)
}

/// Law-of-large-numbers sweep for `(1/m2) E V_1([K]_{m1}, [Π°K]^∞_{m2})`,
/// together with the deterministic limit over the configured bodies.
pub fn run_lln(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let n = cfg.dim;
    let sweep = cfg.sweep.as_ref().expect("validated");
    let k = cfg.bodies[0].to_vpolytope()?;
    let l = polar_projection_polytope(&k)?;
    let target = v1_centroid_target(&k, &l)?;
    let (dk, dl) = (Density::uniform(k.clone())?, Density::uniform(l)?);
    let mut table = Table::new(&["m1", "m2", "mean", "stderr", "target", "z"]);
    let mut diag = Diagnostics::default();
    let mut last = None;
    for (row, (&m1, &m2)) in sweep.m1.iter().zip(&sweep.m2).enumerate() {
        let seed = RngStream::derive_master(cfg.seed, 100 + row as u64);
        let (e, d) = estimate(cfg.trials, seed, |s| Ok(v1_trial(&dk, &dl, m1, m2, s)? / m2 as f64))?;
        diag.merge(&d);
        let z = (e.mean - target) / e.stderr;
        table.push(vec![m1 as f64, m2 as f64, e.mean, e.stderr, target, z]);
        last = Some(e);
    }
    let last = last.expect("non-empty sweep");
    let within = ((last.mean - target) / last.stderr).abs() <= 3.0;
    let mut r = ExperimentReport::new(cfg, if within { Verdict::Consistent } else { Verdict::Inconclusive });
    r.lhs = Some(last);
    r.diagnostics.lhs = diag;
    r.table = Some(table);
    r.value("target", target);
    r.value("within_3_stderr", within);

    let facets = cfg.ball_facets();
    let mut family = Vec::new();
    for lit in &cfg.bodies {
        let kb = lit.to_vpolytope()?;
        let lb = polar_projection_polytope(&kb)?;
        let t = v1_centroid_target(&kb, &lb)?;
        let ball = ball_polytope(n, facets, kb.volume())?;
        let ball_polar = polar_projection_polytope(&ball)?;
        let t_ball = v1_centroid_target(&ball, &ball_polar)?;
        let ratio = (lb.volume() / ball_polar.volume()).powf(1.0 / n as f64);
        let recombined = t_ball * ratio;
        let product = petty_product_exact(&kb)?;
        let ball_product = petty_product_exact(&ball)?;
        family.push(json!({
            "target": t,
            "ball_target": t_ball,
            "recombined": recombined,
            "product": product,
            "ball_product": ball_product,
            "chain_agrees": (t >= recombined) == (product <= ball_product),
        }));
    }
    let ts: Vec<f64> = family.iter().map(|f| f["target"].as_f64().unwrap()).collect();
    let mean = ts.iter().sum::<f64>() / ts.len() as f64;
    let spread = ts.iter().fold(0.0f64, |a, t| a.max((t - mean).abs())) / mean;
    r.value("family", family);
    r.value("target_rel_spread", spread);
    Ok(r)
}

/// Deterministic Petty functional of each configured body against the ball value.
pub fn run_petty(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let n = cfg.dim;
    let ball = petty_ball_value(n);
    let mut table = Table::new(&["body", "volume", "product", "product_exact", "ball_value", "ratio"]);
    let mut worst = 0.0f64;
    for (i, lit) in cfg.bodies.iter().enumerate() {
        let k = lit.to_vpolytope()?;
        let q = petty_product(&k, &cfg.quadrature)?;
        let exact = match petty_product_exact(&k) {
            Ok(v) => v,
            Err(GeomError::TooManyGenerators { .. }) => f64::NAN,
            Err(e) => return Err(e),
        };
        let best = if exact.is_nan() { q } else { exact };
        worst = worst.max(best / ball);
        table.push(vec![i as f64, k.volume(), q, exact, ball, best / ball]);
    }
    let v = if worst <= 1.0 + PETTY_TOL { Verdict::Consistent } else { Verdict::Violated };
    let mut r = ExperimentReport::new(cfg, v);
    r.value("ball_value", ball);
    r.value("max_ratio", worst);
    r.table = Some(table);
    Ok(r)
}

/// Relative slack allowed above the ball value for polytope approximations.
pub const PETTY_TOL: f64 = 1e-3;

/// Iterated Steiner symmetrization in random directions.
pub fn run_symmetrize(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let k = cfg.bodies[0].to_vpolytope()?;
    let steps = cfg.steps.unwrap_or(10);
    let mut rng = RngStream::new(cfg.seed, 0).rng();
    let seq = iterate_steiner(&k, steps, &mut rng)?;
    let n = k.dim();
    let ball_diameter = 2.0 * (k.volume() / unit_ball_volume(n)).powf(1.0 / n as f64);
    let mut table = Table::new(&["step", "vertices", "volume", "distance", "relative_distance"]);
    let mut vol_err = 0.0f64;
    for (i, b) in seq.iter().enumerate() {
        let d = distance_to_equal_ball(b);
        vol_err = vol_err.max((b.volume() / k.volume() - 1.0).abs());
        table.push(vec![i as f64, b.vertices().len() as f64, b.volume(), d, d / ball_diameter]);
    }
    let v = if vol_err <= 1e-8 { Verdict::Consistent } else { Verdict::Violated };
    let mut r = ExperimentReport::new(cfg, v);
    r.value("max_volume_error", vol_err);
    r.table = Some(table);
    Ok(r)
}

/// `ν(Π°(XC))` for one explicit coefficient body, exposed for tests and the CLI.
pub fn polar_projection_measure(body: &Body, nu: &RadialMeasure, quad: &QuadratureSpec) -> Result<f64> {
    let z = projection_zonotope(body)?;
    zonotope_polar_measure(&z, nu, quad)
}
