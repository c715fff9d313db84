//! Experiment configuration and validation.

use serde::{Deserialize, Serialize};

use crate::kernel::{linear_image, Body, BodyLiteral, Matrix, MSpec, Point, VPolytope, Zonotope};
use crate::projection::{QuadratureSpec, RadialMeasure};
use crate::stochastic::{lp_image, Density};
use crate::{GeomError, Result};

pub const DEFAULT_TRIALS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Thm12,
    Thm11,
    Cor13,
    EmpMixed,
    EmpPetty2,
    Lln,
    Petty,
    Symmetrize,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Thm12 => "thm12",
            ExperimentKind::Thm11 => "thm11",
            ExperimentKind::Cor13 => "cor13",
            ExperimentKind::EmpMixed => "empmixed",
            ExperimentKind::EmpPetty2 => "emppetty2",
            ExperimentKind::Lln => "lln",
            ExperimentKind::Petty => "petty",
            ExperimentKind::Symmetrize => "symmetrize",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DensityConfig {
    Uniform {
        body: BodyLiteral,
        #[serde(default)]
        rearranged: bool,
    },
    Gaussian { sigma: f64 },
}

impl DensityConfig {
    pub fn build(&self, dim: usize) -> Result<Density> {
        match self {
            DensityConfig::Uniform { body, rearranged } => {
                let d = Density::uniform(body.to_vpolytope()?)?;
                if d.dim() != dim {
                    return Err(GeomError::DimensionMismatch { expected: dim, got: d.dim() });
                }
                Ok(if *rearranged { d.rearranged() } else { d })
            }
            DensityConfig::Gaussian { sigma } => Density::gaussian(*sigma, dim),
        }
    }
}

/// Coefficient set `C ⊂ ℝ^m` applied to a block of `m` columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CSet {
    /// `S_m`: the image is the hull of the columns.
    Simplex,
    /// `B_∞^m`: the image is the zonotope of the columns.
    Cube,
    /// `B_1^m`: the image is the symmetric hull of the columns.
    Cross,
    /// `B_p^m`.
    Lp { p: f64 },
    /// An unconditional polytope `M ⊂ ℝ^m`, giving the M-sum of the column segments.
    Msum { vertices: Vec<Vec<f64>> },
}

impl CSet {
    /// Dimension of `C` inside `ℝ^m`.
    pub fn affine_dim(&self, m: usize) -> usize {
        match self {
            CSet::Simplex => m - 1,
            _ => m,
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        match self {
            CSet::Lp { p } if !(*p >= 1.0) => Err(GeomError::InvalidParameter(format!("lp C-set needs p >= 1, got {p}"))),
            CSet::Msum { vertices } => {
                if vertices.iter().any(|v| v.len() != m) {
                    return Err(GeomError::InvalidParameter(format!("msum vertices must have {m} coordinates")));
                }
                MSpec::polytope_m(VPolytope::from_vertices(m, vertices.iter().map(|v| Point(v.clone())).collect())?)?;
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `XC` for a sampled matrix `X`.
    pub fn image(&self, x: &Matrix) -> Result<Body> {
        match self {
            CSet::Simplex => Ok(Body::Polytope(VPolytope::hull(x.columns())?)),
            CSet::Cube => Ok(Body::Zonotope(Zonotope::new(x.rows(), x.columns().to_vec())?)),
            CSet::Lp { p } if p.is_infinite() => Ok(Body::Zonotope(Zonotope::new(x.rows(), x.columns().to_vec())?)),
            CSet::Cross => Ok(Body::Polytope(lp_image(x, 1.0, 0)?)),
            CSet::Lp { p } => Ok(Body::Polytope(lp_image(x, *p, crate::stochastic::default_lp_directions(x.rows()))?)),
            CSet::Msum { vertices } => {
                let m = VPolytope::from_vertices(x.cols(), vertices.iter().map(|v| Point(v.clone())).collect())?;
                Ok(Body::Polytope(linear_image(x, &m)?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockConfig {
    pub density: DensityConfig,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentConfig {
    pub block: usize,
    pub c: CSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
#[derive(Default)]
pub enum MeasureConfig {
    #[default]
    Lebesgue,
    Gaussian { sigma: f64 },
    Ball { radius: f64 },
}


impl MeasureConfig {
    pub fn build(&self) -> Result<RadialMeasure> {
        match self {
            MeasureConfig::Lebesgue => Ok(RadialMeasure::Lebesgue),
            MeasureConfig::Gaussian { sigma } => RadialMeasure::gaussian(*sigma),
            MeasureConfig::Ball { radius } => RadialMeasure::ball(*radius),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub m1: Vec<usize>,
    pub m2: Vec<usize>,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arguments: Vec<ArgumentConfig>,
    /// Bodies for experiments that take them directly (cor13, emppetty2, lln, petty, symmetrize).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bodies: Vec<BodyLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    /// Number of unit-ball arguments appended in the mixed-volume experiment.
    #[serde(default, skip_serializing_if = "is_default")]
    pub ball_args: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default)]
    pub measure: MeasureConfig,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    /// Facet count of ball approximations; 64 in the plane and 320 in space by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball_facets: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn invalid(msg: impl Into<String>) -> GeomError {
    GeomError::InvalidParameter(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| invalid(format!("config: {e}")))
    }

    pub fn ball_facets(&self) -> usize {
        self.ball_facets.unwrap_or_else(|| crate::stochastic::default_ball_facets(self.dim))
    }

    fn require_bodies(&self, count: usize) -> Result<()> {
        if self.bodies.len() < count {
            return Err(invalid(format!("{} needs {count} bodies, got {}", self.experiment.name(), self.bodies.len())));
        }
        for b in &self.bodies {
            if b.dim() != self.dim {
                return Err(GeomError::DimensionMismatch { expected: self.dim, got: b.dim() });
            }
        }
        Ok(())
    }

    fn validate_arguments(&self, count: usize) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(invalid("at least one block is required"));
        }
        for b in &self.blocks {
            if b.m == 0 {
                return Err(invalid("block size m must be at least 1"));
            }
            b.density.build(self.dim)?;
        }
        if self.arguments.len() != count {
            return Err(invalid(format!("{} needs {count} arguments, got {}", self.experiment.name(), self.arguments.len())));
        }
        for a in &self.arguments {
            let block = self.blocks.get(a.block).ok_or_else(|| invalid(format!("argument refers to missing block {}", a.block)))?;
            a.c.validate(block.m)?;
        }
        Ok(())
    }

    /// Rejects configurations that do not match the experiment.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        if n != 2 && n != 3 {
            return Err(GeomError::UnsupportedDimension(n));
        }
        if self.trials == 0 && !matches!(self.experiment, ExperimentKind::Petty | ExperimentKind::Symmetrize) {
            return Err(invalid("trials must be at least 1"));
        }
        self.measure.build()?;
        let lebesgue = self.measure == MeasureConfig::Lebesgue;
        match self.experiment {
            ExperimentKind::Thm12 => {
                if self.blocks.len() != 1 {
                    return Err(invalid("thm12 takes exactly one block"));
                }
                self.validate_arguments(1)?;
                let (c, m) = (&self.arguments[0].c, self.blocks[0].m);
                if lebesgue && c.affine_dim(m) < n {
                    return Err(invalid(format!(
                        "lebesgue measure needs a full-dimensional image: m = {m} is too small for this C-set in dimension {n}"
                    )));
                }
            }
            ExperimentKind::Thm11 => {
                self.validate_arguments(n - 1)?;
                for a in &self.arguments {
                    let m = self.blocks[a.block].m;
                    if a.c.affine_dim(m) != m {
                        return Err(invalid("thm11 needs C-sets with dim(C_i) = m_i; the simplex S_m has dimension m - 1"));
                    }
                }
            }
            ExperimentKind::Cor13 => {
                if n != 3 {
                    return Err(invalid("cor13 is defined for dimension 3"));
                }
                self.require_bodies(2)?;
                let m = self.m.ok_or_else(|| invalid("cor13 needs m"))?;
                if m == 0 || (lebesgue && m < 2) {
                    return Err(invalid("cor13 with lebesgue measure needs m >= 2"));
                }
            }
            ExperimentKind::EmpMixed => {
                if self.ball_args >= n {
                    return Err(invalid("ball_args must be smaller than the dimension"));
                }
                self.validate_arguments(n - self.ball_args)?;
            }
            ExperimentKind::EmpPetty2 => {
                self.require_bodies(1)?;
                let (m1, m2) = (self.m1.ok_or_else(|| invalid("emppetty2 needs m1"))?, self.m2.ok_or_else(|| invalid("emppetty2 needs m2"))?);
                if m1 < n || m2 < n {
                    return Err(invalid(format!("emppetty2 needs m1, m2 >= {n}")));
                }
            }
            ExperimentKind::Lln => {
                self.require_bodies(1)?;
                let s = self.sweep.as_ref().ok_or_else(|| invalid("lln needs a sweep"))?;
                if s.m1.is_empty() || s.m1.len() != s.m2.len() {
                    return Err(invalid("lln sweep lists m1 and m2 must be non-empty and of equal length"));
                }
                if s.m1.iter().chain(&s.m2).any(|&m| m == 0) {
                    return Err(invalid("sweep sizes must be at least 1"));
                }
            }
            ExperimentKind::Petty | ExperimentKind::Symmetrize => self.require_bodies(1)?,
        }
        for b in &self.bodies {
            b.to_vpolytope()?;
        }
        Ok(())
    }
}
