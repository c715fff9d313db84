//! JSON body literals.

use serde::{Deserialize, Serialize};

use super::{ball_polytope, Body, Point, VPolytope, Zonotope};
use crate::{GeomError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyLiteral {
    Polygon { vertices: Vec<[f64; 2]> },
    Polytope3 { vertices: Vec<[f64; 3]> },
    Cube { dim: usize, half: f64 },
    /// `conv{0, e_1, …, e_n}`.
    Simplex { dim: usize },
    /// Regular polytope inscribed in the ball of the given radius.
    Ball { dim: usize, radius: f64, facets: usize },
    Zonotope { generators: Vec<Vec<f64>> },
}

impl BodyLiteral {
    pub fn dim(&self) -> usize {
        match self {
            BodyLiteral::Polygon { .. } => 2,
            BodyLiteral::Polytope3 { .. } => 3,
            BodyLiteral::Cube { dim, .. } | BodyLiteral::Simplex { dim } | BodyLiteral::Ball { dim, .. } => *dim,
            BodyLiteral::Zonotope { generators } => generators.first().map_or(0, |g| g.len()),
        }
    }

    pub fn to_body(&self) -> Result<Body> {
        match self {
            BodyLiteral::Zonotope { generators } => {
                let dim = self.dim();
                if dim == 0 {
                    return Err(GeomError::InvalidParameter("zonotope literal needs at least one generator".into()));
                }
                Ok(Body::Zonotope(Zonotope::new(dim, generators.iter().map(|g| Point(g.clone())).collect())?))
            }
            _ => Ok(Body::Polytope(self.to_vpolytope()?)),
        }
    }

    pub fn to_vpolytope(&self) -> Result<VPolytope> {
        match self {
            BodyLiteral::Polygon { vertices } => VPolytope::hull(&vertices.iter().map(|&v| Point::from(v)).collect::<Vec<_>>()),
            BodyLiteral::Polytope3 { vertices } => VPolytope::hull(&vertices.iter().map(|&v| Point::from(v)).collect::<Vec<_>>()),
            BodyLiteral::Cube { dim, half } => {
                check_dim(*dim)?;
                if !(*half > 0.0) {
                    return Err(GeomError::InvalidParameter(format!("cube half-width must be positive, got {half}")));
                }
                let pts: Vec<Point> = (0..1usize << dim)
                    .map(|mask| Point((0..*dim).map(|i| if mask >> i & 1 == 1 { *half } else { -*half }).collect()))
                    .collect();
                VPolytope::hull(&pts)
            }
            BodyLiteral::Simplex { dim } => {
                check_dim(*dim)?;
                let mut pts = vec![Point::zeros(*dim)];
                pts.extend((0..*dim).map(|i| Point::basis(*dim, i)));
                VPolytope::hull(&pts)
            }
            BodyLiteral::Ball { dim, radius, facets } => {
                if !(*radius > 0.0) {
                    return Err(GeomError::InvalidParameter(format!("ball radius must be positive, got {radius}")));
                }
                let unit = ball_polytope(*dim, *facets, 1.0)?;
                let r = unit.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
                unit.scale(radius / r)
            }
            BodyLiteral::Zonotope { .. } => self.to_body()?.to_vpolytope(),
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(GeomError::UnsupportedDimension(dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> BodyLiteral {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn parses_every_kind() {
        let sq = parse(r#"{"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]}"#);
        assert!((sq.to_vpolytope().unwrap().volume() - 1.0).abs() < 1e-15);
        let t = parse(r#"{"type":"polytope3","vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}"#);
        assert!((t.to_vpolytope().unwrap().volume() - 1.0 / 6.0).abs() < 1e-15);
        let c = parse(r#"{"type":"cube","dim":3,"half":1}"#);
        assert!((c.to_vpolytope().unwrap().volume() - 8.0).abs() < 1e-12);
        let s = parse(r#"{"type":"simplex","dim":2}"#);
        assert!((s.to_vpolytope().unwrap().volume() - 0.5).abs() < 1e-15);
        let b = parse(r#"{"type":"ball","dim":2,"radius":2,"facets":4}"#).to_vpolytope().unwrap();
        assert!((b.volume() - 8.0).abs() < 1e-12);
        let z = parse(r#"{"type":"zonotope","generators":[[1,0],[0,1],[1,1]]}"#);
        assert!((z.to_body().unwrap().volume().unwrap() - 12.0).abs() < 1e-12);
        assert!(matches!(z.to_body().unwrap(), Body::Zonotope(_)));
    }

    #[test]
    fn round_trip_and_rejects() {
        let c = BodyLiteral::Cube { dim: 2, half: 0.5 };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"type":"cube","dim":2,"half":0.5}"#);
        assert_eq!(parse(&s), c);
        assert!(serde_json::from_str::<BodyLiteral>(r#"{"type":"blob"}"#).is_err());
        assert!(parse(r#"{"type":"cube","dim":5,"half":1}"#).to_vpolytope().is_err());
    }
}
