//! Generator spec files.
//!
//! A JSON object with a `type` of `lattice`, `sturmian` or `kronecker`:
//!
//! ```json
//! {"type": "lattice", "basis": [1], "motif": [0, 0.25]}
//! {"type": "lattice", "basis": [[1, 0], [0, 1]]}
//! {"type": "sturmian", "theta": 0.6180339887498949, "phase": 0.1}
//! {"type": "kronecker", "family": "cosine2", "theta": 0.7071067811865476, "phase": [0, 0]}
//! {"type": "kronecker", "family": "linear", "params": [0, -1], "theta": 0.41421356237309515}
//! ```
//!
//! Unknown fields, and fields that do not apply to the given type, are
//! rejected. Decimals are parsed to the nearest `f64`.

use std::path::Path;

use delone_core::generators::{
    kronecker_source, lattice_source, sturmian_source, CurveFamily, CurveSpec, LatticeSpec, SturmianSpec,
};
use delone_core::{DeloneSource, Point};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Lattice,
    Sturmian,
    Kronecker,
}

/// A scalar (1D) or a coordinate list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Coord {
    fn to_point(&self) -> AppResult<Point> {
        let p = match self {
            Coord::Scalar(x) => Point::new(&[*x]),
            Coord::Vector(v) => Point::new(v),
        };
        p.map_err(|e| AppError::input(format!("bad coordinate {self:?}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(rename = "type")]
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<Coord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motif: Option<Vec<Coord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Coord>>,
}

pub fn parse_spec(text: &str) -> AppResult<GeneratorSpec> {
    serde_json::from_str(text).map_err(|e| AppError::input(format!("invalid generator spec: {e}")))
}

pub fn read_spec(path: &Path) -> AppResult<GeneratorSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_spec(&text).map_err(|e| AppError::input(format!("{}: {e}", path.display())))
}

impl GeneratorSpec {
    fn reject_fields(&self, names: &[&str]) -> AppResult<()> {
        let present = [
            ("family", self.family.is_some()),
            ("params", self.params.is_some()),
            ("theta", self.theta.is_some()),
            ("phase", self.phase.is_some()),
            ("motif", self.motif.is_some()),
            ("basis", self.basis.is_some()),
        ];
        for (name, set) in present {
            if set && names.contains(&name) {
                return Err(AppError::input(format!(
                    "field `{name}` does not apply to a {} spec",
                    serde_json::to_string(&self.kind).unwrap_or_default()
                )));
            }
        }
        Ok(())
    }

    fn require_theta(&self) -> AppResult<f64> {
        self.theta
            .ok_or_else(|| AppError::input("missing field `theta`"))
    }

    /// The spec with every default filled in, as embedded in reports.
    pub fn resolved(&self) -> AppResult<GeneratorSpec> {
        let mut out = self.clone();
        match self.kind {
            GeneratorKind::Lattice => {
                self.reject_fields(&["family", "params", "theta", "phase"])?;
                let basis = self.basis.clone().ok_or_else(|| AppError::input("missing field `basis`"))?;
                out.motif = Some(self.motif.clone().unwrap_or_else(|| match basis.first() {
                    Some(Coord::Vector(v)) if v.len() == 2 => vec![Coord::Vector(vec![0.0, 0.0])],
                    _ => vec![Coord::Scalar(0.0)],
                }));
            }
            GeneratorKind::Sturmian => {
                self.reject_fields(&["family", "params", "motif", "basis"])?;
                self.require_theta()?;
                match &self.phase {
                    Some(Coord::Scalar(_)) => {}
                    Some(Coord::Vector(_)) => return Err(AppError::input("sturmian `phase` is a single number")),
                    None => return Err(AppError::input("missing field `phase`")),
                }
            }
            GeneratorKind::Kronecker => {
                self.reject_fields(&["motif", "basis"])?;
                self.require_theta()?;
                let family = self.family.clone().ok_or_else(|| AppError::input("missing field `family`"))?;
                let params = self.params.clone().unwrap_or_default();
                CurveFamily::from_params(&family, &params)?;
                out.params = Some(params);
                out.phase = Some(match &self.phase {
                    None => Coord::Vector(vec![0.0, 0.0]),
                    Some(Coord::Vector(v)) if v.len() == 2 => Coord::Vector(v.clone()),
                    Some(_) => return Err(AppError::input("kronecker `phase` is a pair [x, y]")),
                });
            }
        }
        Ok(out)
    }

    /// Validate and construct the source.
    pub fn build(&self) -> AppResult<Box<dyn DeloneSource>> {
        let spec = self.resolved()?;
        Ok(match spec.kind {
            GeneratorKind::Lattice => {
                let basis = spec
                    .basis
                    .iter()
                    .flatten()
                    .map(Coord::to_point)
                    .collect::<AppResult<Vec<_>>>()?;
                let motif = spec
                    .motif
                    .iter()
                    .flatten()
                    .map(Coord::to_point)
                    .collect::<AppResult<Vec<_>>>()?;
                let dim = basis.first().map_or(0, Point::dim);
                if basis.len() != dim {
                    return Err(AppError::input(format!(
                        "lattice basis needs {dim} vectors of dimension {dim}, got {}",
                        basis.len()
                    )));
                }
                Box::new(lattice_source(&LatticeSpec { basis, motif })?)
            }
            GeneratorKind::Sturmian => {
                let Some(Coord::Scalar(phase)) = spec.phase else {
                    unreachable!("checked by resolved")
                };
                Box::new(sturmian_source(&SturmianSpec {
                    theta: spec.require_theta()?,
                    phase,
                })?)
            }
            GeneratorKind::Kronecker => {
                let family = CurveFamily::from_params(
                    spec.family.as_deref().unwrap_or_default(),
                    spec.params.as_deref().unwrap_or_default(),
                )?;
                let Some(Coord::Vector(phase)) = &spec.phase else {
                    unreachable!("checked by resolved")
                };
                Box::new(kronecker_source(&CurveSpec {
                    family,
                    theta: spec.require_theta()?,
                    phase: (phase[0], phase[1]),
                })?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use delone_core::sources::materialize;
    use delone_core::Ball;

    fn build(text: &str) -> AppResult<Box<dyn DeloneSource>> {
        parse_spec(text)?.build()
    }

    #[test]
    fn lattice_specs() {
        let z = build(r#"{"type": "lattice", "basis": [1]}"#).unwrap();
        assert_eq!(materialize(&z, &Ball::interval(0.0, 10.0)).unwrap().len(), 21);
        let z2 = build(r#"{"type": "lattice", "basis": [[1, 0], [0, 1]], "motif": [[0.5, 0.5]]}"#).unwrap();
        assert_eq!(z2.dim(), 2);
        assert!(build(r#"{"type": "lattice", "basis": [[1, 0]]}"#).is_err());
    }

    #[test]
    fn defaults_resolved() {
        let k = parse_spec(r#"{"type": "kronecker", "family": "cosine2", "theta": 0.7071067811865476}"#)
            .unwrap()
            .resolved()
            .unwrap();
        assert_eq!(k.phase, Some(Coord::Vector(vec![0.0, 0.0])));
        assert_eq!(k.params, Some(vec![]));
    }

    #[test]
    fn rejected_specs() {
        let cases = [
            (r#"{"type": "lattice", "basis": [1], "colour": 3}"#, "unknown field"),
            (r#"{"type": "lattice", "basis": [1], "theta": 0.3}"#, "does not apply"),
            (r#"{"type": "sturmian", "theta": 0.5, "phase": 0.1}"#, "theta too close to rational 1/2"),
            (r#"{"type": "sturmian", "theta": 0.6180339887498949}"#, "missing field `phase`"),
            (
                r#"{"type": "kronecker", "family": "linear", "params": [0, 0.5], "theta": 0.7071067811865476}"#,
                "endpoint_defect=0.5",
            ),
            (r#"{"type": "kronecker", "family": "spiral", "theta": 0.7071067811865476}"#, "unknown curve family"),
            (r#"{"type": "torus"}"#, "unknown variant"),
        ];
        for (text, needle) in cases {
            let msg = match build(text) {
                Err(AppError::Input(m)) => m,
                Err(e) => panic!("{text}: wrong error kind {e}"),
                Ok(_) => panic!("{text}: accepted"),
            };
            assert!(msg.contains(needle), "{text}: {msg}");
        }
    }

    #[test]
    fn decimals_parse_exactly() {
        let s = parse_spec(r#"{"type": "sturmian", "theta": 0.6180339887498949, "phase": 0.1}"#).unwrap();
        assert_eq!(s.theta, Some(0.6180339887498949));
        let back = parse_spec(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
