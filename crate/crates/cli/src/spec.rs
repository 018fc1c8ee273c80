//! Polygon input files.
//!
//! ```json
//! {"name": "isosceles", "symbols": ["a"], "angles": ["a", "a", "1 - 2*a"]}
//! {"vertices": [[0, 0], [1, 0], [0.3, 0.9]]}
//! ```

use std::sync::Arc;

use lochness_core::unfold::GeometricPolygon;
use lochness_core::{AngleVector, IrrationalBasis};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angles: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolygonBody {
    Angles(AngleVector),
    Vertices(GeometricPolygon),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonSpec {
    pub name: Option<String>,
    pub body: PolygonBody,
}

impl PolygonSpec {
    pub fn from_angles(name: Option<String>, angles: AngleVector) -> Self {
        Self { name, body: PolygonBody::Angles(angles) }
    }

    pub fn to_json(&self) -> String {
        let raw = match &self.body {
            PolygonBody::Angles(a) => RawSpec {
                name: self.name.clone(),
                symbols: a.basis().symbols().to_vec(),
                angles: Some(a.literals()),
                vertices: None,
            },
            PolygonBody::Vertices(p) => RawSpec {
                name: self.name.clone(),
                symbols: Vec::new(),
                angles: None,
                vertices: Some(p.vertices().iter().map(|v| [v.x, v.y]).collect()),
            },
        };
        serde_json::to_string(&raw).expect("spec serializes")
    }
}

pub fn parse_polygon_spec(text: &str) -> Result<PolygonSpec, CliError> {
    let raw: RawSpec = serde_json::from_str(text)
        .map_err(|e| CliError::Validation(format!("polygon spec, line {} column {}: {e}", e.line(), e.column())))?;
    let body = match (raw.angles, raw.vertices) {
        (Some(_), Some(_)) => return Err(CliError::Validation("polygon spec: give either `angles` or `vertices`, not both".into())),
        (None, None) => return Err(CliError::Validation("polygon spec: missing `angles` or `vertices`".into())),
        (Some(lits), None) => {
            let basis = IrrationalBasis::new(raw.symbols.iter().cloned()).map_err(|e| CliError::Validation(format!("field `symbols`: {e}")))?;
            let angles = AngleVector::parse(&Arc::new(basis), &lits).map_err(|e| CliError::Validation(format!("field `angles`: {e}")))?;
            PolygonBody::Angles(angles)
        }
        (None, Some(coords)) => {
            if !raw.symbols.is_empty() {
                return Err(CliError::Validation("field `symbols` only applies to `angles`".into()));
            }
            PolygonBody::Vertices(GeometricPolygon::new(&coords).map_err(|e| CliError::Validation(format!("field `vertices`: {e}")))?)
        }
    };
    Ok(PolygonSpec { name: raw.name, body })
}
