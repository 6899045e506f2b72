//! JSON instance and solution files.
//!
//! Coordinates are strings holding an integer or an `a/b` fraction so that
//! values survive a round trip exactly. Serialization is canonical: lowest
//! terms, sign on the numerator, no insignificant whitespace.

use serde::{Deserialize, Serialize};

use super::{HalfPlane, HittingSet, Instance, Point, Status};
use crate::geom::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}{reason}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based line of a syntax error; `None` for errors found after parsing.
    pub line: Option<usize>,
    pub reason: String,
}

impl ParseError {
    fn semantic(reason: impl Into<String>) -> Self {
        ParseError {
            line: None,
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let line = (e.line() > 0).then_some(e.line());
        ParseError {
            line,
            reason: e.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    points: Vec<[Rational; 2]>,
    halfplanes: Vec<[Rational; 3]>,
}

#[derive(Serialize, Deserialize)]
struct SolutionFile {
    status: String,
    #[serde(default)]
    size: usize,
    #[serde(default)]
    indices: Vec<usize>,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let points = file
        .points
        .into_iter()
        .map(|[x, y]| Point::new(x, y))
        .collect();
    let halfplanes = file
        .halfplanes
        .into_iter()
        .enumerate()
        .map(|(i, [nx, ny, c])| {
            HalfPlane::new(nx, ny, c)
                .map_err(|_| ParseError::semantic(format!("halfplanes[{i}]: zero normal")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Instance::new(points, halfplanes).map_err(|e| ParseError::semantic(e.to_string()))
}

pub fn serialize_instance(inst: &Instance) -> String {
    let file = InstanceFile {
        points: inst
            .points()
            .iter()
            .map(|p| [p.x.clone(), p.y.clone()])
            .collect(),
        halfplanes: inst
            .halfplanes()
            .iter()
            .map(|h| [h.nx.clone(), h.ny.clone(), h.c.clone()])
            .collect(),
    };
    serde_json::to_string(&file).expect("instance serializes")
}

pub fn serialize_solution(sol: &HittingSet) -> String {
    let file = SolutionFile {
        status: sol.status.as_str().to_string(),
        size: sol.size(),
        indices: sol.point_ids.clone(),
    };
    serde_json::to_string(&file).expect("solution serializes")
}

pub fn parse_solution(text: &str) -> Result<HittingSet, ParseError> {
    let file: SolutionFile = serde_json::from_str(text)?;
    match file.status.as_str() {
        "optimal" => {
            if file.size != file.indices.len() {
                return Err(ParseError::semantic(format!(
                    "size {} disagrees with {} indices",
                    file.size,
                    file.indices.len()
                )));
            }
            Ok(HittingSet {
                status: Status::Optimal,
                point_ids: file.indices,
            })
        }
        "infeasible" => Ok(HittingSet::infeasible()),
        other => Err(ParseError::semantic(format!("unknown status {other:?}"))),
    }
}
