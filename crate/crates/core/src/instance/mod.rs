//! Problem data: points, half-planes, hitting sets and their verification.

mod generate;
mod io;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

pub use crate::geom::{HalfPlane, Point};
pub use generate::generate;
pub use io::{parse_instance, parse_solution, serialize_instance, serialize_solution, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("an instance needs at least one point")]
    NoPoints,
    #[error("an instance needs at least one half-plane")]
    NoHalfplanes,
    #[error("point index {0} out of range")]
    BadIndex(usize),
}

/// Points and half-planes with stable zero-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    points: Vec<Point>,
    halfplanes: Vec<HalfPlane>,
}

impl Instance {
    pub fn new(points: Vec<Point>, halfplanes: Vec<HalfPlane>) -> Result<Self, InstanceError> {
        if points.is_empty() {
            return Err(InstanceError::NoPoints);
        }
        if halfplanes.is_empty() {
            return Err(InstanceError::NoHalfplanes);
        }
        Ok(Instance { points, halfplanes })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// Stable digest of the canonical serialization.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        serialize_instance(self).hash(&mut h);
        h.finish()
    }
}

/// Whether `p` lies in the closed half-plane `h`.
pub fn hits(p: &Point, h: &HalfPlane) -> bool {
    h.contains(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
        }
    }
}

/// A solver answer: chosen point ids (sorted), or infeasibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSet {
    pub status: Status,
    pub point_ids: Vec<usize>,
}

impl HittingSet {
    pub fn optimal(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        HittingSet {
            status: Status::Optimal,
            point_ids: ids,
        }
    }

    pub fn infeasible() -> Self {
        HittingSet {
            status: Status::Infeasible,
            point_ids: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.point_ids.len()
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// Lowest-index half-plane missed by every selected point.
    FirstViolation(usize),
}

pub fn verify_hitting_set(inst: &Instance, ids: &[usize]) -> Result<Verdict, InstanceError> {
    let chosen = ids
        .iter()
        .map(|&i| inst.points.get(i).ok_or(InstanceError::BadIndex(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(inst
        .halfplanes
        .iter()
        .position(|h| !chosen.iter().any(|p| hits(p, h)))
        .map_or(Verdict::Ok, Verdict::FirstViolation))
}
