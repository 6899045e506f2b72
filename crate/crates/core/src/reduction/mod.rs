//! From half-planes and points to arcs on a combinatorial circle.
//!
//! Half-planes are placed on a circle by the angle of their normals, read
//! counterclockwise from the west direction: positions `0..t` hold the lower
//! half-planes, `t..n` the upper ones. A point owns one arc per maximal
//! cyclic run of positions whose half-planes it hits. Positions are 0-based.

mod reduced;
mod tree;

use crate::geom::{compare_ccw_from_west, HalfPlane, Point};

pub use reduced::{
    anchor_sublist, build_envelope_trees, build_reduced_arcs, dualize, lower_upper_arcs,
    AnchorResult, Duals, QueryPoint, Side, Trees,
};
pub use tree::EnvelopeTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("half-plane {0} has a horizontal normal")]
    HorizontalNormal(usize),
    #[error("half-planes {0} and {1} share a normal direction")]
    DuplicateNormal(usize, usize),
    #[error("point {0} hits every half-plane")]
    PointHitsAll(usize),
    #[error("dual x-order disagrees with circle order at position {0}")]
    InternalOrderMismatch(usize),
    #[error("point {point} misses seed position {position}")]
    SeedNotHit { point: usize, position: usize },
}

/// Cyclic order of the half-planes around the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleInstance {
    order: Vec<usize>,
    t: usize,
    position_of: Vec<usize>,
}

impl CircleInstance {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Number of lower half-planes; they occupy positions `0..t`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Half-plane ids by position.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position_of(&self, id: usize) -> usize {
        self.position_of[id]
    }
}

/// Sorts half-planes by normal angle from the west. Normals must be
/// non-horizontal and pairwise distinct.
pub fn build_circle(halfplanes: &[HalfPlane]) -> Result<CircleInstance, ReductionError> {
    if let Some(i) = halfplanes.iter().position(|h| h.ny.is_zero()) {
        return Err(ReductionError::HorizontalNormal(i));
    }
    let normals: Vec<_> = halfplanes.iter().map(|h| h.normal()).collect();
    let cmp = |a: &usize, b: &usize| {
        compare_ccw_from_west(&normals[*a], &normals[*b]).expect("checked non-horizontal")
    };
    let mut order: Vec<usize> = (0..halfplanes.len()).collect();
    order.sort_by(cmp);
    if let Some(w) = order.windows(2).find(|w| cmp(&w[0], &w[1]).is_eq()) {
        return Err(ReductionError::DuplicateNormal(
            w[0].min(w[1]),
            w[0].max(w[1]),
        ));
    }
    let t = order
        .iter()
        .take_while(|&&i| halfplanes[i].is_lower())
        .count();
    let mut position_of = vec![0; order.len()];
    for (pos, &id) in order.iter().enumerate() {
        position_of[id] = pos;
    }
    Ok(CircleInstance {
        order,
        t,
        position_of,
    })
}

/// The positions `start, start+1, ..., end` taken cyclically, owned by a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub owner: usize,
    pub start: usize,
    pub end: usize,
}

impl Arc {
    pub fn new(owner: usize, start: usize, end: usize) -> Self {
        Arc { owner, start, end }
    }

    /// Number of positions covered on a circle of `n` positions.
    pub fn len(&self, n: usize) -> usize {
        if self.start <= self.end {
            self.end - self.start + 1
        } else {
            n - self.start + self.end + 1
        }
    }

    pub fn covers(&self, pos: usize, n: usize) -> bool {
        (pos + n - self.start) % n < self.len(n)
    }

    pub fn positions(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len(n)).map(move |k| (self.start + k) % n)
    }

    /// Whether every position of `other` is covered by `self`.
    pub fn contains(&self, other: &Arc, n: usize) -> bool {
        if self.len(n) == n {
            return true;
        }
        let offset = (other.start + n - self.start) % n;
        offset + other.len(n) <= self.len(n)
    }
}

/// Maximal cyclic runs of `true` in `hit`, each as an arc of `owner`.
pub fn maximal_runs(owner: usize, hit: &[bool]) -> Result<Vec<Arc>, ReductionError> {
    let n = hit.len();
    let Some(miss) = hit.iter().position(|&b| !b) else {
        return Err(ReductionError::PointHitsAll(owner));
    };
    let mut arcs = Vec::new();
    let mut run_start = None;
    for k in 1..=n {
        let pos = (miss + k) % n;
        match (hit[pos], run_start) {
            (true, None) => run_start = Some(pos),
            (false, Some(s)) => {
                arcs.push(Arc::new(owner, s, (pos + n - 1) % n));
                run_start = None;
            }
            _ => {}
        }
    }
    Ok(arcs)
}

/// Every maximal arc of every point, in `O(n m)` time.
pub fn build_full_arcs(
    points: &[Point],
    halfplanes: &[HalfPlane],
    circle: &CircleInstance,
) -> Result<Vec<Arc>, ReductionError> {
    let mut arcs = Vec::new();
    for (owner, p) in points.iter().enumerate() {
        let hit: Vec<bool> = circle
            .order
            .iter()
            .map(|&id| halfplanes[id].contains(p))
            .collect();
        arcs.extend(maximal_runs(owner, &hit)?);
    }
    Ok(arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::e1;

    fn h(a: i64, b: i64, c: i64) -> HalfPlane {
        HalfPlane::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn circle_examples() {
        let inst = e1();
        let c = build_circle(inst.halfplanes()).unwrap();
        assert_eq!(c.order(), &[0, 1, 2, 3]);
        assert_eq!(c.t(), 2);

        let c = build_circle(&[h(1, -1, 0)]).unwrap();
        assert_eq!((c.order(), c.t()), (&[0][..], 1));

        let c = build_circle(&[h(0, 1, 0), h(0, -1, 0)]).unwrap();
        assert_eq!((c.order(), c.t()), (&[1, 0][..], 1));
        assert_eq!(c.position_of(0), 1);

        assert_eq!(
            build_circle(&[h(1, 1, 0), h(2, 2, 5)]),
            Err(ReductionError::DuplicateNormal(0, 1))
        );
        assert_eq!(
            build_circle(&[h(1, 1, 0), h(2, 0, 5)]),
            Err(ReductionError::HorizontalNormal(1))
        );
    }

    #[test]
    fn full_arcs_of_e1() {
        let inst = e1();
        let c = build_circle(inst.halfplanes()).unwrap();
        let arcs = build_full_arcs(inst.points(), inst.halfplanes(), &c).unwrap();
        assert_eq!(
            arcs,
            vec![
                Arc::new(0, 2, 3),
                Arc::new(1, 1, 2),
                Arc::new(2, 0, 1),
                Arc::new(3, 3, 0)
            ]
        );
    }

    #[test]
    fn runs() {
        assert_eq!(
            maximal_runs(0, &[false, true, false, false]).unwrap(),
            vec![Arc::new(0, 1, 1)]
        );
        assert_eq!(
            maximal_runs(0, &[true, false, true, false]).unwrap(),
            vec![Arc::new(0, 2, 2), Arc::new(0, 0, 0)]
        );
        assert_eq!(
            maximal_runs(0, &[true, true, false, true]).unwrap(),
            vec![Arc::new(0, 3, 1)]
        );
        assert!(maximal_runs(0, &[false, false]).unwrap().is_empty());
        assert_eq!(
            maximal_runs(5, &[true, true]),
            Err(ReductionError::PointHitsAll(5))
        );
    }

    #[test]
    fn arc_geometry() {
        let a = Arc::new(0, 3, 0);
        assert_eq!(a.len(4), 2);
        assert!(a.covers(3, 4) && a.covers(0, 4) && !a.covers(1, 4));
        assert_eq!(a.positions(4).collect::<Vec<_>>(), vec![3, 0]);
        assert!(Arc::new(0, 2, 1).contains(&a, 4));
        assert!(Arc::new(0, 0, 3).contains(&a, 4));
        assert!(!Arc::new(0, 0, 2).contains(&a, 4));
        assert!(Arc::new(0, 3, 3).len(4) == 1 && a.contains(&Arc::new(1, 0, 0), 4));
    }
}
