use std::collections::HashMap;

use rayon::prelude::*;

use super::{Arc, CircleInstance, EnvelopeTree, ReductionError};
use crate::geom::{HalfPlane, Line, Point, UpperEnvelope};

/// A point together with its mirror image under `y -> -y`; sides query
/// whichever copy lives in their frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPoint {
    pub direct: Point,
    pub reflected: Point,
}

impl QueryPoint {
    pub fn new(p: &Point) -> Self {
        QueryPoint {
            direct: p.clone(),
            reflected: p.reflect_y(),
        }
    }
}

/// One group of the circle as an envelope tree over lower half-planes.
///
/// The lower group is stored as is. The upper group is mirrored by
/// `y -> -y` and reversed, so that in local order the bounding-line slopes
/// increase on both sides. Global position `base + i` is local `i` on the
/// lower side and local `len - 1 - i` on the upper side.
#[derive(Debug, Clone)]
pub struct Side {
    upper: bool,
    base: usize,
    tree: EnvelopeTree,
}

impl Side {
    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn is_upper(&self) -> bool {
        self.upper
    }

    pub fn tree(&self) -> &EnvelopeTree {
        &self.tree
    }

    /// Global positions covered, as `base..base + len`.
    pub fn positions(&self) -> std::ops::Range<usize> {
        self.base..self.base + self.len()
    }

    pub fn to_global(&self, local: usize) -> usize {
        if self.upper {
            self.base + self.len() - 1 - local
        } else {
            self.base + local
        }
    }

    pub fn to_local(&self, global: usize) -> usize {
        if self.upper {
            self.base + self.len() - 1 - global
        } else {
            global - self.base
        }
    }

    pub fn frame<'a>(&self, q: &'a QueryPoint) -> &'a Point {
        if self.upper {
            &q.reflected
        } else {
            &q.direct
        }
    }

    /// Smallest global position `>= from` in this group whose half-plane `q`
    /// misses.
    pub fn next_unhit(&self, from: usize, q: &QueryPoint) -> Option<usize> {
        let range = self.positions();
        if from >= range.end {
            return None;
        }
        let local = self.to_local(from.max(range.start));
        let found = if self.upper {
            self.tree.last_unhit(local, self.frame(q))
        } else {
            self.tree.first_unhit(local, self.frame(q))
        };
        found.map(|i| self.to_global(i))
    }

    /// Largest global position `<= from` in this group whose half-plane `q`
    /// misses.
    pub fn prev_unhit(&self, from: usize, q: &QueryPoint) -> Option<usize> {
        let range = self.positions();
        if from < range.start {
            return None;
        }
        let local = self.to_local(from.min(range.end - 1));
        let found = if self.upper {
            self.tree.first_unhit(local, self.frame(q))
        } else {
            self.tree.last_unhit(local, self.frame(q))
        };
        found.map(|i| self.to_global(i))
    }
}

/// Envelope trees for both groups of a circle; an empty group has none.
#[derive(Debug, Clone)]
pub struct Trees {
    n: usize,
    t: usize,
    lower: Option<Side>,
    upper: Option<Side>,
}

pub fn build_envelope_trees(halfplanes: &[HalfPlane], circle: &CircleInstance) -> Trees {
    let (n, t) = (circle.n(), circle.t());
    let order = circle.order();
    let lower = (t > 0).then(|| Side {
        upper: false,
        base: 0,
        tree: EnvelopeTree::new(
            order[..t]
                .iter()
                .map(|&id| halfplanes[id].clone())
                .collect(),
        ),
    });
    let upper = (t < n).then(|| Side {
        upper: true,
        base: t,
        tree: EnvelopeTree::new(
            order[t..]
                .iter()
                .rev()
                .map(|&id| halfplanes[id].reflect_y())
                .collect(),
        ),
    });
    Trees { n, t, lower, upper }
}

impl Trees {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn lower(&self) -> Option<&Side> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Side> {
        self.upper.as_ref()
    }

    fn sides(&self) -> impl DoubleEndedIterator<Item = &Side> {
        self.lower.iter().chain(self.upper.iter())
    }

    pub fn hits(&self, pos: usize, q: &QueryPoint) -> bool {
        let side = if pos < self.t {
            self.lower.as_ref()
        } else {
            self.upper.as_ref()
        }
        .expect("position in range");
        side.tree.hits(side.to_local(pos), side.frame(q))
    }

    /// Smallest position in `from..n` whose half-plane `q` misses.
    pub fn next_unhit(&self, from: usize, q: &QueryPoint) -> Option<usize> {
        self.sides().find_map(|s| s.next_unhit(from, q))
    }

    /// Largest position in `0..=from` whose half-plane `q` misses.
    pub fn prev_unhit(&self, from: usize, q: &QueryPoint) -> Option<usize> {
        self.sides().rev().find_map(|s| s.prev_unhit(from, q))
    }

    /// The maximal cyclic run of hit positions through `anchor`, or `None`
    /// when `q` misses the anchor itself.
    pub fn maximal_hit_run(
        &self,
        owner: usize,
        q: &QueryPoint,
        anchor: usize,
    ) -> Result<Option<Arc>, ReductionError> {
        if !self.hits(anchor, q) {
            return Ok(None);
        }
        let n = self.n;
        let after = if anchor + 1 < n {
            self.next_unhit(anchor + 1, q)
        } else {
            None
        };
        let miss_after = after
            .or_else(|| self.next_unhit(0, q))
            .ok_or(ReductionError::PointHitsAll(owner))?;
        let before = if anchor > 0 {
            self.prev_unhit(anchor - 1, q)
        } else {
            None
        };
        let miss_before = before
            .or_else(|| self.prev_unhit(n - 1, q))
            .expect("a miss exists");
        Ok(Some(Arc::new(
            owner,
            (miss_before + 1) % n,
            (miss_after + n - 1) % n,
        )))
    }

    /// Runs through the positions on either side of the two group
    /// boundaries: anchored at `n-1` then `0`, and at `t-1` then `t`.
    pub fn left_right_arcs(
        &self,
        owner: usize,
        q: &QueryPoint,
    ) -> Result<Vec<Arc>, ReductionError> {
        let n = self.n;
        let mut arcs = Vec::with_capacity(2);
        for anchors in [[n - 1, 0], [(self.t + n - 1) % n, self.t % n]] {
            for a in anchors {
                if let Some(arc) = self.maximal_hit_run(owner, q, a)? {
                    if !arcs.contains(&arc) {
                        arcs.push(arc);
                    }
                    break;
                }
            }
        }
        Ok(arcs)
    }
}

/// Dual points of one side's half-planes in local order, and the upper
/// envelope of the dual lines of the query points.
///
/// In the side frame a half-plane `y <= a x + b` has dual point `(a, -b)`
/// and a point `(u, v)` has dual line `y = u x - v`; the point hits the
/// half-plane iff the dual point lies on or below the dual line.
#[derive(Debug, Clone)]
pub struct Duals {
    pub points: Vec<Point>,
    pub envelope: UpperEnvelope,
}

/// Dual line of `p` (already in side frame).
pub fn dual_line(p: &Point) -> Line {
    Line::new(p.x.clone(), -&p.y)
}

/// Fails with `InternalOrderMismatch` unless dual x-coordinates strictly
/// increase in local order.
pub fn dualize(side: &Side, frame_points: &[Point]) -> Result<Duals, ReductionError> {
    let tree = side.tree();
    let points: Vec<Point> = (0..tree.len())
        .map(|i| {
            let l = tree.line(i);
            Point::new(l.slope, -l.intercept)
        })
        .collect();
    if let Some(i) = points.windows(2).position(|w| w[0].x >= w[1].x) {
        return Err(ReductionError::InternalOrderMismatch(side.to_global(i + 1)));
    }
    let lines: Vec<Line> = frame_points.iter().map(dual_line).collect();
    Ok(Duals {
        points,
        envelope: UpperEnvelope::from_lines(&lines),
    })
}

/// Where the dual line of a point touches the envelope, as a seed of local
/// indices known to be hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorResult {
    /// Every dual in the closed span of the point's envelope edge.
    Edge {
        first: usize,
        last: usize,
    },
    /// Two consecutive duals on either side of the touching vertex or edge.
    Straddle {
        left: usize,
    },
    Undefined,
}

/// `line_id` indexes the envelope's input lines; `line` is that line.
pub fn anchor_sublist(
    line_id: usize,
    line: &Line,
    envelope: &UpperEnvelope,
    duals: &[Point],
) -> AnchorResult {
    let below = |i: usize| duals[i].y <= line.eval(&duals[i].x);
    let straddle = |lo: usize, hi: usize| {
        if lo != hi || lo == 0 || lo >= duals.len() || !below(lo - 1) || !below(lo) {
            AnchorResult::Undefined
        } else {
            AnchorResult::Straddle { left: lo - 1 }
        }
    };
    let in_span = |k: usize| {
        let (xl, xr) = envelope.span(k);
        let lo = xl.map_or(0, |xl| duals.partition_point(|d| &d.x < xl));
        let hi = xr.map_or(duals.len(), |xr| duals.partition_point(|d| &d.x <= xr));
        (lo, hi)
    };
    if let Some(k) = envelope.edge_of_line(line_id) {
        let (lo, hi) = in_span(k);
        return if lo < hi {
            AnchorResult::Edge {
                first: lo,
                last: hi - 1,
            }
        } else {
            straddle(lo, hi)
        };
    }
    match envelope.edge_with_slope(&line.slope) {
        Ok(k) => {
            let (lo, hi) = in_span(k);
            straddle(lo, hi)
        }
        Err(k) if k == 0 || k == envelope.len() => AnchorResult::Undefined,
        Err(k) => {
            let x = envelope.vertex_x(k);
            let lo = duals.partition_point(|d| &d.x <= x);
            straddle(lo, lo)
        }
    }
}

/// Extends an anchor seed to the maximal hit run inside the side; the arc
/// is kept only if it touches neither end of the group.
pub fn lower_upper_arcs(
    owner: usize,
    side: &Side,
    q: &QueryPoint,
    anchor: AnchorResult,
) -> Result<Option<Arc>, ReductionError> {
    let tree = side.tree();
    let fq = side.frame(q);
    let (lo, hi) = match anchor {
        AnchorResult::Undefined => return Ok(None),
        AnchorResult::Straddle { left } => (left, left + 1),
        AnchorResult::Edge { first, last } => {
            if let Some(u) = tree.first_unhit(first, fq).filter(|&u| u <= last) {
                return Err(ReductionError::SeedNotHit {
                    point: owner,
                    position: side.to_global(u),
                });
            }
            (first, last)
        }
    };
    let k = tree.len();
    let i = tree.last_unhit(lo, fq).map_or(0, |u| u + 1);
    let j = tree.first_unhit(hi, fq).map_or(k - 1, |u| u - 1);
    if i == 0 || j == k - 1 {
        return Ok(None);
    }
    let (a, b) = (side.to_global(i), side.to_global(j));
    Ok(Some(Arc::new(owner, a.min(b), a.max(b))))
}

/// Lowest id of each distinct point, in id order.
fn distinct_points(points: &[Point]) -> Vec<usize> {
    let mut seen = HashMap::with_capacity(points.len());
    (0..points.len())
        .filter(|&i| seen.insert(&points[i], ()).is_none())
        .collect()
}

/// Left, right, lower and upper arcs of every distinct point, at most four
/// per point. Duplicate points contribute through their lowest id only.
pub fn build_reduced_arcs(points: &[Point], trees: &Trees) -> Result<Vec<Arc>, ReductionError> {
    let reps = distinct_points(points);
    let queries: Vec<QueryPoint> = reps.iter().map(|&i| QueryPoint::new(&points[i])).collect();
    let duals = trees
        .sides()
        .map(|side| {
            let frame: Vec<Point> = queries.iter().map(|q| side.frame(q).clone()).collect();
            dualize(side, &frame).map(|d| (side, d))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let per_point = reps
        .par_iter()
        .zip(queries.par_iter())
        .enumerate()
        .map(|(k, (&owner, q))| {
            let mut arcs = trees.left_right_arcs(owner, q)?;
            for (side, d) in &duals {
                let line = dual_line(side.frame(q));
                let anchor = anchor_sublist(k, &line, &d.envelope, &d.points);
                if let Some(arc) = lower_upper_arcs(owner, side, q, anchor)? {
                    if !arcs.contains(&arc) {
                        arcs.push(arc);
                    }
                }
            }
            Ok(arcs)
        })
        .collect::<Result<Vec<_>, ReductionError>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rational;
    use crate::instance::fixtures::e1;
    use crate::reduction::build_circle;

    fn e1_trees() -> (Vec<Point>, Trees) {
        let inst = e1();
        let circle = build_circle(inst.halfplanes()).unwrap();
        (
            inst.points().to_vec(),
            build_envelope_trees(inst.halfplanes(), &circle),
        )
    }

    #[test]
    fn e1_unhit_queries() {
        let (pts, trees) = e1_trees();
        let q = |i: usize| QueryPoint::new(&pts[i]);
        let lower = trees.lower().unwrap();
        let upper = trees.upper().unwrap();
        assert_eq!(lower.next_unhit(0, &q(0)), Some(0));
        assert_eq!(lower.next_unhit(0, &q(2)), None);
        assert_eq!(upper.prev_unhit(3, &q(2)), Some(3));
        assert_eq!(upper.next_unhit(2, &q(2)), Some(2));
        assert_eq!(upper.next_unhit(2, &q(0)), None);
    }

    #[test]
    fn e1_runs() {
        let (pts, trees) = e1_trees();
        let q = |i: usize| QueryPoint::new(&pts[i]);
        assert_eq!(
            trees.maximal_hit_run(3, &q(3), 3),
            Ok(Some(Arc::new(3, 3, 0)))
        );
        assert_eq!(trees.maximal_hit_run(1, &q(1), 0), Ok(None));
        assert_eq!(
            trees.maximal_hit_run(0, &q(0), 2),
            Ok(Some(Arc::new(0, 2, 3)))
        );
    }

    #[test]
    fn e1_left_right() {
        let (pts, trees) = e1_trees();
        let q = |i: usize| QueryPoint::new(&pts[i]);
        assert_eq!(trees.left_right_arcs(3, &q(3)), Ok(vec![Arc::new(3, 3, 0)]));
        assert_eq!(trees.left_right_arcs(2, &q(2)), Ok(vec![Arc::new(2, 0, 1)]));
        assert_eq!(trees.left_right_arcs(1, &q(1)), Ok(vec![Arc::new(1, 1, 2)]));
    }

    #[test]
    fn e1_duals_and_anchors() {
        let (pts, trees) = e1_trees();
        let lower = trees.lower().unwrap();
        let d = dualize(lower, &pts).unwrap();
        assert_eq!(
            d.points,
            vec![Point::from_ints(-1, 2), Point::from_ints(1, 2)]
        );
        assert_eq!(
            dual_line(&pts[2]),
            Line::new(Rational::zero(), Rational::from(3))
        );
        assert!(d.points[1].y <= dual_line(&pts[1]).eval(&d.points[1].x));

        let anchor = |i: usize| anchor_sublist(i, &dual_line(&pts[i]), &d.envelope, &d.points);
        assert_eq!(anchor(2), AnchorResult::Edge { first: 0, last: 1 });
        assert_eq!(anchor(0), AnchorResult::Undefined);
        assert_eq!(anchor(1), AnchorResult::Edge { first: 1, last: 1 });

        let q2 = QueryPoint::new(&pts[2]);
        assert_eq!(lower_upper_arcs(2, lower, &q2, anchor(2)), Ok(None));
        let q0 = QueryPoint::new(&pts[0]);
        assert_eq!(lower_upper_arcs(0, lower, &q0, anchor(0)), Ok(None));
    }

    #[test]
    fn e1_reduced_family() {
        let (pts, trees) = e1_trees();
        let mut arcs = build_reduced_arcs(&pts, &trees).unwrap();
        arcs.sort();
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
    fn interior_lower_arc() {
        // three lower half-planes; the point hits only the middle one
        let hps = vec![
            HalfPlane::from_ints(-1, -1, 2).unwrap(),
            HalfPlane::from_ints(0, -1, 0).unwrap(),
            HalfPlane::from_ints(1, -1, 2).unwrap(),
            HalfPlane::from_ints(0, 1, -100).unwrap(),
        ];
        let pts = [Point::from_ints(0, -1), Point::from_ints(0, 50)];
        let circle = build_circle(&hps).unwrap();
        assert_eq!(circle.t(), 3);
        let trees = build_envelope_trees(&hps, &circle);
        let lower = trees.lower().unwrap();
        let q = QueryPoint::new(&pts[0]);
        assert_eq!(
            lower_upper_arcs(0, lower, &q, AnchorResult::Edge { first: 1, last: 1 }),
            Ok(Some(Arc::new(0, 1, 1)))
        );
    }

    #[test]
    fn seed_not_hit_is_reported() {
        let (pts, trees) = e1_trees();
        let q = QueryPoint::new(&pts[0]);
        assert_eq!(
            lower_upper_arcs(
                0,
                trees.lower().unwrap(),
                &q,
                AnchorResult::Edge { first: 0, last: 1 }
            ),
            Err(ReductionError::SeedNotHit {
                point: 0,
                position: 0
            })
        );
    }
}
