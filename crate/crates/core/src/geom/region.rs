//! Intersection of closed half-planes.
//!
//! The region is kept as a vertical sandwich: an x-range from the vertical
//! constraints, a floor (upper envelope of the bounding lines of upward
//! half-planes) and a ceiling (lower envelope of the downward ones). This
//! handles empty, degenerate and unbounded intersections uniformly and
//! answers membership with two binary searches.

use super::{Bound, HalfPlane, Point, Rational, UpperEnvelope};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionStatus {
    Empty,
    Bounded,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct ConvexRegion {
    status: RegionStatus,
    x_min: Option<Rational>,
    x_max: Option<Rational>,
    floor: Option<UpperEnvelope>,
    /// Upper envelope of the negated ceiling lines.
    ceiling: Option<UpperEnvelope>,
    vertices: Vec<Point>,
}

/// Closed x-interval, `None` ends are infinite.
type Interval = (Option<Rational>, Option<Rational>);

fn max_opt(a: Option<Rational>, b: Option<&Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if &a >= b { a } else { b.clone() }),
        (a, b) => a.or_else(|| b.cloned()),
    }
}

fn min_opt(a: Option<Rational>, b: Option<&Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if &a <= b { a } else { b.clone() }),
        (a, b) => a.or_else(|| b.cloned()),
    }
}

/// Combines two interval ends where `None` means unbounded on that side.
fn union_end(
    a: Option<Rational>,
    b: Option<Rational>,
    pick: fn(Option<Rational>, Option<&Rational>) -> Option<Rational>,
) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => pick(Some(a), Some(&b)),
        _ => None,
    }
}

fn le(a: &Option<Rational>, b: &Option<Rational>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    }
}

/// Part of `[lo, hi]` where the linear function `slope * x + icpt >= 0`.
fn nonnegative_part(
    slope: &Rational,
    icpt: &Rational,
    lo: &Option<Rational>,
    hi: &Option<Rational>,
) -> Option<Interval> {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if slope.is_zero() {
        return (!icpt.is_negative()).then_some((lo, hi));
    }
    let root = -icpt / slope;
    if slope.is_positive() {
        lo = max_opt(lo, Some(&root));
    } else {
        hi = min_opt(hi, Some(&root));
    }
    le(&lo, &hi).then_some((lo, hi))
}

/// Intersection of all `halfplanes` (closed). Runs in `O(k log k)`.
pub fn half_plane_intersection(halfplanes: &[HalfPlane]) -> ConvexRegion {
    let mut x_min: Option<Rational> = None;
    let mut x_max: Option<Rational> = None;
    let mut floor_lines = Vec::new();
    let mut ceiling_lines = Vec::new();
    for h in halfplanes {
        match h.bound() {
            Bound::Above(l) => floor_lines.push(l),
            Bound::Below(l) => ceiling_lines.push(l.negated()),
            Bound::RightOf(v) => x_min = max_opt(x_min, Some(&v)),
            Bound::LeftOf(v) => x_max = min_opt(x_max, Some(&v)),
        }
    }
    let floor = (!floor_lines.is_empty()).then(|| UpperEnvelope::from_lines(&floor_lines));
    let ceiling = (!ceiling_lines.is_empty()).then(|| UpperEnvelope::from_lines(&ceiling_lines));
    let mut region = ConvexRegion {
        status: RegionStatus::Empty,
        x_min,
        x_max,
        floor,
        ceiling,
        vertices: Vec::new(),
    };
    region.classify();
    region
}

impl ConvexRegion {
    pub fn status(&self) -> RegionStatus {
        self.status
    }

    pub fn is_empty(&self) -> bool {
        self.status == RegionStatus::Empty
    }

    /// Corner points of the boundary in counterclockwise order. For a bounded
    /// region these form the polygon (possibly a segment or a single point);
    /// for an unbounded one they are the finite corners only.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    fn floor_at(&self, x: &Rational) -> Option<Rational> {
        self.floor.as_ref().map(|f| f.value_at(x))
    }

    fn ceiling_at(&self, x: &Rational) -> Option<Rational> {
        self.ceiling.as_ref().map(|c| -c.value_at(x))
    }

    /// Membership test, boundary included. `O(log k)`.
    pub fn contains(&self, p: &Point) -> bool {
        if self.status == RegionStatus::Empty {
            return false;
        }
        if self.x_min.as_ref().is_some_and(|m| &p.x < m)
            || self.x_max.as_ref().is_some_and(|m| &p.x > m)
        {
            return false;
        }
        if self.floor_at(&p.x).is_some_and(|f| p.y < f) {
            return false;
        }
        !self.ceiling_at(&p.x).is_some_and(|c| p.y > c)
    }

    /// Determines the feasible x-interval, the status and the corner list.
    fn classify(&mut self) {
        if !le(&self.x_min, &self.x_max) {
            return;
        }
        let (floor, ceiling) = match (&self.floor, &self.ceiling) {
            (Some(f), Some(c)) => (f, c),
            _ => {
                self.status = RegionStatus::Unbounded;
                self.vertices = self.open_corners();
                return;
            }
        };

        // The gap ceiling - floor is concave and piecewise linear; walk its
        // pieces and take the union of the parts where it is nonnegative.
        let mut cuts: Vec<&Rational> = floor
            .breakpoints()
            .iter()
            .chain(ceiling.breakpoints())
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut feasible: Option<Interval> = None;
        let mut lo: Option<Rational> = None;
        for k in 0..=cuts.len() {
            let hi = cuts.get(k).map(|c| (*c).clone());
            let piece_lo = max_opt(lo.clone(), self.x_min.as_ref());
            let piece_hi = min_opt(hi.clone(), self.x_max.as_ref());
            if le(&piece_lo, &piece_hi) {
                // Any interior sample identifies the active lines of this piece.
                let probe = match (&lo, &hi) {
                    (Some(a), Some(b)) => (a + b) / Rational::from(2),
                    (Some(a), None) => a + &Rational::one(),
                    (None, Some(b)) => b - &Rational::one(),
                    (None, None) => Rational::zero(),
                };
                let f = floor.line(floor.locate(&probe));
                let c = ceiling.line(ceiling.locate(&probe));
                // gap(x) = -c(x) - f(x)
                let slope = -(&c.slope + &f.slope);
                let icpt = -(&c.intercept + &f.intercept);
                if let Some((a, b)) = nonnegative_part(&slope, &icpt, &piece_lo, &piece_hi) {
                    feasible = Some(match feasible {
                        None => (a, b),
                        Some((fa, fb)) => (union_end(fa, a, min_opt), union_end(fb, b, max_opt)),
                    });
                }
            }
            lo = hi;
        }
        let Some((ilo, ihi)) = feasible else {
            return;
        };
        self.status = if ilo.is_some() && ihi.is_some() {
            RegionStatus::Bounded
        } else {
            RegionStatus::Unbounded
        };
        self.vertices = self.corners(&ilo, &ihi);
    }

    fn in_range(x: &Rational, lo: &Option<Rational>, hi: &Option<Rational>) -> bool {
        lo.as_ref().is_none_or(|l| x > l) && hi.as_ref().is_none_or(|h| x < h)
    }

    /// Corners when both floor and ceiling exist over the feasible `[lo, hi]`.
    fn corners(&self, lo: &Option<Rational>, hi: &Option<Rational>) -> Vec<Point> {
        let floor = self.floor.as_ref().unwrap();
        let ceiling = self.ceiling.as_ref().unwrap();
        let mut out: Vec<Point> = Vec::new();
        let mut push = |p: Point| {
            if out.last() != Some(&p) && out.first() != Some(&p) {
                out.push(p);
            }
        };
        if let Some(l) = lo {
            push(Point::new(l.clone(), floor.value_at(l)));
        }
        for b in floor
            .breakpoints()
            .iter()
            .filter(|b| Self::in_range(b, lo, hi))
        {
            push(Point::new(b.clone(), floor.value_at(b)));
        }
        if let Some(h) = hi {
            push(Point::new(h.clone(), floor.value_at(h)));
            push(Point::new(h.clone(), -ceiling.value_at(h)));
        }
        for b in ceiling
            .breakpoints()
            .iter()
            .rev()
            .filter(|b| Self::in_range(b, lo, hi))
        {
            push(Point::new(b.clone(), -ceiling.value_at(b)));
        }
        if let Some(l) = lo {
            push(Point::new(l.clone(), -ceiling.value_at(l)));
        }
        out
    }

    /// Corners when at most one of floor and ceiling exists.
    fn open_corners(&self) -> Vec<Point> {
        let (lo, hi) = (&self.x_min, &self.x_max);
        let mut out = Vec::new();
        let chain = |env: &UpperEnvelope, sign: bool| -> Vec<Point> {
            let mut pts = Vec::new();
            let value = |x: &Rational| {
                if sign {
                    env.value_at(x)
                } else {
                    -env.value_at(x)
                }
            };
            if let Some(l) = lo {
                pts.push(Point::new(l.clone(), value(l)));
            }
            for b in env
                .breakpoints()
                .iter()
                .filter(|b| Self::in_range(b, lo, hi))
            {
                pts.push(Point::new(b.clone(), value(b)));
            }
            if let Some(h) = hi {
                pts.push(Point::new(h.clone(), value(h)));
            }
            pts.dedup();
            pts
        };
        if let Some(f) = &self.floor {
            out.extend(chain(f, true));
        }
        if let Some(c) = &self.ceiling {
            let mut pts = chain(c, false);
            pts.reverse();
            out.extend(pts);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hp(nx: i64, ny: i64, c: i64) -> HalfPlane {
        HalfPlane::from_ints(nx, ny, c).unwrap()
    }

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn unit_square() -> ConvexRegion {
        half_plane_intersection(&[hp(1, 0, 0), hp(-1, 0, -1), hp(0, 1, 0), hp(0, -1, -1)])
    }

    #[test]
    fn square_examples() {
        let sq = unit_square();
        assert_eq!(sq.status(), RegionStatus::Bounded);
        assert!(sq.contains(&Point::new(Rational::new(1, 2), Rational::new(1, 2))));
        assert!(!sq.contains(&p(2, 0)));
        assert!(sq.contains(&p(0, 0)));
        assert_eq!(sq.vertices(), &[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
    }

    #[test]
    fn contradictory_and_open() {
        assert_eq!(
            half_plane_intersection(&[hp(0, 1, 1), hp(0, -1, 0)]).status(),
            RegionStatus::Empty
        );
        assert_eq!(
            half_plane_intersection(&[hp(0, 1, 0)]).status(),
            RegionStatus::Unbounded
        );
        assert_eq!(
            half_plane_intersection(&[hp(1, 0, 2), hp(-1, 0, -1)]).status(),
            RegionStatus::Empty
        );
    }

    #[test]
    fn degenerate_regions_are_nonempty() {
        // The line y = x, as two opposite closed half-planes.
        let line = half_plane_intersection(&[hp(-1, 1, 0), hp(1, -1, 0)]);
        assert_eq!(line.status(), RegionStatus::Unbounded);
        assert!(line.contains(&p(5, 5)));
        assert!(!line.contains(&p(5, 6)));
        // A single point: the corner of four half-planes through (1, 2).
        let point =
            half_plane_intersection(&[hp(1, 1, 3), hp(-1, -1, -3), hp(1, -1, -1), hp(-1, 1, 1)]);
        assert_eq!(point.status(), RegionStatus::Bounded);
        assert_eq!(point.vertices(), &[p(1, 2)]);
        assert!(point.contains(&p(1, 2)));
        assert!(!point.contains(&p(1, 3)));
    }

    #[test]
    fn triangle_corners() {
        // y >= 0, y <= x, y <= 4 - x
        let tri = half_plane_intersection(&[hp(0, 1, 0), hp(1, -1, 0), hp(-1, -1, -4)]);
        assert_eq!(tri.status(), RegionStatus::Bounded);
        assert_eq!(tri.vertices(), &[p(0, 0), p(4, 0), p(2, 2)]);
    }

    fn arb_halfplane() -> impl Strategy<Value = HalfPlane> {
        (-4i64..=4, -4i64..=4, -12i64..12)
            .prop_filter("nonzero normal", |(a, b, _)| *a != 0 || *b != 0)
            .prop_map(|(a, b, c)| hp(a, b, c))
    }

    proptest! {
        #[test]
        fn membership_matches_conjunction(hs in prop::collection::vec(arb_halfplane(), 1..9),
                                          samples in prop::collection::vec((-40i64..40, -40i64..40, 1i64..4), 60)) {
            let region = half_plane_intersection(&hs);
            let mut any_inside = false;
            for (x, y, d) in samples {
                let q = Point::new(Rational::new(x, d), Rational::new(y, d));
                let direct = hs.iter().all(|h| h.contains(&q));
                any_inside |= direct;
                prop_assert_eq!(region.contains(&q), direct);
            }
            if any_inside {
                prop_assert_ne!(region.status(), RegionStatus::Empty);
            }
            for v in region.vertices() {
                prop_assert!(hs.iter().all(|h| h.contains(v)), "corner {:?} outside", v);
            }
        }
    }
}
