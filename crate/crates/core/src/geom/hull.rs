use std::cmp::Ordering;

use super::{compare_ccw_from, orient, Direction, Point};

/// Convex hull in counterclockwise order, starting from the lexicographically
/// smallest point. Collinear boundary points are dropped, so a collinear input
/// yields its two extreme points and a single distinct point yields itself.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<&Point> = points.iter().collect();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().cloned().collect();
    }

    // Andrew's monotone chain.
    let mut hull: Vec<&Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2
            && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) != Ordering::Greater
        {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) != Ordering::Greater
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull.into_iter().cloned().collect()
}

/// A vertex of `hull` maximizing the dot product with `dir`, found by binary
/// search over edge directions in `O(log |hull|)`.
///
/// `hull` must be a strictly convex counterclockwise polygon as produced by
/// [`convex_hull`] (one or two vertices allowed). Panics if it is empty.
pub fn extreme_point<'a>(hull: &'a [Point], dir: &Direction) -> &'a Point {
    assert!(!hull.is_empty(), "extreme point of an empty hull");
    let h = hull.len();
    if h == 1 {
        return &hull[0];
    }
    // The wanted vertex starts the first edge, in ccw angular order, at or
    // past the direction perpendicular to `dir`. Edge angles measured from
    // that perpendicular form a rotated sorted sequence; find its minimum.
    let perp = Point::new(-dir.dy(), dir.dx().clone());
    let edge = |k: usize| hull[(k + 1) % h].sub(&hull[k]);
    let (mut lo, mut hi) = (0, h - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if compare_ccw_from(&perp, &edge(mid), &edge(hi)) == Ordering::Greater {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    &hull[lo]
}
