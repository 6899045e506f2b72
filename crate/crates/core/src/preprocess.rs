//! Instance clean-up before the reduction: redundant normals, feasibility,
//! the single-point case, and removal of vertical bounding lines.

use std::collections::HashMap;

use crate::geom::{
    convex_hull, extreme_point, half_plane_intersection, HalfPlane, Point, Rational,
};

/// Half-planes left after [`dedupe_normals`], with their original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deduped {
    pub halfplanes: Vec<HalfPlane>,
    /// `original[i]` is the input id of `halfplanes[i]`.
    pub original: Vec<usize>,
}

/// Keeps one half-plane per canonical normal direction: the one with the
/// largest canonical offset, lowest id on ties. Survivors keep input order.
pub fn dedupe_normals(halfplanes: &[HalfPlane]) -> Deduped {
    let mut best: HashMap<_, (Rational, usize)> = HashMap::with_capacity(halfplanes.len());
    for (id, h) in halfplanes.iter().enumerate() {
        let (dir, c) = h.canonical();
        best.entry(dir)
            .and_modify(|slot| {
                if c > slot.0 {
                    *slot = (c.clone(), id);
                }
            })
            .or_insert((c, id));
    }
    let mut keep: Vec<usize> = best.into_values().map(|(_, id)| id).collect();
    keep.sort_unstable();
    Deduped {
        halfplanes: keep.iter().map(|&i| halfplanes[i].clone()).collect(),
        original: keep,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Ok,
    /// Lowest id of a half-plane that no point hits.
    Infeasible(usize),
}

/// A half-plane is hit by some point iff it is hit by the hull vertex that
/// is extreme in its normal direction.
pub fn feasibility_check(points: &[Point], halfplanes: &[HalfPlane]) -> Feasibility {
    let hull = convex_hull(points);
    halfplanes
        .iter()
        .position(|h| !h.contains(extreme_point(&hull, &h.normal())))
        .map_or(Feasibility::Ok, Feasibility::Infeasible)
}

/// Lowest id of a point lying in every half-plane, if any.
pub fn singleton_check(points: &[Point], halfplanes: &[HalfPlane]) -> Option<usize> {
    let region = half_plane_intersection(halfplanes);
    if region.is_empty() {
        return None;
    }
    points.iter().position(|p| region.contains(p))
}

/// An exact rotation by the angle with `cos = (k^2-1)/(k^2+1)` and
/// `sin = 2k/(k^2+1)`; `k = None` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rotation {
    pub k: Option<u64>,
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation { k: None };

    pub fn with_k(k: u64) -> Self {
        assert!(k >= 2, "k must be at least 2");
        Rotation { k: Some(k) }
    }

    pub fn is_identity(&self) -> bool {
        self.k.is_none()
    }

    /// `(cos, sin)` of the rotation angle.
    pub fn cos_sin(&self) -> (Rational, Rational) {
        match self.k {
            None => (Rational::one(), Rational::zero()),
            Some(k) => {
                let k = k as i64;
                let d = k * k + 1;
                (Rational::new(k * k - 1, d), Rational::new(2 * k, d))
            }
        }
    }

    fn rotate(cs: &(Rational, Rational), x: &Rational, y: &Rational) -> (Rational, Rational) {
        let (cos, sin) = cs;
        (cos * x - sin * y, sin * x + cos * y)
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        if self.is_identity() {
            return p.clone();
        }
        let (x, y) = Self::rotate(&self.cos_sin(), &p.x, &p.y);
        Point::new(x, y)
    }

    /// Rotates the normal; the offset is unchanged since rotations preserve
    /// dot products.
    pub fn apply_halfplane(&self, h: &HalfPlane) -> HalfPlane {
        if self.is_identity() {
            return h.clone();
        }
        let (nx, ny) = Self::rotate(&self.cos_sin(), &h.nx, &h.ny);
        HalfPlane::new(nx, ny, h.c.clone()).expect("rotation keeps normals nonzero")
    }
}

/// Rotated copy of the input with no horizontal normal, using the smallest
/// `k >= 2` that works. Each normal rules out at most one angle, so some
/// `k <= halfplanes.len() + 2` always succeeds.
pub fn rotate_if_needed(
    points: &[Point],
    halfplanes: &[HalfPlane],
) -> (Vec<Point>, Vec<HalfPlane>, Rotation) {
    if halfplanes.iter().all(|h| !h.ny.is_zero()) {
        return (points.to_vec(), halfplanes.to_vec(), Rotation::IDENTITY);
    }
    let rot = (2u64..)
        .map(Rotation::with_k)
        .find(|r| {
            let (cos, sin) = r.cos_sin();
            halfplanes
                .iter()
                .all(|h| !(&sin * &h.nx + &cos * &h.ny).is_zero())
        })
        .expect("unbounded search");
    let points = points.iter().map(|p| rot.apply_point(p)).collect();
    let halfplanes = halfplanes.iter().map(|h| rot.apply_halfplane(h)).collect();
    (points, halfplanes, rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::e1;
    use crate::instance::{generate, hits};
    use proptest::prelude::*;

    fn h(a: i64, b: i64, c: i64) -> HalfPlane {
        HalfPlane::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn dedupe_keeps_most_restrictive() {
        let d = dedupe_normals(&[h(1, 1, 2), h(2, 2, 2)]);
        assert_eq!(d.original, vec![0]);
        let d = dedupe_normals(&[h(2, 2, 2), h(1, 1, 2)]);
        assert_eq!(d.original, vec![1]);
        let d = dedupe_normals(&[h(1, 1, 2), h(-1, -1, 2)]);
        assert_eq!(d.original, vec![0, 1]);
        let d = dedupe_normals(&[h(3, 0, 6), h(1, 0, 2), h(0, 1, 0)]);
        assert_eq!(d.original, vec![0, 2]);
        assert_eq!(dedupe_normals(&[h(0, -1, 4)]).halfplanes, vec![h(0, -1, 4)]);
    }

    #[test]
    fn feasibility_examples() {
        let inst = e1();
        assert_eq!(
            feasibility_check(inst.points(), inst.halfplanes()),
            Feasibility::Ok
        );
        let origin = [Point::from_ints(0, 0)];
        assert_eq!(
            feasibility_check(&origin, &[h(0, 1, 5)]),
            Feasibility::Infeasible(0)
        );
        assert_eq!(
            feasibility_check(&origin, &[h(1, 0, -1), h(0, 1, 5), h(0, -1, 7)]),
            Feasibility::Infeasible(1)
        );
    }

    #[test]
    fn singleton_examples() {
        let origin = [Point::from_ints(0, 0)];
        assert_eq!(
            singleton_check(&origin, &[h(1, 0, -1), h(-1, 0, -1)]),
            Some(0)
        );
        let inst = e1();
        assert_eq!(singleton_check(inst.points(), inst.halfplanes()), None);
        assert_eq!(singleton_check(&origin, &[h(1, 0, 1), h(-1, 0, 1)]), None);
        let pts = [
            Point::from_ints(5, 5),
            Point::from_ints(0, 0),
            Point::from_ints(0, 0),
        ];
        assert_eq!(singleton_check(&pts, &[h(1, 0, -1), h(-1, 0, -1)]), Some(1));
    }

    #[test]
    fn rotation_examples() {
        let pts = [Point::from_ints(1, 0)];
        let (p2, h2, rot) = rotate_if_needed(&pts, &[h(1, 0, -1)]);
        assert_eq!(rot, Rotation::with_k(2));
        assert_eq!(h2[0].nx, Rational::new(3, 5));
        assert_eq!(h2[0].ny, Rational::new(4, 5));
        assert_eq!(p2[0], Point::new(Rational::new(3, 5), Rational::new(4, 5)));

        let inst = e1();
        let (_, _, rot) = rotate_if_needed(inst.points(), inst.halfplanes());
        assert!(rot.is_identity());

        // the k = 2 rotation makes (3, -4) horizontal, so k = 3 is next
        let (_, h3, rot) = rotate_if_needed(&pts, &[h(1, 0, 0), h(3, -4, 0)]);
        assert_eq!(rot, Rotation::with_k(3));
        assert!(h3.iter().all(|h| !h.ny.is_zero()));
    }

    fn brute_feasible(points: &[Point], halfplanes: &[HalfPlane]) -> Feasibility {
        halfplanes
            .iter()
            .position(|h| !points.iter().any(|p| hits(p, h)))
            .map_or(Feasibility::Ok, Feasibility::Infeasible)
    }

    proptest! {
        #[test]
        fn feasibility_matches_all_pairs(m in 1usize..9, n in 1usize..9, seed: u64, feasible: bool) {
            let inst = generate(m, n, seed, feasible);
            prop_assert_eq!(
                feasibility_check(inst.points(), inst.halfplanes()),
                brute_feasible(inst.points(), inst.halfplanes())
            );
        }

        #[test]
        fn singleton_matches_direct_check(m in 1usize..9, n in 1usize..5, seed: u64) {
            let inst = generate(m, n, seed, true);
            let direct = inst.points().iter().position(|p| inst.halfplanes().iter().all(|h| hits(p, h)));
            prop_assert_eq!(singleton_check(inst.points(), inst.halfplanes()), direct);
        }

        #[test]
        fn rotation_preserves_incidence(
            pts in prop::collection::vec((-20i64..20, -20i64..20), 1..8),
            hps in prop::collection::vec((-5i64..5, -5i64..5, -30i64..30), 1..8),
        ) {
            let points: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
            let halfplanes: Vec<HalfPlane> = hps
                .iter()
                .filter_map(|&(a, b, c)| HalfPlane::from_ints(a, b, c).ok())
                .collect();
            let (rp, rh, _) = rotate_if_needed(&points, &halfplanes);
            prop_assert!(rh.iter().all(|h| !h.ny.is_zero()));
            for (p, q) in points.iter().zip(&rp) {
                for (h, g) in halfplanes.iter().zip(&rh) {
                    prop_assert_eq!(hits(p, h), hits(q, g));
                }
            }
        }
    }
}
