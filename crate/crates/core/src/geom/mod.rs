//! Exact planar primitives.
//!
//! Every predicate here is decided over [`Rational`] arithmetic; nothing in
//! this module rounds.

mod envelope;
mod hull;
mod rational;
mod region;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

pub(crate) use envelope::build_upper_chain;
pub use envelope::UpperEnvelope;
pub use hull::{convex_hull, extreme_point};
pub use rational::{ParseRationalError, Rational};
pub use region::{half_plane_intersection, ConvexRegion, RegionStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("direction is horizontal")]
    HorizontalDirection,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    /// Reflection across the x-axis.
    pub fn reflect_y(&self) -> Point {
        Point::new(self.x.clone(), -&self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// 2D cross product of two vectors given as points.
fn cross(u: &Point, v: &Point) -> Ordering {
    (&u.x * &v.y).cmp(&(&u.y * &v.x))
}

/// Sign of `(b - a) x (c - a)`: `Greater` for a counterclockwise turn,
/// `Less` for clockwise, `Equal` when collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a))
}

/// A nonzero direction in canonical primitive integer form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: Rational,
    dy: Rational,
}

impl Direction {
    pub fn new(dx: &Rational, dy: &Rational) -> Result<Self, GeomError> {
        Ok(Self::canonical_with_scale(dx, dy)?.0)
    }

    pub fn from_ints(dx: i64, dy: i64) -> Result<Self, GeomError> {
        Self::new(&dx.into(), &dy.into())
    }

    /// Canonical direction together with the positive factor `s` such that
    /// `(dx, dy) * s` is the canonical integer vector.
    pub fn canonical_with_scale(
        dx: &Rational,
        dy: &Rational,
    ) -> Result<(Self, Rational), GeomError> {
        if dx.is_zero() && dy.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let l = dx.denom().lcm(&dy.denom());
        let a = dx.numer() * (&l / dx.denom());
        let b = dy.numer() * (&l / dy.denom());
        let g = a.gcd(&b);
        let scale = Rational::from_bigints(l, g.clone());
        let a = a / &g;
        let b = b / &g;
        Ok((
            Direction {
                dx: a.into(),
                dy: b.into(),
            },
            scale,
        ))
    }

    pub fn dx(&self) -> &Rational {
        &self.dx
    }

    pub fn dy(&self) -> &Rational {
        &self.dy
    }

    pub fn is_horizontal(&self) -> bool {
        self.dy.is_zero()
    }

    pub fn as_vector(&self) -> Point {
        Point::new(self.dx.clone(), self.dy.clone())
    }

    pub fn dot(&self, p: &Point) -> Rational {
        &self.dx * &p.x + &self.dy * &p.y
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Direction({}, {})", self.dx, self.dy)
    }
}

/// Orders `u` and `v` by counterclockwise angle measured from `base`, with
/// `base` itself at angle zero. Vectors must be nonzero.
pub(crate) fn compare_ccw_from(base: &Point, u: &Point, v: &Point) -> Ordering {
    let half = |w: &Point| match cross(base, w) {
        Ordering::Greater => 0,
        Ordering::Less => 1,
        Ordering::Equal => {
            let dot = &base.x * &w.x + &base.y * &w.y;
            if dot.is_positive() {
                0
            } else {
                1
            }
        }
    };
    half(u).cmp(&half(v)).then_with(|| cross(v, u))
}

/// Orders directions counterclockwise starting from the west direction
/// `(-1, 0)`, so every downward direction precedes every upward one.
pub fn compare_ccw_from_west(u: &Direction, v: &Direction) -> Result<Ordering, GeomError> {
    if u.is_horizontal() || v.is_horizontal() {
        return Err(GeomError::HorizontalDirection);
    }
    let upper = |d: &Direction| d.dy.is_positive();
    Ok(upper(u)
        .cmp(&upper(v))
        .then_with(|| cross(&v.as_vector(), &u.as_vector())))
}

/// A non-vertical line `y = slope * x + intercept`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Line {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Line { slope, intercept }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    /// `p.y <= self(p.x)`
    pub fn is_above_or_through(&self, p: &Point) -> bool {
        p.y <= self.eval(&p.x)
    }

    pub fn negated(&self) -> Line {
        Line::new(-&self.slope, -&self.intercept)
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = {}x + {}", self.slope, self.intercept)
    }
}

/// Which side of its bounding line a half-plane lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    /// `y <= line(x)`
    Below(Line),
    /// `y >= line(x)`
    Above(Line),
    /// `x >= value`
    RightOf(Rational),
    /// `x <= value`
    LeftOf(Rational),
}

/// The closed half-plane `{q : nx * q.x + ny * q.y >= c}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub nx: Rational,
    pub ny: Rational,
    pub c: Rational,
}

impl HalfPlane {
    /// Fails with [`GeomError::ZeroDirection`] for a zero normal.
    pub fn new(nx: Rational, ny: Rational, c: Rational) -> Result<Self, GeomError> {
        if nx.is_zero() && ny.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        Ok(HalfPlane { nx, ny, c })
    }

    pub fn from_ints(nx: i64, ny: i64, c: i64) -> Result<Self, GeomError> {
        Self::new(nx.into(), ny.into(), c.into())
    }

    pub fn normal(&self) -> Direction {
        Direction::new(&self.nx, &self.ny).expect("half-plane normal is nonzero")
    }

    /// `nx * p.x + ny * p.y - c`
    pub fn slack(&self, p: &Point) -> Rational {
        &self.nx * &p.x + &self.ny * &p.y - &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        if let (Some(a), Some(b), Some(c), Some(x), Some(y)) = (
            self.nx.to_i64(),
            self.ny.to_i64(),
            self.c.to_i64(),
            p.x.to_i64(),
            p.y.to_i64(),
        ) {
            return a as i128 * x as i128 + b as i128 * y as i128 >= c as i128;
        }
        !self.slack(p).is_negative()
    }

    pub fn is_lower(&self) -> bool {
        self.ny.is_negative()
    }

    pub fn is_upper(&self) -> bool {
        self.ny.is_positive()
    }

    pub fn bound(&self) -> Bound {
        if self.ny.is_zero() {
            let v = &self.c / &self.nx;
            return if self.nx.is_positive() {
                Bound::RightOf(v)
            } else {
                Bound::LeftOf(v)
            };
        }
        let line = Line::new(-&self.nx / &self.ny, &self.c / &self.ny);
        if self.ny.is_negative() {
            Bound::Below(line)
        } else {
            Bound::Above(line)
        }
    }

    /// Same set, described with the canonical primitive normal.
    pub fn canonical(&self) -> (Direction, Rational) {
        let (dir, scale) =
            Direction::canonical_with_scale(&self.nx, &self.ny).expect("nonzero normal");
        (dir, &self.c * &scale)
    }

    /// Image under `(x, y) -> (x, -y)`.
    pub fn reflect_y(&self) -> HalfPlane {
        HalfPlane {
            nx: self.nx.clone(),
            ny: -&self.ny,
            c: self.c.clone(),
        }
    }
}

impl fmt::Debug for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x + {}y >= {}]", self.nx, self.ny, self.c)
    }
}
