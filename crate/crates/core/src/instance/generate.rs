use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HalfPlane, Instance, Point};
use crate::geom::{convex_hull, extreme_point, Direction, Rational};

/// Seeded random instance with integer coordinates.
///
/// Points are uniform in a square whose side grows with the instance size;
/// normals are integer vectors with a nonzero y component. With
/// `ensure_feasible`, each offset lies between the value at a random point
/// and the maximum over all points, so the extreme point in the normal
/// direction always hits it.
pub fn generate(
    num_points: usize,
    num_halfplanes: usize,
    seed: u64,
    ensure_feasible: bool,
) -> Instance {
    assert!(
        num_points >= 1 && num_halfplanes >= 1,
        "counts must be positive"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = num_points.max(num_halfplanes).max(10) as i64;
    let radius = 10 * size;
    let normal_range = size.clamp(4, 1000);

    let points: Vec<Point> = (0..num_points)
        .map(|_| {
            Point::from_ints(
                rng.random_range(-radius..=radius),
                rng.random_range(-radius..=radius),
            )
        })
        .collect();
    let hull = convex_hull(&points);

    let halfplanes = (0..num_halfplanes)
        .map(|_| {
            let nx_int = rng.random_range(-normal_range..=normal_range);
            let mut ny_int = rng.random_range(-normal_range..normal_range);
            if ny_int >= 0 {
                ny_int += 1;
            }
            let (nx, ny) = (Rational::from(nx_int), Rational::from(ny_int));
            let anchor = &points[rng.random_range(0..points.len())];
            let at_anchor = &nx * &anchor.x + &ny * &anchor.y;
            let c = if ensure_feasible {
                let dir = Direction::from_ints(nx_int, ny_int).expect("nonzero normal");
                let top = extreme_point(&hull, &dir);
                let room = (&nx * &top.x + &ny * &top.y - &at_anchor)
                    .to_i64()
                    .expect("integer coordinates");
                &at_anchor + &Rational::from(rng.random_range(0..=room))
            } else {
                let spread = (nx_int.abs() + ny_int.abs()) * radius / 4;
                &at_anchor + &Rational::from(rng.random_range(-spread..=spread))
            };
            HalfPlane::new(nx, ny, c).expect("nonzero normal")
        })
        .collect();
    Instance::new(points, halfplanes).expect("nonempty by construction")
}
