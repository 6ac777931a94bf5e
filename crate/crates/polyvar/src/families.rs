//! Exact generators for the polygon and graph families attaining equality
//! in the Reilly inequality, plus seeded random simple polygons for
//! property testing.

use crate::error::Error;
use crate::geometry::{Point, Polygon, StarGraph};
use std::f64::consts::{PI, TAU};

pub(crate) mod rng {
    //! Splitmix64: the 64-bit PRNG behind every seeded generator in this
    //! crate. Constants are part of the reproducibility contract and are
    //! documented in the README; a fixed seed yields bit-identical output
    //! on every platform.

    pub struct Splitmix64 {
        state: u64,
    }

    impl Splitmix64 {
        pub fn new(seed: u64) -> Self {
            Splitmix64 { state: seed }
        }

        pub fn next_u64(&mut self) -> u64 {
            self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = self.state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        }

        /// Uniform in `[0, 1)` with 53 bits of entropy.
        pub fn next_f64(&mut self) -> f64 {
            (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
        }
    }
}

use rng::Splitmix64;

/// A parameterized member of one of the named families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyDescriptor {
    Regular { n: usize, side: f64 },
    Losange { side: f64, theta: f64 },
    Trapeze { theta: f64 },
    FakeRegular { n: usize },
    StationaryStar { n: usize, length: f64 },
    RandomSimple { n: usize, seed: u64, rmin: f64, rmax: f64 },
}

/// Either kind of carrier a family generates.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Polygon(Polygon),
    Star(StarGraph),
}

impl FamilyDescriptor {
    pub fn build(&self) -> Result<Shape, Error> {
        match *self {
            FamilyDescriptor::Regular { n, side } => regular_polygon(n, side).map(Shape::Polygon),
            FamilyDescriptor::Losange { side, theta } => losange(side, theta).map(Shape::Polygon),
            FamilyDescriptor::Trapeze { theta } => trapeze(theta).map(Shape::Polygon),
            FamilyDescriptor::FakeRegular { n } => fake_regular(n).map(Shape::Polygon),
            FamilyDescriptor::StationaryStar { n, length } => {
                star_stationary(n, length).map(Shape::Star)
            }
            FamilyDescriptor::RandomSimple { n, seed, rmin, rmax } => {
                random_simple_polygon(n, seed, rmin, rmax).map(Shape::Polygon)
            }
        }
    }
}

/// Planar regular `n`-gon centered at the origin with the given side
/// length; vertex `k` sits at angle `2 pi k / n` on the circle of radius
/// `side / (2 sin(pi / n))`.
pub fn regular_polygon(n: usize, side: f64) -> Result<Polygon, Error> {
    if n < 3 {
        return Err(Error::out_of_range(format!(
            "regular polygon needs n >= 3, got {n}"
        )));
    }
    if side <= 0.0 || !side.is_finite() {
        return Err(Error::out_of_range("side must be positive"));
    }
    let radius = side / (2.0 * (PI / n as f64).sin());
    let vertices = (0..n)
        .map(|k| {
            let a = TAU * k as f64 / n as f64;
            vec![radius * a.cos(), radius * a.sin()]
        })
        .collect();
    Polygon::new(vertices)
}

/// The isosceles trapeze `T_theta`, `theta in (0, pi/2)`:
///
/// ```text
/// A_0 = ( cos t, sin t)        A_1 = (-cos t, sin t)
/// A_2 = (-tan t sin t, -sin t) A_3 = ( tan t sin t, -sin t)
/// ```
///
/// Edge lengths `(2 cos t, 1/cos t, 2 tan t sin t, 1/cos t)`, perimeter
/// `4 / cos t`, curvature magnitudes `2 cos t` on the top vertices and
/// `2 sin t` on the bottom ones, energy 8. The vertex barycenter is the
/// origin and every curvature vector equals `2 cos t` times its vertex,
/// so `T_theta` attains equality in the Reilly inequality for every
/// aperture; at `theta = pi/4` it degenerates to a square.
pub fn trapeze(theta: f64) -> Result<Polygon, Error> {
    if theta.is_nan() || theta <= 0.0 || theta >= PI / 2.0 {
        return Err(Error::out_of_range(format!(
            "trapeze needs theta in (0, pi/2), got {theta}"
        )));
    }
    let (s, c) = theta.sin_cos();
    let t = theta.tan() * s;
    Polygon::new(vec![
        vec![c, s],
        vec![-c, s],
        vec![-t, -s],
        vec![t, -s],
    ])
}

/// Rhombus centered at the origin with its diagonals on the axes:
/// vertices `(+-side cos(theta/2), 0)` and `(0, +-side sin(theta/2))`,
/// all four edges of length `side`. `theta in (0, pi)` is the apex angle;
/// `theta = pi/2` gives a rotated square.
///
/// With this placement each curvature vector is parallel to its vertex at
/// machine precision, which is the normalization the equality classifier
/// checks.
pub fn losange(side: f64, theta: f64) -> Result<Polygon, Error> {
    if side <= 0.0 || !side.is_finite() {
        return Err(Error::out_of_range("side must be positive"));
    }
    if theta.is_nan() || theta <= 0.0 || theta >= PI {
        return Err(Error::out_of_range(format!(
            "losange needs theta in (0, pi), got {theta}"
        )));
    }
    let x = side * (theta / 2.0).cos();
    let y = side * (theta / 2.0).sin();
    Polygon::new(vec![
        vec![x, 0.0],
        vec![0.0, y],
        vec![-x, 0.0],
        vec![0.0, -y],
    ])
}

/// The fake-regular polygon `F_n`, `n >= 2`: `n + 1` vertices on the unit
/// circle at angles `k pi / n` (`k = 0..n`) closed through an apex on the
/// negative y-axis at distance `cot(pi / 2n)` from the origin.
///
/// The circle edges all have length `a_n = 2 sin(pi / 2n)` and the two
/// apex edges length `b_n = 2 / a_n`; vertices are emitted circle-first,
/// so the length sequence is `(a_n, ..., a_n, b_n, b_n)` and the perimeter
/// `n a_n + 2 b_n`. The construction has vertex barycenter exactly at the
/// circumcenter, and every curvature vector equals `a_n` times its vertex.
pub fn fake_regular(n: usize) -> Result<Polygon, Error> {
    if n < 2 {
        return Err(Error::out_of_range(format!(
            "fake-regular polygon needs n >= 2, got {n}"
        )));
    }
    let half = PI / (2.0 * n as f64);
    let mut vertices: Vec<Point> = (0..=n)
        .map(|k| {
            let a = k as f64 * PI / n as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    vertices.push(vec![0.0, -half.cos() / half.sin()]);
    Polygon::new(vertices)
}

/// Planar star with `n` legs of equal `length`, leaves at angles
/// `2 pi k / n`. The unit tangents sum to zero, so the center is
/// stationary and the graph attains equality in the star Reilly
/// inequality.
pub fn star_stationary(n: usize, length: f64) -> Result<StarGraph, Error> {
    if n < 2 {
        return Err(Error::out_of_range(format!(
            "stationary star needs n >= 2, got {n}"
        )));
    }
    if length <= 0.0 || !length.is_finite() {
        return Err(Error::out_of_range("length must be positive"));
    }
    let leaves = (0..n)
        .map(|k| {
            let a = TAU * k as f64 / n as f64;
            vec![length * a.cos(), length * a.sin()]
        })
        .collect();
    StarGraph::new(vec![0.0, 0.0], leaves)
}

/// Deterministic random simple polygon: vertex `k` sits at angle
/// `(2 pi / n) (k + 0.95 u_k)` and radius `rmin + (rmax - rmin) v_k`,
/// where `u_0, ..., u_{n-1}, v_0, ..., v_{n-1}` are the first `2n` draws
/// of a splitmix64 stream seeded with `seed` (constants in the README).
///
/// The stratified angles keep every angular gap inside
/// `[0.05, 1.95] * 2 pi / n`, so for `n >= 4` all gaps stay below `pi` and
/// the polygon is star-shaped about the origin, hence simple; a triangle
/// is simple for any three non-collinear vertices. Same arguments, same
/// bits, always.
pub fn random_simple_polygon(n: usize, seed: u64, rmin: f64, rmax: f64) -> Result<Polygon, Error> {
    if n < 3 {
        return Err(Error::out_of_range(format!(
            "random polygon needs n >= 3, got {n}"
        )));
    }
    if rmin.is_nan() || rmin <= 0.0 || rmin > rmax || !rmax.is_finite() {
        return Err(Error::out_of_range(format!(
            "need 0 < rmin <= rmax, got rmin = {rmin}, rmax = {rmax}"
        )));
    }
    let mut rng = Splitmix64::new(seed);
    let angles: Vec<f64> = (0..n)
        .map(|k| TAU / n as f64 * (k as f64 + 0.95 * rng.next_f64()))
        .collect();
    let radii: Vec<f64> = (0..n)
        .map(|_| rmin + (rmax - rmin) * rng.next_f64())
        .collect();
    let vertices = angles
        .iter()
        .zip(&radii)
        .map(|(&a, &r)| vec![r * a.cos(), r * a.sin()])
        .collect();
    Polygon::new(vertices)
}
