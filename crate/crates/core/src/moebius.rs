//! The chordal metric, the absolute ratio of four points, and Möbius maps of
//! the extended plane presented as words in the two generators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{Circle2, Point2, Tolerance};

/// A point of the extended plane `ℝ² ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExtendedPoint {
    Finite(Point2),
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(self) -> Option<Point2> {
        match self {
            ExtendedPoint::Finite(p) => Some(p),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }
}

impl From<Point2> for ExtendedPoint {
    fn from(p: Point2) -> Self {
        ExtendedPoint::Finite(p)
    }
}

/// Chordal distance `q(x, y)`; `q(x, ∞) = 1/√(1+|x|²)`.
pub fn chordal(p: ExtendedPoint, q: ExtendedPoint) -> f64 {
    use ExtendedPoint::*;
    match (p, q) {
        (Infinity, Infinity) => 0.0,
        (Finite(x), Infinity) | (Infinity, Finite(x)) => 1.0 / (1.0 + x.norm_sq()).sqrt(),
        (Finite(x), Finite(y)) => {
            x.distance(y) / ((1.0 + x.norm_sq()).sqrt() * (1.0 + y.norm_sq()).sqrt())
        }
    }
}

fn distinct(p: ExtendedPoint, q: ExtendedPoint, tol: &Tolerance) -> bool {
    match (p, q) {
        (ExtendedPoint::Finite(x), ExtendedPoint::Finite(y)) => {
            x.distance(y) > tol.eps_degenerate * (1.0 + x.norm().max(y.norm()))
        }
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => false,
        _ => true,
    }
}

/// The absolute ratio `|a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d))`.
///
/// For four finite points this is evaluated as the quotient of Euclidean
/// distances `|a−c||b−d| / (|a−b||c−d|)`, to which the chordal form reduces.
pub fn absolute_ratio(a: ExtendedPoint, b: ExtendedPoint, c: ExtendedPoint, d: ExtendedPoint, tol: &Tolerance) -> Result<f64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if !distinct(pts[i], pts[j], tol) {
                return Err(Error::RepeatedPoint);
            }
        }
    }
    use ExtendedPoint::Finite;
    Ok(match (a, b, c, d) {
        (Finite(a), Finite(b), Finite(c), Finite(d)) => {
            (a.distance(c) * b.distance(d)) / (a.distance(b) * c.distance(d))
        }
        _ => (chordal(a, c) * chordal(b, d)) / (chordal(a, b) * chordal(c, d)),
    })
}

/// One generator of the Möbius group of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Generator {
    /// Reflection in `{x : x·a = t}`.
    Reflection { a: Point2, t: f64 },
    /// Inversion in a circle.
    Inversion(Circle2),
}

impl Generator {
    pub fn apply(&self, p: ExtendedPoint) -> ExtendedPoint {
        match (*self, p) {
            (Generator::Reflection { .. }, ExtendedPoint::Infinity) => ExtendedPoint::Infinity,
            (Generator::Reflection { a, t }, ExtendedPoint::Finite(x)) => {
                let a2 = a.norm_sq();
                ExtendedPoint::Finite(x - a * (2.0 * (x.dot(a) - t) / a2))
            }
            (Generator::Inversion(c), ExtendedPoint::Infinity) => ExtendedPoint::Finite(c.center),
            (Generator::Inversion(c), ExtendedPoint::Finite(x)) => {
                let d = x - c.center;
                let d2 = d.norm_sq();
                if d2 == 0.0 {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(c.center + d * (c.radius * c.radius / d2))
                }
            }
        }
    }
}

/// A Möbius map as a word in the generators, applied left to right. The empty
/// word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MoebiusMap2 {
    pub generators: Vec<Generator>,
}

impl MoebiusMap2 {
    pub fn identity() -> Self {
        MoebiusMap2::default()
    }

    pub fn new(generators: Vec<Generator>) -> Self {
        MoebiusMap2 { generators }
    }

    /// Inversion in `S¹(−e₂, √2)`. It fixes `±1`, sends `S¹` to the real
    /// axis and `0` to `e₂`, so it carries the unit disk onto the upper
    /// half-plane. It is its own inverse.
    pub fn disk_to_half_plane() -> Self {
        let c = Circle2 { center: Point2::new(0.0, -1.0), radius: std::f64::consts::SQRT_2 };
        MoebiusMap2::new(vec![Generator::Inversion(c)])
    }

    pub fn then(mut self, g: Generator) -> Self {
        self.generators.push(g);
        self
    }

    pub fn apply(&self, p: ExtendedPoint) -> ExtendedPoint {
        self.generators.iter().fold(p, |acc, g| g.apply(acc))
    }

    /// Applies the map to a finite point, failing if it is sent to `∞`.
    pub fn apply_finite(&self, p: Point2) -> Option<Point2> {
        self.apply(ExtendedPoint::Finite(p)).finite()
    }
}
