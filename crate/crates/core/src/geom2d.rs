//! Euclidean primitives: points, lines, circles, their intersections, and the
//! two Möbius generators (reflection in a line, inversion in a circle).
//!
//! Every operation is a pure function of its arguments. Branch decisions
//! ("are these lines parallel?") use [`Tolerance::eps_degenerate`]; checks
//! ("does this point lie on that circle?") use [`Tolerance::eps_incidence`].

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// A point of the plane, also used as a 2-vector and as a complex number
/// `x1 + i x2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 2]")]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x1, p.x2]
    }
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x1: 0.0, x2: 0.0 };

    pub const fn new(x1: f64, x2: f64) -> Self {
        Point2 { x1, x2 }
    }

    /// `r e^{i theta}`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point2::new(r * c, r * s)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x1 * o.x2 - self.x2 * o.x1
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn distance(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise rotation by a quarter turn.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.x2, self.x1)
    }

    pub fn arg(self) -> f64 {
        self.x2.atan2(self.x1)
    }

    pub fn conj(self) -> Point2 {
        Point2::new(self.x1, -self.x2)
    }

    /// Complex product.
    pub fn cmul(self, o: Point2) -> Point2 {
        Point2::new(self.x1 * o.x1 - self.x2 * o.x2, self.x1 * o.x2 + self.x2 * o.x1)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        self.cmul(Point2::from_polar(1.0, angle))
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2::new(0.5 * (self.x1 + o.x1), 0.5 * (self.x2 + o.x2))
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Equality up to an absolute tolerance on the Euclidean distance.
    pub fn approx_eq(self, o: Point2, tol: f64) -> bool {
        self.distance(o) <= tol
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x1, -self.x2)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x1 * k, self.x2 * k)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, k: f64) -> Point2 {
        Point2::new(self.x1 / k, self.x2 / k)
    }
}

/// Two-tier tolerance: assertions use `eps_incidence`, branch decisions use
/// the stricter `eps_degenerate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub eps_incidence: f64,
    pub eps_degenerate: f64,
    /// Relative gap below which a construction whose auxiliary point runs off
    /// to infinity (`w` for `|x| ≈ |y|`, or for a horizontal chord in the
    /// half-plane) is reported inapplicable.
    pub eps_conditioning: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_incidence: 1e-9, eps_degenerate: 1e-12, eps_conditioning: 1e-6 }
    }
}

impl Tolerance {
    /// Default tolerance with a different incidence threshold. The degenerate
    /// threshold is clamped so that `eps_degenerate <= eps_incidence` holds.
    pub fn with_incidence(eps_incidence: f64) -> Self {
        let d = Tolerance::default();
        Tolerance {
            eps_incidence,
            eps_degenerate: d.eps_degenerate.min(eps_incidence),
            eps_conditioning: d.eps_conditioning,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.eps_degenerate > 0.0 && self.eps_degenerate <= self.eps_incidence
    }
}

/// A line `{p : n·p = c}` with unit normal `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line2 {
    pub n: Point2,
    pub c: f64,
}

impl Line2 {
    /// The line `x2 = 0`.
    pub const REAL_AXIS: Line2 = Line2 { n: Point2::new(0.0, 1.0), c: 0.0 };

    /// Builds a line from a (not necessarily unit) normal and offset.
    pub fn from_normal(n: Point2, c: f64) -> Result<Line2> {
        let len = n.norm();
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::DegenerateInput("line normal is zero"));
        }
        Ok(Line2 { n: n / len, c: c / len })
    }

    /// Unit direction vector; the normal is its clockwise quarter turn.
    pub fn direction(&self) -> Point2 {
        self.n.perp()
    }

    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.n.dot(p) - self.c
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn foot(&self, p: Point2) -> Point2 {
        p - self.n * self.signed_distance(p)
    }
}

/// The circle `S¹(center, radius)`, radius strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle2 {
    pub center: Point2,
    pub radius: f64,
}

impl Circle2 {
    pub const UNIT: Circle2 = Circle2 { center: Point2::ORIGIN, radius: 1.0 };

    pub fn new(center: Point2, radius: f64) -> Result<Circle2> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::DegenerateRadius(radius));
        }
        Ok(Circle2 { center, radius })
    }

    /// Circle centered at `center` passing through `through`.
    pub fn centered_through(center: Point2, through: Point2) -> Result<Circle2> {
        Circle2::new(center, center.distance(through))
    }

    pub fn point_at(&self, angle: f64) -> Point2 {
        self.center + Point2::from_polar(self.radius, angle)
    }
}

/// A line or circle on which points are tested for incidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Carrier {
    Line(Line2),
    Circle(Circle2),
}

impl From<Line2> for Carrier {
    fn from(l: Line2) -> Self {
        Carrier::Line(l)
    }
}

impl From<Circle2> for Carrier {
    fn from(c: Circle2) -> Self {
        Carrier::Circle(c)
    }
}

/// Picks one point among the (at most two) roots of an intersection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Selector {
    /// `x2 > 0`
    UpperHalfPlane,
    /// `x2 < 0`
    LowerHalfPlane,
    /// `|p| < 1`
    InsideUnitDisk,
    /// `|p| > 1`
    OutsideUnitDisk,
    NearestTo(Point2),
    FarthestFrom(Point2),
    /// The first root in the canonical order: along the line direction for a
    /// line, counter-clockwise from the center line for two circles.
    First,
    /// The intersection must consist of a single point (tangency).
    Unique,
}

impl Selector {
    pub fn pick(&self, roots: &[Point2]) -> Result<Point2> {
        let filtered: Vec<Point2> = match *self {
            Selector::UpperHalfPlane => roots.iter().copied().filter(|p| p.x2 > 0.0).collect(),
            Selector::LowerHalfPlane => roots.iter().copied().filter(|p| p.x2 < 0.0).collect(),
            Selector::InsideUnitDisk => roots.iter().copied().filter(|p| p.norm_sq() < 1.0).collect(),
            Selector::OutsideUnitDisk => roots.iter().copied().filter(|p| p.norm_sq() > 1.0).collect(),
            Selector::NearestTo(q) | Selector::FarthestFrom(q) => {
                let far = matches!(self, Selector::FarthestFrom(_));
                match roots {
                    [p] => vec![*p],
                    [p, r] => {
                        let (dp, dr) = (p.distance(q), r.distance(q));
                        if dp == dr {
                            vec![*p, *r]
                        } else if (dp < dr) != far {
                            vec![*p]
                        } else {
                            vec![*r]
                        }
                    }
                    _ => Vec::new(),
                }
            }
            Selector::First => roots.first().copied().into_iter().collect(),
            Selector::Unique => roots.to_vec(),
        };
        match filtered.as_slice() {
            [p] => Ok(*p),
            _ => Err(Error::AmbiguousSelection { matched: filtered.len(), roots: roots.len() }),
        }
    }
}

/// Outcome of a predicate: the decision and the normalized signed residual it
/// was based on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub residual: f64,
}

impl Check {
    fn within(residual: f64, tol: f64) -> Check {
        Check { holds: residual.abs() <= tol, residual }
    }
}

/// The ruler: the line through two distinct points.
pub fn line_through(p: Point2, q: Point2, tol: &Tolerance) -> Result<Line2> {
    let d = q - p;
    let len = d.norm();
    if len <= tol.eps_degenerate * (1.0 + p.norm().max(q.norm())) {
        return Err(Error::DegenerateInput("coincident points"));
    }
    let n = (d / len).perp() * -1.0;
    Ok(Line2 { n, c: n.dot(p) })
}

/// The line through `p` orthogonal to `l`.
pub fn perpendicular_through(l: &Line2, p: Point2) -> Line2 {
    let n = l.direction();
    Line2 { n, c: n.dot(p) }
}

pub fn intersect_line_line(a: &Line2, b: &Line2, tol: &Tolerance) -> Result<Point2> {
    let det = a.n.cross(b.n);
    if det.abs() <= tol.eps_degenerate {
        return Err(Error::ParallelLines);
    }
    Ok(Point2::new((a.c * b.n.x2 - b.c * a.n.x2) / det, (a.n.x1 * b.c - b.n.x1 * a.c) / det))
}

/// All intersection points of a line and a circle: one on tangency, two
/// otherwise, ordered along the line direction.
pub fn line_circle_roots(l: &Line2, c: &Circle2, tol: &Tolerance) -> Result<Vec<Point2>> {
    let d = l.signed_distance(c.center);
    let foot = c.center - l.n * d;
    let r = c.radius;
    // (r - |d|)(r + |d|) keeps tangency well-conditioned.
    let h_sq = (r - d.abs()) * (r + d.abs());
    let scale = r.max(1.0);
    if h_sq < -tol.eps_incidence * scale * scale {
        return Err(Error::NoIntersection);
    }
    let h = h_sq.max(0.0).sqrt();
    if h <= tol.eps_degenerate * scale {
        return Ok(vec![foot]);
    }
    let t = l.direction();
    Ok(vec![foot - t * h, foot + t * h])
}

pub fn intersect_line_circle(l: &Line2, c: &Circle2, selector: Selector, tol: &Tolerance) -> Result<Point2> {
    selector.pick(&line_circle_roots(l, c, tol)?)
}

/// All intersection points of two circles, via the radical line.
pub fn circle_circle_roots(a: &Circle2, b: &Circle2, tol: &Tolerance) -> Result<Vec<Point2>> {
    let delta = b.center - a.center;
    let d = delta.norm();
    let scale = a.radius.max(b.radius).max(1.0);
    if d <= tol.eps_degenerate * scale {
        return Err(Error::ConcentricCircles);
    }
    let e = delta / d;
    // measured from the smaller circle, with d² − R² factored: a huge circle
    // meeting a small one otherwise loses most of its digits here
    let (small, big, dir) = if a.radius <= b.radius { (a, b, e) } else { (b, a, -e) };
    let along = ((d - big.radius) * (d + big.radius) + small.radius * small.radius) / (2.0 * d);
    let h_sq = (small.radius - along) * (small.radius + along);
    if h_sq < -tol.eps_incidence * scale * scale {
        return Err(Error::NoIntersection);
    }
    let base = small.center + dir * along;
    let h = h_sq.max(0.0).sqrt();
    if h <= tol.eps_degenerate * scale {
        return Ok(vec![base]);
    }
    let n = e.perp();
    Ok(vec![base + n * h, base - n * h])
}

pub fn intersect_circle_circle(a: &Circle2, b: &Circle2, selector: Selector, tol: &Tolerance) -> Result<Point2> {
    selector.pick(&circle_circle_roots(a, b, tol)?)
}

/// Circumcircle of three noncollinear points.
pub fn circle_through(p: Point2, q: Point2, r: Point2, tol: &Tolerance) -> Result<Circle2> {
    let b = q - p;
    let c = r - p;
    let d = 2.0 * b.cross(c);
    if d.abs() <= tol.eps_degenerate * (b.norm() * c.norm()).max(f64::MIN_POSITIVE) {
        return Err(Error::CollinearPoints);
    }
    let (bb, cc) = (b.norm_sq(), c.norm_sq());
    let u = Point2::new((c.x2 * bb - b.x2 * cc) / d, (b.x1 * cc - c.x1 * bb) / d);
    Circle2::new(p + u, u.norm())
}

/// The circle having `[p, q]` as a diameter.
pub fn circle_on_diameter(p: Point2, q: Point2, tol: &Tolerance) -> Result<Circle2> {
    let r = 0.5 * p.distance(q);
    if r <= tol.eps_degenerate * (1.0 + p.norm().max(q.norm())) {
        return Err(Error::DegenerateInput("diameter endpoints coincide"));
    }
    Circle2::new(p.midpoint(q), r)
}

/// `x* = x / |x|²`, inversion in the unit circle.
pub fn invert_unit(p: Point2, tol: &Tolerance) -> Result<Point2> {
    let n2 = p.norm_sq();
    if n2.sqrt() <= tol.eps_degenerate {
        return Err(Error::OriginInversion);
    }
    Ok(p / n2)
}

/// Reflection in the line `{x : x·a = t}`: `x − 2(x·a − t) a/|a|²`.
pub fn reflect_in_line(p: Point2, a: Point2, t: f64) -> Result<Point2> {
    let a2 = a.norm_sq();
    if !(a2 > 0.0) {
        return Err(Error::DegenerateInput("reflection normal is zero"));
    }
    Ok(p - a * (2.0 * (p.dot(a) - t) / a2))
}

/// Inversion in `S¹(a, r)`: `a + r²(x − a)/|x − a|²`.
pub fn invert_in_circle(p: Point2, c: &Circle2, tol: &Tolerance) -> Result<Point2> {
    let d = p - c.center;
    let d2 = d.norm_sq();
    if d2.sqrt() <= tol.eps_degenerate * c.radius.max(1.0) {
        return Err(Error::CenterInversion);
    }
    Ok(c.center + d * (c.radius * c.radius / d2))
}

/// Incidence of a point with a line or circle. The residual is the signed
/// Euclidean distance, divided by `max(1, |p|)` for lines and by
/// `max(1, radius)` for circles.
pub fn is_on(p: Point2, carrier: &Carrier, tol: &Tolerance) -> Check {
    let residual = match carrier {
        Carrier::Line(l) => l.signed_distance(p) / p.norm().max(1.0),
        Carrier::Circle(c) => (p.distance(c.center) - c.radius) / c.radius.max(1.0),
    };
    Check::within(residual, tol.eps_incidence)
}

/// `d² − r_a² − r_b²`, normalized by `max(1, r_a² + r_b²)`.
pub fn circles_orthogonal(a: &Circle2, b: &Circle2, tol: &Tolerance) -> Check {
    let d2 = (a.center - b.center).norm_sq();
    let rr = a.radius * a.radius + b.radius * b.radius;
    Check::within((d2 - rr) / rr.max(1.0), tol.eps_incidence)
}

/// Distance from the center to the line minus the radius, normalized by
/// `max(1, radius)`.
pub fn line_tangent_to_circle(l: &Line2, c: &Circle2, tol: &Tolerance) -> Check {
    let residual = (l.signed_distance(c.center).abs() - c.radius) / c.radius.max(1.0);
    Check::within(residual, tol.eps_incidence)
}

/// `(q − p) × (r − p)`, normalized by `max(1, |q − p|·|r − p|)`.
pub fn collinear(p: Point2, q: Point2, r: Point2, tol: &Tolerance) -> Check {
    let (b, c) = (q - p, r - p);
    let residual = b.cross(c) / (b.norm() * c.norm()).max(1.0);
    Check::within(residual, tol.eps_incidence)
}
