//! Hyperbolic distance in the upper half-plane `H²` and the unit disk `B²`,
//! geodesic carriers with their ideal endpoints, closed-form midpoints, and a
//! bisection oracle for the midpoint that shares no code with the
//! compass-and-ruler constructions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{self, Carrier, Circle2, Line2, Point2, Tolerance};
use crate::moebius::{absolute_ratio, ExtendedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    #[serde(rename = "h2")]
    HalfPlane,
    #[serde(rename = "b2")]
    Disk,
}

impl Model {
    pub fn contains(self, p: Point2) -> bool {
        p.is_finite()
            && match self {
                Model::HalfPlane => p.x2 > 0.0,
                Model::Disk => p.norm_sq() < 1.0,
            }
    }

    pub fn check(self, p: Point2) -> Result<Point2> {
        if self.contains(p) {
            Ok(p)
        } else {
            Err(Error::OutsideDomain(p.x1, p.x2))
        }
    }

    pub fn rho(self, x: Point2, y: Point2) -> Result<f64> {
        match self {
            Model::HalfPlane => rho_halfplane(x, y),
            Model::Disk => rho_disk(x, y),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::HalfPlane => "h2",
            Model::Disk => "b2",
        })
    }
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "h2" | "H2" => Ok(Model::HalfPlane),
            "b2" | "B2" => Ok(Model::Disk),
            _ => Err(format!("unknown model `{s}` (expected h2 or b2)")),
        }
    }
}

/// Hyperbolic distance in `H²`.
///
/// `cosh ρ = 1 + |x−y|²/(2 x₂ y₂)` is rewritten through
/// `cosh ρ − 1 = 2 sinh²(ρ/2)` as `ρ = 2 arsinh(|x−y| / (2√(x₂y₂)))`, which
/// keeps full relative precision when `x` and `y` are close.
pub fn rho_halfplane(x: Point2, y: Point2) -> Result<f64> {
    Model::HalfPlane.check(x)?;
    Model::HalfPlane.check(y)?;
    Ok(2.0 * (x.distance(y) / (2.0 * (x.x2 * y.x2).sqrt())).asinh())
}

/// Hyperbolic distance in `B²` from `sinh(ρ/2) = |x−y| / √((1−|x|²)(1−|y|²))`.
pub fn rho_disk(x: Point2, y: Point2) -> Result<f64> {
    Model::Disk.check(x)?;
    Model::Disk.check(y)?;
    Ok(2.0 * (x.distance(y) / (one_minus_sq(x) * one_minus_sq(y)).sqrt()).asinh())
}

/// `1 − |p|²` as `(1 − |p|)(1 + |p|)`.
fn one_minus_sq(p: Point2) -> f64 {
    let r = p.norm();
    (1.0 - r) * (1.0 + r)
}

/// The circle through `x, y, x*, y*`, orthogonal to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoCircle {
    pub a: Point2,
    pub r_a: f64,
}

impl OrthoCircle {
    /// Closed-form center and radius for `x, y ≠ 0` with `0, x, y`
    /// noncollinear:
    /// `a = i (y(1+|x|²) − x(1+|y|²)) / (2(x₂y₁ − x₁y₂))`,
    /// `r_a = |x−y| · |x|y|² − y| / (2|y| |x₁y₂ − x₂y₁|)`.
    pub fn through(x: Point2, y: Point2, tol: &Tolerance) -> Result<OrthoCircle> {
        let det = x.x2 * y.x1 - x.x1 * y.x2;
        if x.norm() <= tol.eps_degenerate || y.norm() <= tol.eps_degenerate || det.abs() <= tol.eps_degenerate {
            return Err(Error::CollinearWithOrigin);
        }
        let num = y * (1.0 + x.norm_sq()) - x * (1.0 + y.norm_sq());
        let a = Point2::new(0.0, 1.0).cmul(num) / (2.0 * det);
        let r_a = x.distance(y) * (x * y.norm_sq() - y).norm() / (2.0 * y.norm() * det.abs());
        Ok(OrthoCircle { a, r_a })
    }

    pub fn circle(&self) -> Circle2 {
        Circle2 { center: self.a, radius: self.r_a }
    }

    /// `√(1 + r_a²) + r_a`.
    pub fn a_const(&self) -> f64 {
        (1.0 + self.r_a * self.r_a).sqrt() + self.r_a
    }

    /// The point of the arc closest to the origin, on the segment `[0, a]`.
    pub fn vertex(&self) -> Point2 {
        let m = self.a.norm();
        self.a * (1.0 / (m * (m + self.r_a)))
    }

    /// Signed angle `sgn(Im v')·∠0av'` where `'` denotes the rotation that
    /// puts `a` on the positive real axis.
    fn signed_angle(&self, v: Point2) -> f64 {
        2.0 * self.half_tan(v).atan()
    }

    /// `tan(θ/2)` for the signed angle `θ` of `v`, measured from the vertex
    /// so that nearly straight arcs keep their precision.
    fn half_tan(&self, v: Point2) -> f64 {
        let m = self.a.norm();
        let vr = v.cmul(self.a.conj()) * (1.0 / m);
        vr.x2 / (2.0 * self.r_a - (vr.x1 - 1.0 / (m + self.r_a)))
    }

    /// Point of the circle whose signed angle has half-tangent `t`.
    fn at_half_tan(&self, t: f64) -> Point2 {
        let m = self.a.norm();
        let k = 2.0 * self.r_a / (1.0 + t * t);
        let local = Point2::new(1.0 / (m + self.r_a) + k * t * t, k * t);
        local.cmul(self.a) * (1.0 / m)
    }
}

/// A hyperbolic geodesic: its Euclidean carrier and ideal endpoints, labelled
/// so that `x_*, x, y, y_*` occur in this order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Geodesic {
    pub model: Model,
    pub carrier: Carrier,
    pub x_star: ExtendedPoint,
    pub y_star: ExtendedPoint,
}

pub(crate) fn check_pair(model: Model, x: Point2, y: Point2, tol: &Tolerance) -> Result<()> {
    model.check(x)?;
    model.check(y)?;
    if x.distance(y) <= tol.eps_degenerate * (1.0 + x.norm().max(y.norm())) {
        return Err(Error::DegenerateInput("x and y coincide"));
    }
    Ok(())
}

pub(crate) fn half_plane_center(x: Point2, y: Point2) -> Point2 {
    let (d1, d2) = (y.x1 - x.x1, y.x2 - x.x2);
    Point2::new((x.x1 + y.x1) / 2.0 + d2 * (x.x2 + y.x2) / (2.0 * d1), 0.0)
}

pub(crate) fn is_vertical_pair(x: Point2, y: Point2, tol: &Tolerance) -> bool {
    (x.x1 - y.x1).abs() <= tol.eps_degenerate * (1.0 + x.norm().max(y.norm()))
}

pub(crate) fn is_diameter_pair(x: Point2, y: Point2, tol: &Tolerance) -> bool {
    x.cross(y).abs() <= tol.eps_degenerate
}

pub fn geodesic_of(model: Model, x: Point2, y: Point2, tol: &Tolerance) -> Result<Geodesic> {
    check_pair(model, x, y, tol)?;
    let (carrier, x_star, y_star) = match model {
        Model::HalfPlane if is_vertical_pair(x, y, tol) => {
            let foot = ExtendedPoint::Finite(Point2::new(x.x1, 0.0));
            let line = Line2::from_normal(Point2::new(1.0, 0.0), x.x1)?;
            if x.x2 < y.x2 {
                (Carrier::Line(line), foot, ExtendedPoint::Infinity)
            } else {
                (Carrier::Line(line), ExtendedPoint::Infinity, foot)
            }
        }
        Model::HalfPlane => {
            let o = half_plane_center(x, y);
            let r = x.distance(o);
            let right = ExtendedPoint::Finite(Point2::new(o.x1 + r, 0.0));
            let left = ExtendedPoint::Finite(Point2::new(o.x1 - r, 0.0));
            let circle = Circle2::new(o, r)?;
            if (x - o).arg() < (y - o).arg() {
                (Carrier::Circle(circle), right, left)
            } else {
                (Carrier::Circle(circle), left, right)
            }
        }
        Model::Disk if is_diameter_pair(x, y, tol) => {
            let d = (y - x) / x.distance(y);
            let line = geom2d::line_through(x, y, tol)?;
            (Carrier::Line(line), ExtendedPoint::Finite(-d), ExtendedPoint::Finite(d))
        }
        Model::Disk => {
            let oc = OrthoCircle::through(x, y, tol)?;
            // endpoints satisfy p·a = 1 on S¹; 1/|a| comes from the inputs, not from a
            let det = x.x2 * y.x1 - x.x1 * y.x2;
            let num = y * (1.0 + x.norm_sq()) - x * (1.0 + y.norm_sq());
            let dir = Point2::new(-num.x2, num.x1) * (det.signum() / num.norm());
            let inv = 2.0 * det.abs() / num.norm();
            let side = dir.perp() * ((1.0 - inv) * (1.0 + inv)).sqrt();
            let lo = ExtendedPoint::Finite(dir * inv - side);
            let hi = ExtendedPoint::Finite(dir * inv + side);
            if oc.signed_angle(x) < oc.signed_angle(y) {
                (Carrier::Circle(oc.circle()), lo, hi)
            } else {
                (Carrier::Circle(oc.circle()), hi, lo)
            }
        }
    };
    Ok(Geodesic { model, carrier, x_star, y_star })
}

/// `ρ(x, y) = log |x_*, x, y, y_*|`, evaluated as
/// `log(|x_*−y|/|x_*−x|) + log(|y_*−x|/|y_*−y|)` with each term computed
/// from `y − x` through `ln_1p`, so nearby points keep full relative accuracy.
pub fn rho_via_cross_ratio(model: Model, x: Point2, y: Point2, tol: &Tolerance) -> Result<f64> {
    let g = geodesic_of(model, x, y, tol)?;
    // distinct points keep the ratio well defined
    absolute_ratio(g.x_star, x.into(), y.into(), g.y_star, tol)?;
    Ok(log_distance_ratio(g.x_star, x, y) + log_distance_ratio(g.y_star, y, x))
}

/// `log(|e − q| / |e − p|)`; zero when `e` is the point at infinity.
fn log_distance_ratio(e: ExtendedPoint, p: Point2, q: Point2) -> f64 {
    match e {
        ExtendedPoint::Infinity => 0.0,
        ExtendedPoint::Finite(e) => {
            let (dp, dq) = (p.distance(e), q.distance(e));
            ((q - p).dot(q + p - e * 2.0) / ((dp + dq) * dp)).ln_1p()
        }
    }
}

/// Midpoint of `e^{iα}` and `e^{iβ}` on the unit semicircle:
/// `δ = arccos(cos((β+α)/2) / cos((β−α)/2))`, evaluated as
/// `tan(δ/2) = √(tan(α/2) tan(β/2))`, which keeps small angles accurate.
pub fn midpoint_halfplane_unitcircle(alpha: f64, beta: f64) -> Result<Point2> {
    if !(0.0 < alpha && alpha < beta && beta < PI) {
        return Err(Error::BadAngleOrder);
    }
    let t = ((alpha / 2.0).tan() * (beta / 2.0).tan()).sqrt();
    Ok(Point2::from_polar(1.0, 2.0 * t.atan()))
}

/// The same closed form for a pair on an arbitrary semicircle orthogonal to
/// the real axis: translate and scale to the unit semicircle and back.
pub fn midpoint_halfplane_angles(x: Point2, y: Point2, tol: &Tolerance) -> Result<Point2> {
    check_pair(Model::HalfPlane, x, y, tol)?;
    if is_vertical_pair(x, y, tol) {
        return Err(Error::DegenerateInput("pair lies on a vertical geodesic"));
    }
    let o = half_plane_center(x, y);
    let r = x.distance(o);
    // half-angle tangents at o, each from the better conditioned side
    let half_tan = |p: Point2| {
        let c = p.x1 - o.x1;
        if c >= 0.0 { p.x2 / (r + c) } else { (r - c) / p.x2 }
    };
    let (ta, tb) = (half_tan(x), half_tan(y));
    if !(ta > 0.0 && tb > 0.0 && ta.is_finite() && tb.is_finite()) {
        return Err(Error::BadAngleOrder);
    }
    let td = (ta * tb).sqrt();
    // z = x + r(e^{iδ} − e^{iα}) = x + 2ir sin((δ−α)/2) e^{i(δ+α)/2}
    let sin_half = (td - ta) / ((1.0 + td * td) * (1.0 + ta * ta)).sqrt();
    let mean = td.atan() + ta.atan();
    Ok(x + Point2::new(-mean.sin(), mean.cos()) * (2.0 * r * sin_half))
}

/// Distance from the vertex `w` of the arc (its point nearest the origin) to
/// a point `v` of the arc inside the disk:
/// `ρ(w, v) = |log((A tan(θ/2) + 1) / (A tan(θ/2) − 1))|`, `A = √(1+r_a²) + r_a`,
/// `θ = ∠0av`.
pub fn rho_disk_arc(ortho: &OrthoCircle, v: Point2, tol: &Tolerance) -> Result<f64> {
    let on_circle = (v.distance(ortho.a) - ortho.r_a).abs() <= tol.eps_incidence * ortho.r_a.max(1.0);
    if !on_circle || !Model::Disk.contains(v) {
        return Err(Error::NotOnArc);
    }
    let at = ortho.a_const() * ortho.half_tan(v).abs();
    if at >= 1.0 {
        return Err(Error::NotOnArc);
    }
    Ok(((at + 1.0) / (at - 1.0)).abs().ln())
}

/// Hyperbolic midpoint from the signed angles `α, β` of `x, y` at the center
/// of their orthogonal circle. With `s(θ) = log((1 + A tan(θ/2))/(1 − A tan(θ/2)))`
/// the arc is parametrized by hyperbolic arclength from the vertex, so the
/// midpoint has `s(δ) = (s(α) + s(β))/2`, which solves to
/// `tan(δ/2) = (C − 1)/(A(C + 1))` with
/// `C = √((1 + A tan(β/2))(1 + A tan(α/2)) / ((1 − A tan(β/2))(1 − A tan(α/2))))`.
pub fn midpoint_disk_angles(x: Point2, y: Point2, tol: &Tolerance) -> Result<Point2> {
    check_pair(Model::Disk, x, y, tol)?;
    let oc = OrthoCircle::through(x, y, tol).map_err(|_| Error::DegenerateInput("0, x, y are collinear"))?;
    let a = oc.a_const();
    let (ta, tb) = (oc.half_tan(x), oc.half_tan(y));
    let c = (((1.0 + a * tb) * (1.0 + a * ta)) / ((1.0 - a * tb) * (1.0 - a * ta))).sqrt();
    Ok(oc.at_half_tan((c - 1.0) / (a * (c + 1.0))))
}

/// `Pr(x) = (x₁, 0)` for `x` on the upper unit semicircle, read as a point of
/// the real diameter of `B²`.
pub fn projection_pr(x: Point2, tol: &Tolerance) -> Result<Point2> {
    if (x.norm() - 1.0).abs() > tol.eps_incidence || !(x.x2 > 0.0) {
        return Err(Error::NotOnUnitCircle);
    }
    Ok(Point2::new(x.x1, 0.0))
}

/// Hyperbolic midpoint by bisection along `J[x, y]` until
/// `|ρ(x,m) − ρ(m,y)| ≤ 1e−12` or the bracket can no longer shrink.
pub fn midpoint_oracle(model: Model, x: Point2, y: Point2, tol: &Tolerance) -> Result<Point2> {
    check_pair(model, x, y, tol)?;
    // Walk the segment [0, w] in a disk frame that moves x to the origin:
    // a disk automorphism for B², an affine map and the Cayley map for H².
    // Either way nearly straight carriers never produce huge centres.
    let one = Point2::new(1.0, 0.0);
    let i = Point2::new(0.0, 1.0);
    let w = match model {
        Model::Disk => cdiv(y - x, one - x.conj().cmul(y)),
        Model::HalfPlane => {
            let v = Point2::new((y.x1 - x.x1) / x.x2, y.x2 / x.x2);
            cdiv(v - i, v + i)
        }
    };
    let at = |s: f64| match model {
        Model::Disk => cdiv(w * s + x, one + x.conj().cmul(w * s)),
        Model::HalfPlane => {
            let v = i.cmul(cdiv(one + w * s, one - w * s));
            Point2::new(x.x1 + x.x2 * v.x1, x.x2 * v.x2)
        }
    };
    let imbalance = |s: f64| -> Result<(Point2, f64)> {
        let m = at(s);
        Ok((m, model.rho(x, m)? - model.rho(m, y)?))
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (mut best, mut best_f) = imbalance(0.5)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (m, f) = imbalance(mid)?;
        if f.abs() < best_f.abs() {
            best = m;
            best_f = f;
        }
        if f.abs() <= 1e-15 {
            break;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best)
}

fn cdiv(a: Point2, b: Point2) -> Point2 {
    a.cmul(b.conj()) * (1.0 / b.norm_sq())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x1: f64, x2: f64) -> Point2 {
        Point2::new(x1, x2)
    }

    fn t() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn rho_halfplane_examples() {
        assert!((rho_halfplane(p(0.0, 1.0), p(0.0, 2.0)).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(rho_halfplane(p(0.3, 0.7), p(0.3, 0.7)).unwrap(), 0.0);
        let expect = (3.0 + 2.0 * 2f64.sqrt()).ln();
        assert!((rho_halfplane(p(1.0, 1.0), p(-1.0, 1.0)).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 1.7627472).abs() < 1e-7);
        assert_eq!(rho_halfplane(p(0.0, -1.0), p(0.0, 1.0)), Err(Error::OutsideDomain(0.0, -1.0)));
    }

    #[test]
    fn rho_halfplane_matches_arcosh_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let x = p(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0));
            let y = p(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0));
            let direct = (1.0 + x.distance(y).powi(2) / (2.0 * x.x2 * y.x2)).acosh();
            let r = rho_halfplane(x, y).unwrap();
            assert!((r - direct).abs() <= 1e-12 * r.max(1e-3));
        }
    }

    #[test]
    fn rho_disk_examples() {
        assert!((rho_disk(p(0.0, 0.0), p(0.5, 0.0)).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert_eq!(rho_disk(p(0.2, 0.1), p(0.2, 0.1)).unwrap(), 0.0);
        let r = rho_disk(p(0.5, 0.0), p(0.0, 0.5)).unwrap();
        let expect = 2.0 * (0.5f64.sqrt() / 0.75).asinh();
        assert!((r - expect).abs() < 1e-15);
        assert!((r - 1.6806998).abs() < 1e-7);
        let via = rho_via_cross_ratio(Model::Disk, p(0.5, 0.0), p(0.0, 0.5), &t()).unwrap();
        assert!((r - via).abs() < 1e-12);
        assert!(rho_disk(p(1.0, 0.0), p(0.0, 0.0)).is_err());
    }

    #[test]
    fn geodesic_examples() {
        let g = geodesic_of(Model::Disk, p(0.5, 0.0), p(0.0, 0.5), &t()).unwrap();
        let Carrier::Circle(c) = g.carrier else { panic!("expected circle") };
        assert!(c.center.distance(p(1.25, 1.25)) < 1e-14);
        assert!((c.radius - 2.125f64.sqrt()).abs() < 1e-14);
        assert!((c.radius - 1.4577380).abs() < 1e-7);
        assert!((c.center.norm_sq() - c.radius * c.radius - 1.0).abs() < 1e-14);
        for q in [p(0.5, 0.0), p(0.0, 0.5)] {
            assert!((q.distance(c.center) - c.radius).abs() < 1e-14);
        }
        // x_* is on the x side
        let (xs, ys) = (g.x_star.finite().unwrap(), g.y_star.finite().unwrap());
        assert!(xs.distance(p(0.5, 0.0)) < ys.distance(p(0.5, 0.0)));
        assert!((xs.norm() - 1.0).abs() < 1e-14 && (ys.norm() - 1.0).abs() < 1e-14);

        let g = geodesic_of(Model::HalfPlane, p(0.0, 1.0), p(0.0, 4.0), &t()).unwrap();
        assert!(matches!(g.carrier, Carrier::Line(_)));
        assert_eq!(g.x_star, ExtendedPoint::Finite(p(0.0, 0.0)));
        assert_eq!(g.y_star, ExtendedPoint::Infinity);
        let g = geodesic_of(Model::HalfPlane, p(0.0, 4.0), p(0.0, 1.0), &t()).unwrap();
        assert_eq!(g.x_star, ExtendedPoint::Infinity);

        let g = geodesic_of(Model::Disk, p(0.3, 0.0), p(0.6, 0.0), &t()).unwrap();
        assert!(matches!(g.carrier, Carrier::Line(_)));
        assert_eq!(g.x_star, ExtendedPoint::Finite(p(-1.0, 0.0)));
        assert_eq!(g.y_star, ExtendedPoint::Finite(p(1.0, 0.0)));

        assert!(geodesic_of(Model::Disk, p(0.3, 0.0), p(0.3, 0.0), &t()).is_err());
    }

    #[test]
    fn cross_ratio_examples() {
        let r = rho_via_cross_ratio(Model::HalfPlane, p(0.0, 1.0), p(0.0, 2.0), &t()).unwrap();
        assert!((r - 2f64.ln()).abs() < 1e-15);
        let r = rho_via_cross_ratio(Model::Disk, p(0.0, 0.0), p(0.5, 0.0), &t()).unwrap();
        assert!((r - 3f64.ln()).abs() < 1e-15);
        assert!(rho_via_cross_ratio(Model::Disk, p(0.1, 0.0), p(0.1, 0.0), &t()).is_err());
    }

    #[test]
    fn halfplane_angle_midpoint_examples() {
        let z = midpoint_halfplane_unitcircle(PI / 3.0, 2.0 * PI / 3.0).unwrap();
        assert!(z.distance(p(0.0, 1.0)) < 1e-15);
        let z = midpoint_halfplane_unitcircle(PI / 6.0, PI / 2.0).unwrap();
        let delta = (1.0 / 3f64.sqrt()).acos();
        assert!((z.arg() - delta).abs() < 1e-15 && (delta - 0.9553166).abs() < 1e-7);
        let x = Point2::from_polar(1.0, PI / 6.0);
        let y = Point2::from_polar(1.0, PI / 2.0);
        let gap = rho_halfplane(x, z).unwrap() - rho_halfplane(z, y).unwrap();
        assert!(gap.abs() <= 1e-12);
        assert_eq!(midpoint_halfplane_unitcircle(1.0, 1.0), Err(Error::BadAngleOrder));
        assert_eq!(midpoint_halfplane_unitcircle(2.0, 1.0), Err(Error::BadAngleOrder));
    }

    #[test]
    fn disk_arc_distance_examples() {
        let oc = OrthoCircle::through(p(0.5, 0.0), p(0.0, 0.5), &t()).unwrap();
        assert!((oc.a_const() - (3.125f64.sqrt() + 2.125f64.sqrt())).abs() < 1e-14);
        assert!((oc.a_const() - 3.2255049).abs() < 1e-7);
        let w = oc.vertex();
        assert_eq!(rho_disk_arc(&oc, w, &t()).unwrap(), 0.0);
        for v in [p(0.0, 0.5), p(0.5, 0.0)] {
            let arc = rho_disk_arc(&oc, v, &t()).unwrap();
            let direct = rho_disk(w, v).unwrap();
            assert!((arc - direct).abs() <= 1e-9 * direct);
        }
        assert_eq!(rho_disk_arc(&oc, p(0.1, 0.1), &t()), Err(Error::NotOnArc));
    }

    #[test]
    fn disk_arc_distance_agrees_on_random_arcs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let x = Point2::from_polar(rng.gen_range(0.05..0.95), rng.gen_range(0.0..2.0 * PI));
            let y = Point2::from_polar(rng.gen_range(0.05..0.95), rng.gen_range(0.0..2.0 * PI));
            if x.cross(y).abs() < 1e-2 {
                continue;
            }
            let oc = OrthoCircle::through(x, y, &t()).unwrap();
            let w = oc.vertex();
            for v in [x, y] {
                let arc = rho_disk_arc(&oc, v, &t()).unwrap();
                let direct = rho_disk(w, v).unwrap();
                assert!((arc - direct).abs() <= 1e-9 * direct.max(1e-3), "{arc} vs {direct}");
            }
        }
    }

    #[test]
    fn ortho_circle_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let x = Point2::from_polar(rng.gen_range(0.01..0.99), rng.gen_range(0.0..2.0 * PI));
            let y = Point2::from_polar(rng.gen_range(0.01..0.99), rng.gen_range(0.0..2.0 * PI));
            if x.cross(y).abs() < 1e-3 {
                continue;
            }
            let oc = OrthoCircle::through(x, y, &t()).unwrap();
            let scale = 1.0 + oc.a.norm_sq();
            assert!((oc.a.norm_sq() - oc.r_a * oc.r_a - 1.0).abs() <= 1e-9 * scale);
            assert!((x.distance(oc.a) - oc.r_a).abs() <= 1e-9 * scale);
            assert!((y.distance(oc.a) - oc.r_a).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn disk_angle_midpoint_examples() {
        // mirror images across L(0, a) have their midpoint on L(0, a)
        let x = p(0.5, 0.1);
        let y = p(0.1, 0.5);
        let z = midpoint_disk_angles(x, y, &t()).unwrap();
        assert!((z.x1 - z.x2).abs() < 1e-14);
        let x = p(0.5, 0.0);
        let y = p(0.0, 0.5);
        let z = midpoint_disk_angles(x, y, &t()).unwrap();
        let m = midpoint_oracle(Model::Disk, x, y, &t()).unwrap();
        assert!(z.distance(m) <= 1e-9);
        assert!((z.x1 - z.x2).abs() < 1e-14);
        assert!(midpoint_disk_angles(p(0.1, 0.1), p(0.3, 0.3), &t()).is_err());
    }

    #[test]
    fn oracle_examples() {
        let m = midpoint_oracle(Model::HalfPlane, p(0.0, 1.0), p(0.0, 4.0), &t()).unwrap();
        assert!(m.distance(p(0.0, 2.0)) < 1e-12);
        let m = midpoint_oracle(Model::Disk, p(-0.5, 0.0), p(0.5, 0.0), &t()).unwrap();
        assert!(m.distance(Point2::ORIGIN) < 1e-12);
        let (x, y) = (p(0.5, 0.0), p(0.0, 0.5));
        let m = midpoint_oracle(Model::Disk, x, y, &t()).unwrap();
        assert!((rho_disk(x, m).unwrap() - rho_disk(m, y).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn oracle_soundness_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for i in 0..400 {
            let (model, x, y) = if i % 2 == 0 {
                (
                    Model::Disk,
                    Point2::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..2.0 * PI)),
                    Point2::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..2.0 * PI)),
                )
            } else {
                (
                    Model::HalfPlane,
                    p(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.0)),
                    p(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.0)),
                )
            };
            if x.distance(y) < 1e-3 {
                continue;
            }
            let m = midpoint_oracle(model, x, y, &t()).unwrap();
            let gap = model.rho(x, m).unwrap() - model.rho(m, y).unwrap();
            assert!(gap.abs() <= 1e-12, "{model} {x:?} {y:?}: {gap}");
            let g = geodesic_of(model, x, y, &t()).unwrap();
            assert!(geom2d::is_on(m, &g.carrier, &t()).holds);
        }
    }

    #[test]
    fn projection_examples() {
        let z = projection_pr(Point2::from_polar(1.0, PI / 3.0), &t()).unwrap();
        assert!(z.distance(p(0.5, 0.0)) < 1e-15);
        let z = projection_pr(Point2::from_polar(1.0, PI / 2.0), &t()).unwrap();
        assert!(z.distance(Point2::ORIGIN) < 1e-15);
        assert_eq!(projection_pr(p(0.5, 0.5), &t()), Err(Error::NotOnUnitCircle));

        let (x, y) = (Point2::from_polar(1.0, PI / 3.0), Point2::from_polar(1.0, 2.0 * PI / 3.0));
        let h = rho_halfplane(x, y).unwrap();
        let cot = 1.0 / (PI / 6.0).tan();
        assert!((h - 2.0 * cot.ln()).abs() < 1e-15);
        let b = rho_disk(projection_pr(x, &t()).unwrap(), projection_pr(y, &t()).unwrap()).unwrap();
        assert!((2.0 * h - b).abs() < 1e-12);
        assert!((b - 2.0 * 3f64.ln()).abs() < 1e-12);
    }
}
