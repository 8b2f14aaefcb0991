use serde::Serialize;

use crate::error::{Error, Inapplicable, Result};
use crate::geom2d::{self, Circle2, Point2, Selector, Tolerance};
use crate::hypmetric::{self, Model, OrthoCircle};
use crate::moebius::absolute_ratio;

use super::report::DiagnosticsReport;
use super::trace::{Builder, ConstructionTrace, Pick};
use super::{finish, inapplicable_on_parallel, MethodId, MidpointResult};

fn start(x: Point2, y: Point2, tol: &Tolerance) -> Builder<'_> {
    let mut b = Builder::for_model(Model::Disk, tol);
    b.given("x", x.into());
    b.given("y", y.into());
    b
}

/// `x, y ∈ B² \ {0}` distinct with `0, x, y` noncollinear.
fn off_diameter(x: Point2, y: Point2, tol: &Tolerance) -> Result<()> {
    hypmetric::check_pair(Model::Disk, x, y, tol)?;
    if x.norm() <= tol.eps_degenerate || y.norm() <= tol.eps_degenerate || hypmetric::is_diameter_pair(x, y, tol) {
        return Err(Error::CollinearWithOrigin);
    }
    Ok(())
}

/// As [`off_diameter`], and additionally `|x| ≠ |y|` by a margin that keeps
/// the bisector circle well conditioned.
fn distinct_moduli(x: Point2, y: Point2, tol: &Tolerance) -> Result<()> {
    off_diameter(x, y, tol)?;
    if (x.norm() - y.norm()).abs() <= tol.eps_conditioning {
        return Err(Error::EqualModuli);
    }
    Ok(())
}

/// Pair on a diameter: the chords through `x` and `y` perpendicular to the
/// diameter cut `S¹` in `m, m̄` and `n, n̄`, and `z = L(m,n̄) ∩ L(m̄,n)`.
pub fn b2_case1(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    hypmetric::check_pair(Model::Disk, x, y, tol)?;
    if !hypmetric::is_diameter_pair(x, y, tol) {
        return Err(Error::NotOnDiameter);
    }
    let mut b = start(x, y, tol);
    b.line("L_xy", "x", "y")?;
    b.perpendicular("L_x", "L_xy", "x")?;
    b.perpendicular("L_y", "L_xy", "y")?;
    b.intersect_lc("m", "L_x", "unit", Pick::First)?;
    b.intersect_lc("m_bar", "L_x", "unit", Pick::Farthest("m".into()))?;
    b.intersect_lc("n", "L_y", "unit", Pick::Nearest("m".into()))?;
    b.intersect_lc("n_bar", "L_y", "unit", Pick::Farthest("m".into()))?;
    b.line("L_1", "m", "n_bar")?;
    b.line("L_2", "m_bar", "n")?;
    b.intersect_ll("z", "L_1", "L_2")?;
    finish(Model::Disk, x, y, b.finish(MethodId::Case1, "z")?, tol)
}

/// Step (1) of every off-diameter method: `x*`, `y*` and the circle
/// `S¹(a, r_a)` through `x, y` and whichever inverse point lies closer to
/// the origin.
fn carrier(b: &mut Builder<'_>, x: Point2, y: Point2) -> Result<()> {
    b.invert_unit("x_inv", "x")?;
    b.invert_unit("y_inv", "y")?;
    let third = if x.norm() >= y.norm() { "x_inv" } else { "y_inv" };
    b.circle_through("C_a", "x", "y", third)?;
    Ok(())
}

fn run(
    x: Point2,
    y: Point2,
    method: MethodId,
    tol: &Tolerance,
    steps: impl FnOnce(&mut Builder<'_>) -> Result<()>,
) -> Result<MidpointResult> {
    let mut b = start(x, y, tol);
    carrier(&mut b, x, y)?;
    steps(&mut b).map_err(inapplicable_on_parallel(method))?;
    finish(Model::Disk, x, y, b.finish(method, "z")?, tol)
}

/// `w = (y(1−|x|²) − x(1−|y|²)) / (|y|² − |x|²)` and
/// `r_w = |x − y| √((1−|x|²)(1−|y|²)) / ||y|² − |x|²|`.
pub fn bisector_circle(x: Point2, y: Point2, tol: &Tolerance) -> Result<(Point2, f64)> {
    distinct_moduli(x, y, tol)?;
    let (qx, qy) = ((1.0 - x.norm()) * (1.0 + x.norm()), (1.0 - y.norm()) * (1.0 + y.norm()));
    let den = y.norm_sq() - x.norm_sq();
    let w = (y * qx - x * qy) / den;
    let r_w = x.distance(y) * (qx * qy).sqrt() / den.abs();
    Ok((w, r_w))
}

/// `z = S¹(w, r_w) ∩ S¹(a, r_a) ∩ B²` with `w = L(x,y) ∩ L(x*,y*)` and
/// `S¹(w, r_w)` drawn through the tangency point of a tangent from `w`.
#[allow(non_snake_case)]
pub fn b2_method_I(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    distinct_moduli(x, y, tol)?;
    run(x, y, MethodId::I, tol, |b| {
        b.line("L_xy", "x", "y")?;
        b.line("L_inv", "x_inv", "y_inv")?;
        b.intersect_ll("w", "L_xy", "L_inv")?;
        b.center("a", "C_a")?;
        b.circle_diameter("C_wa", "w", "a")?;
        b.intersect_cc("T", "C_wa", "C_a", Pick::First)?;
        b.circle_centered("C_w", "w", "T")?;
        b.intersect_cc("z", "C_w", "C_a", Pick::InDisk)?;
        Ok(())
    })
}

/// The auxiliary point of each of Methods II–VI and the pairs of points
/// whose joining lines meet there.
fn aux_lines(which: MethodId) -> Option<(&'static str, [(&'static str, &'static str); 2])> {
    Some(match which {
        MethodId::II => ("u", [("x", "y_inv"), ("y", "x_inv")]),
        MethodId::III => ("v", [("x", "x_end"), ("y", "y_end")]),
        MethodId::IV => ("s", [("x", "y_end"), ("y", "x_end")]),
        MethodId::V => ("t", [("x_end", "y_inv"), ("y_end", "x_inv")]),
        MethodId::VI => ("k", [("x_end", "x_inv"), ("y_end", "y_inv")]),
        _ => return None,
    })
}

/// `z = L(0, g) ∩ S¹(a, r_a) ∩ B²` where `g` is `u, v, s, t` or `k`.
#[allow(non_snake_case)]
pub fn b2_methods_II_to_VI(x: Point2, y: Point2, which: MethodId, tol: &Tolerance) -> Result<MidpointResult> {
    let Some((g, [(p1, q1), (p2, q2)])) = aux_lines(which) else {
        return Err(Error::MethodInapplicable { method: which, reason: Inapplicable::WrongModel });
    };
    distinct_moduli(x, y, tol)?;
    run(x, y, which, tol, |b| {
        b.ideal_endpoints("C_a", "unit")?;
        let (l1, l2) = (format!("L_{p1}_{q1}"), format!("L_{p2}_{q2}"));
        b.line(&l1, p1, q1)?;
        b.line(&l2, p2, q2)?;
        b.intersect_ll(g, &l1, &l2)?;
        let l0 = format!("L_0_{g}");
        b.line(&l0, "origin", g)?;
        b.intersect_lc("z", &l0, "C_a", Pick::InDisk)?;
        Ok(())
    })
}

/// `|x| = |y|`: the midpoint lies on the symmetry axis `L(0, a)`.
pub fn b2_equal_moduli(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    off_diameter(x, y, tol)?;
    if (x.norm() - y.norm()).abs() > tol.eps_conditioning {
        return Err(Error::DegenerateInput("moduli differ"));
    }
    run(x, y, MethodId::EqualModuli, tol, |b| {
        b.center("a", "C_a")?;
        b.line("L_0a", "origin", "a")?;
        b.intersect_lc("z", "L_0a", "C_a", Pick::InDisk)?;
        Ok(())
    })
}

pub(crate) fn b2_angles(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    off_diameter(x, y, tol)?;
    let z = hypmetric::midpoint_disk_angles(x, y, tol)?;
    let mut b = start(x, y, tol);
    b.ortho_circle("C_a", "x", "y")?;
    b.closed_form("z", "a + r_a e^{i delta}", &["C_a", "x", "y"], z)?;
    finish(Model::Disk, x, y, b.finish(MethodId::Angles, "z")?, tol)
}

fn ideal_endpoints(x: Point2, y: Point2, tol: &Tolerance) -> Result<(Point2, Point2)> {
    let g = hypmetric::geodesic_of(Model::Disk, x, y, tol)?;
    match (g.x_star.finite(), g.y_star.finite()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::DegenerateInput("geodesic endpoint at infinity")),
    }
}

fn meet(p1: Point2, q1: Point2, p2: Point2, q2: Point2, tol: &Tolerance) -> Result<Point2> {
    geom2d::intersect_line_line(&geom2d::line_through(p1, q1, tol)?, &geom2d::line_through(p2, q2, tol)?, tol)
}

/// `(|p − w||q − w| − r_w²) / r_w²`
fn inversion_pair(p: Point2, q: Point2, w: Point2, r_w: f64) -> f64 {
    (p.distance(w) * q.distance(w) - r_w * r_w) / (r_w * r_w)
}

/// Residuals of the bisector-circle identities, the collinearity of the
/// auxiliary points `u, v, s, t, k` with `0` and `z`, and the inversion pairs
/// in `S¹(w, r_w)`.
pub fn b2_auxiliary_report(x: Point2, y: Point2, tol: &Tolerance) -> Result<DiagnosticsReport> {
    let (w, r_w) = bisector_circle(x, y, tol)?;
    let oc = OrthoCircle::through(x, y, tol)?;
    let (x_end, y_end) = ideal_endpoints(x, y, tol)?;
    let (xi, yi) = (geom2d::invert_unit(x, tol)?, geom2d::invert_unit(y, tol)?);
    let cw = Circle2::new(w, r_w)?;
    let z = geom2d::intersect_circle_circle(&cw, &oc.circle(), Selector::InsideUnitDisk, tol)?;
    let oracle = hypmetric::midpoint_oracle(Model::Disk, x, y, tol)?;

    let mut rep = DiagnosticsReport::new("disk auxiliary points");
    rep.check("w.a = 1", (w.dot(oc.a) - 1.0) / (w.norm() * oc.a.norm()).max(1.0), tol);
    rep.check("r_w^2 + 1 = |w|^2", (r_w * r_w + 1.0 - w.norm_sq()) / w.norm_sq().max(1.0), tol);
    rep.check("S1(w,r_w) meets S1(a,r_a) at the midpoint", z.distance(oracle), tol);

    let u = meet(x, yi, y, xi, tol)?;
    let aux = [
        ("u", u),
        ("v", meet(x, x_end, y, y_end, tol)?),
        ("s", meet(x, y_end, y, x_end, tol)?),
        ("t", meet(x_end, yi, y_end, xi, tol)?),
        ("k", meet(x_end, xi, y_end, yi, tol)?),
    ];
    for (name, g) in aux {
        rep.check(&format!("0, z, {name} collinear"), geom2d::collinear(Point2::ORIGIN, z, g, tol).residual, tol);
    }
    let (qx, qy) = (1.0 - x.norm_sq(), 1.0 - y.norm_sq());
    let u_closed = (y * qx + x * qy) / (1.0 - x.norm_sq() * y.norm_sq());
    rep.check("u in closed form", u_closed.distance(u) / u.norm().max(1.0), tol);
    rep.check("u on L(x_*,y_*)", geom2d::collinear(x_end, y_end, u, tol).residual, tol);

    for (name, p, q) in [("x, y", x, y), ("x_*, y_*", x_end, y_end), ("x*, y*", xi, yi)] {
        rep.check(&format!("{name} inverse in S1(w,r_w)"), inversion_pair(p, q, w, r_w), tol);
        rep.check(&format!("w, {name} collinear"), geom2d::collinear(w, p, q, tol).residual, tol);
    }
    Ok(rep)
}

/// For `x` on a circle `S¹(a, r_a)` orthogonal to `S¹`, the point `y` of the
/// same circle for which `x*` and `y*` are diametrically opposite, so that the
/// arc `x*, x, y, y*` is a semicircle.
pub fn semicircle_partner(x: Point2, a: Point2, tol: &Tolerance) -> Result<Point2> {
    let r2 = a.norm_sq() - 1.0;
    if r2 <= 0.0 || ((x - a).norm_sq() - r2).abs() > tol.eps_incidence * r2.max(1.0) {
        return Err(Error::NotOnArc);
    }
    let xi = geom2d::invert_unit(x, tol)?;
    let y = geom2d::invert_unit(a * 2.0 - xi, tol)?;
    Model::Disk.check(y).map_err(|_| Error::NotOnArc)
}

/// Collinearity of `0, b, d` and `0, b', d'`, and, when the arc `x*, x, y, y*`
/// is a semicircle, the claims about the circle through `0, x, y`.
pub fn b2_chord_report(x: Point2, y: Point2, tol: &Tolerance) -> Result<DiagnosticsReport> {
    distinct_moduli(x, y, tol)?;
    let oc = OrthoCircle::through(x, y, tol)?;
    let (x_end, y_end) = ideal_endpoints(x, y, tol)?;
    let (xi, yi) = (geom2d::invert_unit(x, tol)?, geom2d::invert_unit(y, tol)?);
    let mut rep = DiagnosticsReport::new("disk chords");

    let b = meet(x_end, y, x, yi, tol)?;
    let d = meet(xi, y, x_end, yi, tol)?;
    rep.check("0, b, d collinear", geom2d::collinear(Point2::ORIGIN, b, d, tol).residual, tol);
    let b2 = meet(x, y_end, xi, y, tol)?;
    let d2 = meet(x, yi, xi, y_end, tol)?;
    rep.check("0, b', d' collinear", geom2d::collinear(Point2::ORIGIN, b2, d2, tol).residual, tol);

    let names = [
        "z = L(0,c) cap S1(a,r_a) is the midpoint",
        "S1(c,r_c) orthogonal to S1(a,r_a)",
        "|z,x,x*,z'| = |z,y,y*,z'|",
    ];
    let semicircle = (xi.distance(yi) - 2.0 * oc.r_a).abs() <= tol.eps_incidence * oc.r_a.max(1.0);
    if !semicircle {
        for n in names {
            rep.not_met(n);
        }
        return Ok(rep);
    }
    let c = geom2d::circle_through(Point2::ORIGIN, x, y, tol)?;
    let l0c = geom2d::line_through(Point2::ORIGIN, c.center, tol)?;
    let roots = geom2d::line_circle_roots(&l0c, &oc.circle(), tol)?;
    let z = Selector::InsideUnitDisk.pick(&roots)?;
    let zp = Selector::OutsideUnitDisk.pick(&roots)?;
    let oracle = hypmetric::midpoint_oracle(Model::Disk, x, y, tol)?;
    rep.check(names[0], z.distance(oracle), tol);
    rep.check(names[1], geom2d::circles_orthogonal(&c, &oc.circle(), tol).residual, tol);
    let lhs = absolute_ratio(z.into(), x.into(), xi.into(), zp.into(), tol)?;
    let rhs = absolute_ratio(z.into(), y.into(), yi.into(), zp.into(), tol)?;
    rep.check(names[2], (lhs - rhs) / lhs.max(1.0), tol);
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityCriterion {
    /// Whether `S¹(x*, t_x)` and `S¹(y*, t_y)` pass the orthogonality predicate.
    pub orthogonal: bool,
    /// Normalized `d² − t_x² − t_y²` of the two circles.
    pub orthogonality_residual: f64,
    /// `cos∠x0y − |x||y|`
    pub criterion_residual: f64,
}

impl OrthogonalityCriterion {
    /// The two residuals have opposite signs, or both vanish.
    pub fn consistent(&self, tol: &Tolerance) -> bool {
        let (o, c) = (self.orthogonality_residual, self.criterion_residual);
        (o.abs() <= tol.eps_incidence && c.abs() <= tol.eps_incidence) || o * c < 0.0
    }
}

pub fn orthogonality_criterion(x: Point2, y: Point2, tol: &Tolerance) -> Result<OrthogonalityCriterion> {
    off_diameter(x, y, tol)?;
    let circle = |p: Point2| -> Result<Circle2> {
        let t = (1.0 / p.norm_sq() - 1.0).sqrt();
        Circle2::new(geom2d::invert_unit(p, tol)?, t)
    };
    let check = geom2d::circles_orthogonal(&circle(x)?, &circle(y)?, tol);
    let (nx, ny) = (x.norm(), y.norm());
    Ok(OrthogonalityCriterion {
        orthogonal: check.holds,
        orthogonality_residual: check.residual,
        criterion_residual: x.dot(y) / (nx * ny) - nx * ny,
    })
}

/// Points `X_1, …, X_n` on the ray through `X_1` with
/// `ρ(0, X_k) = k ρ(0, X_1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointChain {
    pub base: Point2,
    pub points: Vec<Point2>,
    /// `ρ(0, X_1)`
    pub c: f64,
    #[serde(skip)]
    pub trace: ConstructionTrace,
}

/// Margin to the unit circle below which the chain stops.
pub const CHAIN_SATURATION: f64 = 1e-12;

/// Builds the chain with chords perpendicular to `L(0, X_1)`: `M_k` are the
/// chord ends on the side of `M_0`, the line `L(M_{k−1}, X_k)` meets `S¹` again
/// in `N_{k+1}`, and `X_{k+1}` is the foot of `N_{k+1}` on `L(0, X_1)`.
pub fn scale_sequence(x1: Point2, n: usize, tol: &Tolerance) -> Result<PointChain> {
    if n == 0 {
        return Err(Error::DegenerateInput("chain length must be positive"));
    }
    if x1.norm() <= tol.eps_degenerate {
        return Err(Error::DegenerateInput("X_1 is the origin"));
    }
    Model::Disk.check(x1)?;
    let mut b = Builder::for_model(Model::Disk, tol);
    b.given("X1", x1.into());
    b.line("L_0", "origin", "X1")?;
    b.perpendicular("P0", "L_0", "origin")?;
    b.intersect_lc("M0", "P0", "unit", Pick::First)?;
    b.perpendicular("P1", "L_0", "X1")?;
    b.intersect_lc("M1", "P1", "unit", Pick::Nearest("M0".into()))?;
    let mut points = vec![x1];
    for k in 1..n {
        if 1.0 - points[k - 1].norm() < CHAIN_SATURATION {
            return Err(Error::ChainSaturated(k));
        }
        let (m_prev, x_k) = (format!("M{}", k - 1), format!("X{k}"));
        let (chord, nn, perp) = (format!("Q{k}"), format!("N{}", k + 1), format!("P{}", k + 1));
        b.line(&chord, &m_prev, &x_k)?;
        b.intersect_lc(&nn, &chord, "unit", Pick::Farthest(m_prev.clone()))?;
        b.perpendicular(&perp, "L_0", &nn)?;
        let x_next = b.intersect_ll(&format!("X{}", k + 1), &perp, "L_0")?;
        b.intersect_lc(&format!("M{}", k + 1), &perp, "unit", Pick::Farthest(nn))?;
        points.push(x_next);
    }
    if 1.0 - points[n - 1].norm() < CHAIN_SATURATION {
        return Err(Error::ChainSaturated(n));
    }
    let trace = b.finish(MethodId::Case1, &format!("X{n}"))?;
    let c = hypmetric::rho_disk(Point2::ORIGIN, x1)?;
    Ok(PointChain { base: x1, points, c, trace })
}
