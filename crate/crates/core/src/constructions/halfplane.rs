use crate::error::{Error, Inapplicable, Result};
use crate::geom2d::{self, Circle2, Line2, Point2, Tolerance};
use crate::hypmetric::{self, Model, OrthoCircle};

use super::report::DiagnosticsReport;
use super::trace::{Builder, Pick};
use super::{finish, inapplicable_on_parallel, MethodId, MidpointResult};

fn start(x: Point2, y: Point2, tol: &Tolerance) -> Builder<'_> {
    let mut b = Builder::for_model(Model::HalfPlane, tol);
    b.given("x", x.into());
    b.given("y", y.into());
    b
}

/// Vertical pair: `Im z = √(x₂ y₂)`, reached through two auxiliary circles.
pub fn h2_case1(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    hypmetric::check_pair(Model::HalfPlane, x, y, tol)?;
    if !hypmetric::is_vertical_pair(x, y, tol) {
        return Err(Error::NotVerticallyAligned);
    }
    let (lo, hi) = if x.x2 < y.x2 { (x, y) } else { (y, x) };
    let mut b = start(lo, hi, tol);
    b.line("L_xy", "x", "y")?;
    b.intersect_ll("o", "L_xy", "axis")?;
    b.circle_diameter("C_xy", "x", "y")?;
    b.midpoint("m", "x", "y")?;
    b.circle_diameter("C_om", "o", "m")?;
    b.intersect_cc("a", "C_om", "C_xy", Pick::First)?;
    b.circle_centered("C_oa", "o", "a")?;
    b.intersect_lc("z", "L_xy", "C_oa", Pick::Upper)?;
    finish(Model::HalfPlane, x, y, b.finish(MethodId::Case1, "z")?, tol)
}

/// Shared first step: the semicircle `S¹(o, r)` through `x, y`, centered on
/// the perpendicular bisector of `[x, y]`.
fn general(x: Point2, y: Point2, method: MethodId, tol: &Tolerance) -> Result<Builder<'_>> {
    hypmetric::check_pair(Model::HalfPlane, x, y, tol)?;
    if hypmetric::is_vertical_pair(x, y, tol) {
        return Err(Error::MethodInapplicable { method, reason: Inapplicable::WrongCarrier });
    }
    let mut b = start(x, y, tol);
    b.line("L_xy", "x", "y")?;
    b.midpoint("m", "x", "y")?;
    b.perpendicular("B_xy", "L_xy", "m")?;
    b.intersect_ll("o", "B_xy", "axis")?;
    b.circle_centered("C_o", "o", "x")?;
    Ok(b)
}

fn run(
    x: Point2,
    y: Point2,
    method: MethodId,
    tol: &Tolerance,
    steps: impl FnOnce(&mut Builder<'_>) -> Result<()>,
) -> Result<MidpointResult> {
    let mut b = general(x, y, method, tol)?;
    steps(&mut b).map_err(inapplicable_on_parallel(method))?;
    finish(Model::HalfPlane, x, y, b.finish(method, "z")?, tol)
}

/// `w = L(x,y) ∩ ∂H²`; `z` lies on the circle with diameter `[w, o]`.
#[allow(non_snake_case)]
pub fn h2_method_I(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    let m = MethodId::I;
    if (x.x2 - y.x2).abs() <= tol.eps_conditioning * x.x2.max(y.x2) {
        hypmetric::check_pair(Model::HalfPlane, x, y, tol)?;
        return Err(Error::MethodInapplicable { method: m, reason: Inapplicable::ParallelChord });
    }
    run(x, y, m, tol, |b| {
        b.intersect_ll("w", "L_xy", "axis")?;
        b.circle_diameter("C_wo", "w", "o")?;
        b.intersect_cc("z", "C_wo", "C_o", Pick::Upper)?;
        Ok(())
    })
}

/// `v = L(x,x_*) ∩ L(y,y_*)`; `z` lies above `v`.
#[allow(non_snake_case)]
pub fn h2_method_II(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    run(x, y, MethodId::II, tol, |b| {
        b.ideal_endpoints("axis", "C_o")?;
        b.line("L_x", "x", "x_end")?;
        b.line("L_y", "y", "y_end")?;
        b.intersect_ll("v", "L_x", "L_y")?;
        b.perpendicular("L_v", "axis", "v")?;
        b.intersect_lc("z", "L_v", "C_o", Pick::Upper)?;
        Ok(())
    })
}

/// `a` is where the tangents to the carrier at `x` and `y` meet; `z` lies
/// above `a`.
#[allow(non_snake_case)]
pub fn h2_method_III(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    run(x, y, MethodId::III, tol, |b| {
        b.line("L_ox", "o", "x")?;
        b.line("L_oy", "o", "y")?;
        b.perpendicular("T_x", "L_ox", "x")?;
        b.perpendicular("T_y", "L_oy", "y")?;
        b.intersect_ll("a", "T_x", "T_y")?;
        b.circle_centered("C_a", "a", "x")?;
        b.perpendicular("L_a", "axis", "a")?;
        b.intersect_lc("z", "L_a", "C_o", Pick::Upper)?;
        Ok(())
    })
}

/// `z₁ = L(x,ȳ) ∩ L(x̄,y)` on the real axis; `z` lies above `z₁`.
#[allow(non_snake_case)]
pub fn h2_method_IV(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    run(x, y, MethodId::IV, tol, |b| {
        b.reflect_real("x_bar", "x")?;
        b.reflect_real("y_bar", "y")?;
        b.line("L_1", "x", "y_bar")?;
        b.line("L_2", "x_bar", "y")?;
        b.intersect_ll("z1", "L_1", "L_2")?;
        b.perpendicular("L_z1", "axis", "z1")?;
        b.intersect_lc("z", "L_z1", "C_o", Pick::Upper)?;
        Ok(())
    })
}

pub(crate) fn h2_angles(x: Point2, y: Point2, tol: &Tolerance) -> Result<MidpointResult> {
    let z = hypmetric::midpoint_halfplane_angles(x, y, tol)?;
    run(x, y, MethodId::Angles, tol, |b| {
        b.closed_form("z", "o + r e^{i delta}", &["o", "C_o", "x", "y"], z)?;
        Ok(())
    })
}

fn angle_at(vertex: Point2, p: Point2, q: Point2) -> f64 {
    let (u, v) = (p - vertex, q - vertex);
    u.cross(v).abs().atan2(u.dot(v))
}

fn orthocenter(p: Point2, q: Point2, r: Point2, tol: &Tolerance) -> Result<Point2> {
    let hp = geom2d::perpendicular_through(&geom2d::line_through(q, r, tol)?, p);
    let hq = geom2d::perpendicular_through(&geom2d::line_through(p, r, tol)?, q);
    geom2d::intersect_line_line(&hp, &hq, tol)
}

/// Residuals of the tangency, orthogonality and incidence claims about the
/// auxiliary points `w, v, a, z₁, n, s, t, u` and the orthocenter of
/// `v x_* y_*`.
///
/// The pair may lie on any semicircle; it is first translated and scaled onto
/// the unit semicircle. Claims that involve `w` are marked
/// [`ConditionNotMet`](super::ClaimStatus::ConditionNotMet) when `L(x,y)` is
/// parallel to the real axis.
pub fn h2_auxiliary_report(x: Point2, y: Point2, tol: &Tolerance) -> Result<DiagnosticsReport> {
    hypmetric::check_pair(Model::HalfPlane, x, y, tol)?;
    if hypmetric::is_vertical_pair(x, y, tol) {
        return Err(Error::DegenerateInput("pair lies on a vertical geodesic"));
    }
    let o = hypmetric::half_plane_center(x, y);
    let r = x.distance(o);
    let norm = |p: Point2| (p - o) / r;
    let (x, y) = (norm(x), norm(y));
    let (alpha, beta) = (x.arg().min(y.arg()), x.arg().max(y.arg()));
    let z = hypmetric::midpoint_halfplane_unitcircle(alpha, beta)?;
    let oracle = hypmetric::midpoint_oracle(Model::HalfPlane, x, y, tol)?;

    let (one, minus_one) = (Point2::new(1.0, 0.0), Point2::new(-1.0, 0.0));
    let (x_end, y_end) = if x.distance(one) < y.distance(one) { (one, minus_one) } else { (minus_one, one) };
    let v = geom2d::intersect_line_line(&geom2d::line_through(x, x_end, tol)?, &geom2d::line_through(y, y_end, tol)?, tol)?;
    let oc = OrthoCircle::through(x, y, tol)?;
    let (a, r_a) = (oc.a, oc.r_a);

    let mut rep = DiagnosticsReport::new("half-plane auxiliary points");
    rep.check("z is the hyperbolic midpoint", z.distance(oracle), tol);
    rep.check("L(v,z) orthogonal to the boundary", v.x1 - z.x1, tol);
    rep.check("L(a,z) orthogonal to the boundary", a.x1 - z.x1, tol);
    let z1 = Point2::new(z.x1, 0.0);
    let (x1, y1) = (Point2::new(x.x1, 0.0), Point2::new(y.x1, 0.0));
    rep.check("angle y1 z1 y equals angle x1 z1 x", angle_at(z1, y1, y) - angle_at(z1, x1, x), tol);
    rep.check("v on S1(a,r_a)", (v.distance(a) - r_a) / r_a.max(1.0), tol);
    let p = orthocenter(v, x_end, y_end, tol)?;
    rep.check("orthocenter of v x_* y_* on S1(a,r_a)", (p.distance(a) - r_a) / r_a.max(1.0), tol);

    let w_claims = [
        "L(w,z) tangent to S1",
        "S1 and S1(w/2,|w|/2) meet at z",
        "n is the Euclidean midpoint of [x,y]",
        "a.w = 1",
        "S1(a,r_a) orthogonal to S1(w/2,|w|/2)",
        "u on L(s,t)",
        "u.(2a-w) = 1",
    ];
    if (x.x2 - y.x2).abs() <= tol.eps_conditioning {
        for c in w_claims {
            rep.not_met(c);
        }
        return Ok(rep);
    }
    let l_xy = geom2d::line_through(x, y, tol)?;
    let w = geom2d::intersect_line_line(&l_xy, &Line2::REAL_AXIS, tol)?;
    let half = Circle2::new(w / 2.0, w.norm() / 2.0)?;
    rep.check(w_claims[0], (w.dot(z) - 1.0) / w.norm().max(1.0), tol);
    let zc = geom2d::intersect_circle_circle(&Circle2::UNIT, &half, geom2d::Selector::UpperHalfPlane, tol)?;
    rep.check(w_claims[1], zc.distance(z), tol);
    let n = geom2d::intersect_line_circle(&l_xy, &half, geom2d::Selector::FarthestFrom(w), tol)?;
    rep.check(w_claims[2], n.distance(x.midpoint(y)), tol);
    rep.check(w_claims[3], (a.dot(w) - 1.0) / (a.norm() * w.norm()).max(1.0), tol);
    rep.check(w_claims[4], geom2d::circles_orthogonal(&oc.circle(), &half, tol).residual, tol);
    let st = geom2d::circle_circle_roots(&oc.circle(), &half, tol)?;
    let u = geom2d::intersect_line_line(&geom2d::perpendicular_through(&Line2::REAL_AXIS, a), &l_xy, tol)?;
    match st.as_slice() {
        [s, t] => rep.check(w_claims[5], geom2d::collinear(*s, *t, u, tol).residual, tol),
        _ => rep.not_met(w_claims[5]),
    }
    let k = a * 2.0 - w;
    rep.check(w_claims[6], (u.dot(k) - 1.0) / (u.norm() * k.norm()).max(1.0), tol);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::ClaimStatus;
    use std::f64::consts::PI;

    fn p(a: f64, b: f64) -> Point2 {
        Point2::new(a, b)
    }

    fn e(t: f64) -> Point2 {
        Point2::from_polar(1.0, t)
    }

    const T: Tolerance = Tolerance { eps_incidence: 1e-9, eps_degenerate: 1e-12, eps_conditioning: 1e-6 };

    #[test]
    fn case1_examples() {
        let r = h2_case1(p(0.0, 1.0), p(0.0, 4.0), &T).unwrap();
        assert!(r.z.distance(p(0.0, 2.0)) <= 1e-12);
        let r = h2_case1(p(3.0, 9.0), p(3.0, 1.0), &T).unwrap();
        assert!(r.z.distance(p(3.0, 3.0)) <= 1e-12);
        let rho = hypmetric::rho_halfplane(p(3.0, 1.0), r.z).unwrap();
        assert!((rho - 3f64.ln()).abs() <= 1e-12);
        assert!(matches!(h2_case1(p(0.0, 2.0), p(0.0, 2.0), &T), Err(Error::DegenerateInput(_))));
        assert_eq!(h2_case1(p(0.0, 2.0), p(1.0, 2.0), &T).unwrap_err(), Error::NotVerticallyAligned);
    }

    #[test]
    fn method_i_examples() {
        let err = h2_method_I(e(PI / 3.0), e(2.0 * PI / 3.0), &T).unwrap_err();
        assert_eq!(err, Error::MethodInapplicable { method: MethodId::I, reason: Inapplicable::ParallelChord });
        let r = h2_method_I(e(PI / 6.0), e(PI / 2.0), &T).unwrap();
        let w = r.trace.point("w").unwrap();
        assert!(w.distance(p(3f64.sqrt(), 0.0)) <= 1e-12);
        let z = hypmetric::midpoint_halfplane_unitcircle(PI / 6.0, PI / 2.0).unwrap();
        assert!(r.z.distance(z) <= 1e-12);
        assert!(matches!(h2_method_I(p(0.5, 0.5), p(0.5, 0.5), &T), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn method_ii_examples() {
        let r = h2_method_II(e(PI / 6.0), e(PI / 2.0), &T).unwrap();
        let v = r.trace.point("v").unwrap();
        assert!((v.x1 - 1.0 / 3f64.sqrt()).abs() <= 1e-12);
        assert!(r.oracle_disagreement <= 1e-9);
        let r = h2_method_II(e(0.4), e(PI - 0.4), &T).unwrap();
        assert!(r.trace.point("v").unwrap().x1.abs() <= 1e-12);
        assert!(r.z.distance(p(0.0, 1.0)) <= 1e-12);
    }

    #[test]
    fn method_iii_examples() {
        let r = h2_method_III(e(PI / 6.0), e(PI / 2.0), &T).unwrap();
        let a = r.trace.point("a").unwrap();
        assert!(a.distance(e(PI / 3.0) / (PI / 6.0).cos()) <= 1e-12);
        assert!((a.norm() - 2.0 / 3f64.sqrt()).abs() <= 1e-12);
        let r = h2_method_III(p(1.0, 3.0), p(5.0, 3.0), &T).unwrap();
        assert!((r.trace.point("a").unwrap().x1 - 3.0).abs() <= 1e-12);
        assert!(r.z.distance(p(3.0, 13f64.sqrt())) <= 1e-12);
        assert!(r.oracle_disagreement <= 1e-9);
    }

    #[test]
    fn method_iv_examples() {
        let r = h2_method_IV(e(0.3), e(PI - 0.3), &T).unwrap();
        assert!(r.trace.point("z1").unwrap().norm() <= 1e-12);
        let r = h2_method_IV(e(PI / 6.0), e(PI / 2.0), &T).unwrap();
        let z1 = r.trace.point("z1").unwrap();
        assert!((z1.x1 - 1.0 / 3f64.sqrt()).abs() <= 1e-12);
        assert!(r.oracle_disagreement <= 1e-9);
    }

    #[test]
    fn methods_agree_on_a_general_carrier() {
        let (x, y) = (p(-2.0, 0.7), p(1.5, 2.2));
        let zs: Vec<Point2> = [h2_method_I, h2_method_II, h2_method_III, h2_method_IV, h2_angles]
            .iter()
            .map(|f| f(x, y, &T).unwrap().z)
            .collect();
        for z in &zs {
            assert!(z.distance(zs[0]) <= 1e-12);
        }
        let r = h2_method_II(x, y, &T).unwrap();
        assert!(r.residual_equal_distance <= 1e-12 && r.residual_on_geodesic <= 1e-12);
    }

    #[test]
    fn auxiliary_report_examples() {
        let rep = h2_auxiliary_report(e(PI / 6.0), e(PI / 2.0), &T).unwrap();
        assert_eq!(rep.claims.len(), 13);
        assert!(rep.claims.iter().all(|c| c.status == ClaimStatus::Pass), "{rep:#?}");
        let rep = h2_auxiliary_report(e(0.5), e(PI - 0.5), &T).unwrap();
        assert!(rep.passes());
        assert!(rep.max_residual() <= 1e-12, "{rep:#?}");
        assert_eq!(rep.get("a.w = 1").unwrap().status, ClaimStatus::ConditionNotMet);
        assert!(matches!(h2_auxiliary_report(e(0.5), e(0.5), &T), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn auxiliary_report_on_a_general_carrier() {
        let rep = h2_auxiliary_report(p(-2.0, 0.7), p(1.5, 2.2), &T).unwrap();
        assert!(rep.claims.iter().all(|c| c.status == ClaimStatus::Pass), "{rep:#?}");
    }
}
