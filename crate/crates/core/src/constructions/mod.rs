//! Compass-and-ruler midpoint constructions in both models, the auxiliary
//! point constructions behind them, and diagnostic reports that measure every
//! claimed incidence on a concrete input.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Inapplicable, Result};
use crate::geom2d::{self, Point2, Tolerance};
use crate::hypmetric::{self, Model};

mod disk;
mod halfplane;
mod report;
pub mod trace;

pub use disk::{
    b2_case1, b2_equal_moduli, b2_method_I, b2_methods_II_to_VI, bisector_circle, b2_auxiliary_report, b2_chord_report,
    orthogonality_criterion, scale_sequence, semicircle_partner, PointChain, OrthogonalityCriterion,
};
pub use halfplane::{h2_case1, h2_method_I, h2_method_II, h2_method_III, h2_method_IV, h2_auxiliary_report};
pub use report::{Claim, ClaimStatus, DiagnosticsReport};
pub use trace::{ConstructionTrace, Object, Op, Pick, Step, StepKind};

/// Disagreement with the bisection oracle above which a result is flagged.
pub const ORACLE_FLAG: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MethodId {
    Case1,
    I,
    II,
    III,
    IV,
    V,
    VI,
    EqualModuli,
    /// Closed form in the angles at the carrier's center.
    Angles,
}

impl MethodId {
    pub const ALL: [MethodId; 9] = [
        MethodId::Case1,
        MethodId::I,
        MethodId::II,
        MethodId::III,
        MethodId::IV,
        MethodId::V,
        MethodId::VI,
        MethodId::EqualModuli,
        MethodId::Angles,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::Case1 => "case1",
            MethodId::I => "I",
            MethodId::II => "II",
            MethodId::III => "III",
            MethodId::IV => "IV",
            MethodId::V => "V",
            MethodId::VI => "VI",
            MethodId::EqualModuli => "equal-moduli",
            MethodId::Angles => "angles",
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// A method request: a specific construction, or let [`midpoint`] choose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Method(MethodId),
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(MethodChoice::Auto)
        } else {
            s.parse().map(MethodChoice::Method)
        }
    }
}

impl From<MethodId> for MethodChoice {
    fn from(m: MethodId) -> Self {
        MethodChoice::Method(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MidpointResult {
    pub model: Model,
    pub x: Point2,
    pub y: Point2,
    pub method: MethodId,
    pub z: Point2,
    pub trace: ConstructionTrace,
    /// `|ρ(x,z) − ρ(z,y)|`
    pub residual_equal_distance: f64,
    /// Normalized distance of `z` from the geodesic carrier.
    pub residual_on_geodesic: f64,
    /// Euclidean distance from the bisection oracle's midpoint.
    pub oracle_disagreement: f64,
    pub flagged: bool,
}

pub(crate) fn finish(
    model: Model,
    x: Point2,
    y: Point2,
    trace: ConstructionTrace,
    tol: &Tolerance,
) -> Result<MidpointResult> {
    let z = trace.result;
    let g = hypmetric::geodesic_of(model, x, y, tol)?;
    let residual_equal_distance = (model.rho(x, z)? - model.rho(z, y)?).abs();
    let residual_on_geodesic = geom2d::is_on(z, &g.carrier, tol).residual.abs();
    let oracle = hypmetric::midpoint_oracle(model, x, y, tol)?;
    let oracle_disagreement = z.distance(oracle);
    Ok(MidpointResult {
        model,
        x,
        y,
        method: trace.method,
        z,
        trace,
        residual_equal_distance,
        residual_on_geodesic,
        oracle_disagreement,
        flagged: !(oracle_disagreement <= ORACLE_FLAG),
    })
}

/// Turns the failure of an auxiliary intersection into an inapplicability
/// report for `method`.
pub(crate) fn inapplicable_on_parallel(method: MethodId) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::ParallelLines => Error::MethodInapplicable { method, reason: Inapplicable::ParallelLines },
        e => e,
    }
}

fn wrong(method: MethodId, reason: Inapplicable) -> Error {
    Error::MethodInapplicable { method, reason }
}

/// Midpoint of `J[x, y]` by the requested construction.
///
/// `Auto` uses Case 1 on vertical pairs, the closed form when the carrier is
/// nearly straight, and Method III otherwise in `H²`; in
/// `B²` it uses Case 1 on a diameter, the equal-moduli construction when
/// `|x| = |y|`, the closed form when the moduli are too close for the
/// bisector circle to be well conditioned or the carrier is nearly straight,
/// and Method I otherwise.
pub fn midpoint(model: Model, x: Point2, y: Point2, method: MethodChoice, tol: &Tolerance) -> Result<MidpointResult> {
    hypmetric::check_pair(model, x, y, tol)?;
    match model {
        Model::HalfPlane => {
            let vertical = hypmetric::is_vertical_pair(x, y, tol);
            let m = match method {
                MethodChoice::Auto if vertical => MethodId::Case1,
                MethodChoice::Auto if nearly_vertical(x, y) => MethodId::Angles,
                MethodChoice::Auto => MethodId::III,
                MethodChoice::Method(m) => m,
            };
            match m {
                MethodId::Case1 if vertical => h2_case1(x, y, tol),
                MethodId::Case1 => Err(wrong(m, Inapplicable::WrongCarrier)),
                MethodId::I | MethodId::II | MethodId::III | MethodId::IV | MethodId::Angles if vertical => {
                    Err(wrong(m, Inapplicable::WrongCarrier))
                }
                MethodId::I => h2_method_I(x, y, tol),
                MethodId::II => h2_method_II(x, y, tol),
                MethodId::III => h2_method_III(x, y, tol),
                MethodId::IV => h2_method_IV(x, y, tol),
                MethodId::Angles => halfplane::h2_angles(x, y, tol),
                MethodId::V | MethodId::VI | MethodId::EqualModuli => Err(wrong(m, Inapplicable::WrongModel)),
            }
        }
        Model::Disk => {
            let diameter = hypmetric::is_diameter_pair(x, y, tol);
            let gap = (x.norm() - y.norm()).abs();
            let m = match method {
                MethodChoice::Auto if diameter => MethodId::Case1,
                MethodChoice::Auto if gap <= tol.eps_degenerate => MethodId::EqualModuli,
                MethodChoice::Auto if gap <= tol.eps_conditioning => MethodId::Angles,
                MethodChoice::Auto if nearly_diameter(x, y) => MethodId::Angles,
                MethodChoice::Auto => MethodId::I,
                MethodChoice::Method(m) => m,
            };
            match m {
                MethodId::Case1 if diameter => b2_case1(x, y, tol),
                MethodId::Case1 => Err(wrong(m, Inapplicable::WrongCarrier)),
                _ if diameter => Err(wrong(m, Inapplicable::WrongCarrier)),
                MethodId::EqualModuli if gap > tol.eps_conditioning => Err(wrong(m, Inapplicable::WrongCarrier)),
                MethodId::EqualModuli => b2_equal_moduli(x, y, tol),
                MethodId::Angles => disk::b2_angles(x, y, tol),
                _ if gap <= tol.eps_conditioning => Err(wrong(m, Inapplicable::EqualModuli)),
                MethodId::I => b2_method_I(x, y, tol),
                MethodId::II | MethodId::III | MethodId::IV | MethodId::V | MethodId::VI => {
                    b2_methods_II_to_VI(x, y, m, tol)
                }
            }
        }
    }
}

/// Carrier radius above which `Auto` prefers the closed form to
/// ruler-and-compass steps; in `H²` it is relative to the lower height.
pub const AUTO_MAX_CARRIER_RADIUS: f64 = 1e2;

fn nearly_vertical(x: Point2, y: Point2) -> bool {
    let o = hypmetric::half_plane_center(x, y);
    x.distance(o) >= AUTO_MAX_CARRIER_RADIUS * x.x2.min(y.x2)
}

fn nearly_diameter(x: Point2, y: Point2) -> bool {
    let det = x.x2 * y.x1 - x.x1 * y.x2;
    let num = y * (1.0 + x.norm_sq()) - x * (1.0 + y.norm_sq());
    2.0 * AUTO_MAX_CARRIER_RADIUS * det.abs() <= num.norm()
}

/// Methods that [`midpoint`] can run on this pair without reporting
/// inapplicability.
pub fn applicable_methods(model: Model, x: Point2, y: Point2, tol: &Tolerance) -> Vec<MethodId> {
    MethodId::ALL
        .into_iter()
        .filter(|&m| !matches!(midpoint(model, x, y, m.into(), tol), Err(Error::MethodInapplicable { .. })))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64) -> Point2 {
        Point2::new(a, b)
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodId::ALL {
            assert_eq!(m.as_str().parse::<MethodId>().unwrap(), m);
        }
        assert_eq!("auto".parse::<MethodChoice>().unwrap(), MethodChoice::Auto);
        assert_eq!("iv".parse::<MethodId>().unwrap(), MethodId::IV);
        assert!("VII".parse::<MethodId>().is_err());
    }

    #[test]
    fn midpoint_examples() {
        let t = Tolerance::default();
        let r = midpoint(Model::HalfPlane, p(0.0, 1.0), p(0.0, 4.0), MethodChoice::Auto, &t).unwrap();
        assert_eq!(r.method, MethodId::Case1);
        assert!(r.z.distance(p(0.0, 2.0)) <= 1e-12);
        let r = midpoint(Model::Disk, p(0.0, 0.0), p(0.8, 0.0), MethodChoice::Auto, &t).unwrap();
        assert!(r.z.distance(p(0.5, 0.0)) <= 1e-12);
        assert!(!r.flagged);
    }

    #[test]
    fn every_applicable_disk_method_agrees() {
        let t = Tolerance::default();
        let (x, y) = (p(0.5, 0.0), p(0.0, 0.25));
        let methods = applicable_methods(Model::Disk, x, y, &t);
        assert_eq!(methods.len(), 7);
        let zs: Vec<Point2> =
            methods.iter().map(|&m| midpoint(Model::Disk, x, y, m.into(), &t).unwrap().z).collect();
        for z in &zs {
            assert!(z.distance(zs[0]) <= 1e-9);
        }
    }

    #[test]
    fn explicit_method_on_equal_moduli_is_inapplicable() {
        let t = Tolerance::default();
        let err = midpoint(Model::Disk, p(0.5, 0.0), p(0.353553, 0.353553), MethodId::I.into(), &t).unwrap_err();
        assert_eq!(err, Error::MethodInapplicable { method: MethodId::I, reason: Inapplicable::EqualModuli });
        let r = midpoint(Model::Disk, p(0.5, 0.0), p(0.353553, 0.353553), MethodChoice::Auto, &t).unwrap();
        assert!(!r.flagged);
    }

    #[test]
    fn wrong_model_methods() {
        let t = Tolerance::default();
        let err = midpoint(Model::HalfPlane, p(0.0, 1.0), p(1.0, 2.0), MethodId::VI.into(), &t).unwrap_err();
        assert!(matches!(err, Error::MethodInapplicable { reason: Inapplicable::WrongModel, .. }));
        let err = midpoint(Model::HalfPlane, p(0.0, 1.0), p(0.0, 2.0), MethodId::II.into(), &t).unwrap_err();
        assert!(matches!(err, Error::MethodInapplicable { reason: Inapplicable::WrongCarrier, .. }));
    }

    #[test]
    fn swapping_inputs_gives_the_same_midpoint() {
        let t = Tolerance::default();
        let (x, y) = (p(0.3, 0.4), p(-0.6, 0.1));
        for m in applicable_methods(Model::Disk, x, y, &t) {
            let a = midpoint(Model::Disk, x, y, m.into(), &t).unwrap().z;
            let b = midpoint(Model::Disk, y, x, m.into(), &t).unwrap().z;
            assert!(a.distance(b) <= 1e-12, "{m}");
        }
        let (x, y) = (p(-1.0, 0.5), p(2.0, 1.5));
        for m in applicable_methods(Model::HalfPlane, x, y, &t) {
            let a = midpoint(Model::HalfPlane, x, y, m.into(), &t).unwrap().z;
            let b = midpoint(Model::HalfPlane, y, x, m.into(), &t).unwrap().z;
            assert!(a.distance(b) <= 1e-12, "{m}");
        }
    }

    #[test]
    fn exported_scripts_reproduce_the_result() {
        let t = Tolerance::default();
        for (model, x, y) in [(Model::Disk, p(0.5, 0.0), p(0.0, 0.25)), (Model::HalfPlane, p(-1.0, 0.5), p(2.0, 1.5))] {
            for m in applicable_methods(model, x, y, &t) {
                let r = midpoint(model, x, y, m.into(), &t).unwrap();
                let prog = crate::script::parse(&r.trace.to_script()).unwrap();
                let out = crate::script::evaluate(&prog, &t).unwrap();
                assert!(out.errors.is_empty(), "{m}: {:?}", out.errors);
                assert_eq!(out.outputs[0].1.as_point(), Some(r.z), "{m}");
            }
        }
    }

    #[test]
    fn traces_replay_bit_identically() {
        let t = Tolerance::default();
        for (model, x, y) in [
            (Model::Disk, p(0.5, 0.0), p(0.0, 0.25)),
            (Model::Disk, p(0.1, 0.1), p(0.3, 0.3)),
            (Model::HalfPlane, p(-1.0, 0.5), p(2.0, 1.5)),
            (Model::HalfPlane, p(3.0, 1.0), p(3.0, 9.0)),
        ] {
            for m in applicable_methods(model, x, y, &t) {
                let r = midpoint(model, x, y, m.into(), &t).unwrap();
                let z = r.trace.replay(&t).unwrap();
                assert_eq!(z.x1.to_bits(), r.z.x1.to_bits());
                assert_eq!(z.x2.to_bits(), r.z.x2.to_bits());
            }
        }
    }
}
