use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::MethodId;

/// Why a particular construction cannot be carried out on a given input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Inapplicable {
    /// `L(x,y)` is parallel to the boundary of the half-plane, so `w` does not exist.
    ParallelChord,
    /// `|x| = |y|`; the bisector circle degenerates into a line.
    EqualModuli,
    /// Two lines the method intersects are parallel.
    ParallelLines,
    /// The method needs a circular carrier but the pair lies on a line (or the reverse).
    WrongCarrier,
    /// The method belongs to the other model.
    WrongModel,
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Inapplicable::ParallelChord => "chord L(x,y) is parallel to the boundary",
            Inapplicable::EqualModuli => "|x| = |y|",
            Inapplicable::ParallelLines => "defining lines are parallel",
            Inapplicable::WrongCarrier => "points do not lie on the carrier this method needs",
            Inapplicable::WrongModel => "method is not defined for this model",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("lines are parallel")]
    ParallelLines,
    #[error("carriers do not intersect")]
    NoIntersection,
    #[error("selector matched {matched} of {roots} intersection points")]
    AmbiguousSelection { matched: usize, roots: usize },
    #[error("circles are concentric")]
    ConcentricCircles,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("inversion of the origin in the unit circle")]
    OriginInversion,
    #[error("inversion of a circle's own center")]
    CenterInversion,
    #[error("circle radius must be positive, got {0}")]
    DegenerateRadius(f64),
    #[error("repeated point in absolute ratio")]
    RepeatedPoint,
    #[error("point ({0}, {1}) is outside the model domain")]
    OutsideDomain(f64, f64),
    #[error("angles must satisfy 0 < alpha < beta < pi")]
    BadAngleOrder,
    #[error("point is not on the arc of the orthogonal circle inside the disk")]
    NotOnArc,
    #[error("point is not on the unit circle in the upper half-plane")]
    NotOnUnitCircle,
    #[error("points are not vertically aligned")]
    NotVerticallyAligned,
    #[error("points are not on a common diameter")]
    NotOnDiameter,
    #[error("|x| = |y|")]
    EqualModuli,
    #[error("0, x, y are collinear")]
    CollinearWithOrigin,
    #[error("method {method} is inapplicable: {reason}")]
    MethodInapplicable { method: MethodId, reason: Inapplicable },
    #[error("point chain saturated at step {0}: boundary no longer representable")]
    ChainSaturated(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
