//! Hyperbolic geodesics and midpoints in the upper half-plane `H²` and the
//! Poincaré disk `B²`, by closed forms and by compass-and-ruler constructions
//! whose every step is recorded.
//!
//! ```
//! use hypmid::{midpoint, MethodChoice, Model, Point2, Tolerance};
//!
//! let tol = Tolerance::default();
//! let r = midpoint(Model::HalfPlane, Point2::new(0.0, 1.0), Point2::new(0.0, 4.0), MethodChoice::Auto, &tol)?;
//! assert!(r.z.distance(Point2::new(0.0, 2.0)) < 1e-12);
//! # Ok::<(), hypmid::Error>(())
//! ```

pub mod constructions;
pub mod error;
pub mod geom2d;
pub mod hypmetric;
pub mod moebius;
pub mod script;
pub mod verify;

pub use constructions::{midpoint, ConstructionTrace, DiagnosticsReport, MethodChoice, MethodId, MidpointResult};
pub use error::{Error, Inapplicable, Result};
pub use geom2d::{Circle2, Line2, Point2, Tolerance};
pub use hypmetric::Model;

/// The guide's chapters, one module each, so `cargo test --doc` runs every
/// snippet in `book/src`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/moebius.md")]
    mod moebius {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/traces.md")]
    mod traces {}
    #[doc = include_str!("../../../book/src/scripts.md")]
    mod scripts {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
