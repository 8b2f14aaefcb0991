//! The `.hgc` construction language.
//!
//! A script is a list of single-assignment bindings, assertions and output
//! directives, one per line:
//!
//! ```text
//! point x = (0.5, 0)
//! point y = (0, 0.25)
//! circle C_a = geodesic(b2, x, y)
//! z = intersect(C_a, line(origin, midpoint_oracle(b2, x, y))) select in_disk
//! assert equal_rho(b2, x, z, z, y)
//! output z
//! ```
//!
//! Names `origin`, `unit` and `axis` are predefined. Arity and argument kinds
//! are checked by [`parse`]; geometry failures are reported by [`evaluate`]
//! with the location of the statement.

mod eval;
mod format;
mod lexer;
mod parser;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hypmetric::Model;

pub use eval::{evaluate, evaluate_with, AssertionOutcome, EvaluationResult, RuntimeGeometryError};
pub use format::format;
pub use parser::parse;

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Source position carried by the syntax tree. Every span compares equal so
/// that two programs differing only in layout are `==`.
#[derive(Debug, Clone, Copy, Eq)]
pub struct Span(pub Pos);

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl std::hash::Hash for Span {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScriptError {
    #[error("{pos}: syntax error: found {found}, expected {}", expected.join(" or "))]
    Syntax { pos: Pos, found: String, expected: Vec<String> },
    #[error("{pos}: `{name}` is already defined")]
    DuplicateName { pos: Pos, name: String },
    #[error("{}unknown name `{name}`", pos.map(|p| format!("{p}: ")).unwrap_or_default())]
    UnknownName { pos: Option<Pos>, name: String },
    #[error("{pos}: {function} takes {expected} argument(s), found {found}")]
    Arity { pos: Pos, function: String, expected: usize, found: usize },
    /// `context` names the slot, e.g. "argument 2 of perp".
    #[error("{pos}: {context} must be {expected}, found {found}")]
    Kind { pos: Pos, context: String, expected: String, found: Kind },
}

impl ScriptError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            ScriptError::Syntax { pos, .. }
            | ScriptError::DuplicateName { pos, .. }
            | ScriptError::Arity { pos, .. }
            | ScriptError::Kind { pos, .. } => Some(*pos),
            ScriptError::UnknownName { pos, .. } => *pos,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ScriptError::Syntax { .. } => "SyntaxError",
            ScriptError::DuplicateName { .. } => "DuplicateName",
            ScriptError::UnknownName { .. } => "UnknownName",
            ScriptError::Arity { .. } => "ArityError",
            ScriptError::Kind { .. } => "KindError",
        }
    }
}

/// Static kind of an expression. `Carrier` is a line or a circle, known only
/// at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Number,
    Model,
    Point,
    Line,
    Circle,
    Carrier,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Number => "number",
            Kind::Model => "model",
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Circle => "circle",
            Kind::Carrier => "carrier",
        }
    }

    /// Whether a value of static kind `self` may be used where `want` is
    /// expected. Carriers are accepted for lines and circles and checked when
    /// evaluated.
    pub fn fits(self, want: Kind) -> bool {
        self == want
            || matches!((self, want), (Kind::Carrier, Kind::Line | Kind::Circle) | (Kind::Line | Kind::Circle, Kind::Carrier))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub items: Vec<Item>,
}

impl Program {
    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.items.iter().filter_map(|i| i.stmt.as_ref())
    }
}

/// One non-blank source line: a statement, a comment, or both.
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub stmt: Option<Statement>,
    pub comment: Option<String>,
    /// Separated from the previous item by at least one blank line.
    pub blank_before: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    /// `input point NAME`: a point supplied when the script is run.
    Input { name: Ident },
    Binding { kind: Option<Kind>, name: Ident, expr: Expr },
    Assert { kind: AssertKind, args: Vec<Expr>, tol: Option<f64>, span: Span },
    Output { name: Ident },
}

impl Statement {
    pub fn pos(&self) -> Pos {
        match self {
            Statement::Input { name } | Statement::Binding { name, .. } | Statement::Output { name } => name.span.0,
            Statement::Assert { span, .. } => span.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64, Span),
    Point(f64, f64, Span),
    Model(Model, Span),
    Name(Ident),
    Call { func: Func, args: Vec<Expr>, select: Option<SelectExpr>, span: Span },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Number(_, s) | Expr::Point(_, _, s) | Expr::Model(_, s) | Expr::Call { span: s, .. } => s.0,
            Expr::Name(i) => i.span.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SelectExpr {
    Upper,
    Lower,
    InDisk,
    OutDisk,
    First,
    Unique,
    Boundary,
    Nearest(Ident),
    Farthest(Ident),
}

impl SelectExpr {
    pub const KEYWORDS: [&'static str; 9] =
        ["upper", "lower", "in_disk", "out_disk", "first", "unique", "boundary", "nearest", "farthest"];
}

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident { $($var:ident => $kw:literal),* $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name { $($var),* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$var),*];

            pub fn keyword(self) -> &'static str {
                match self { $($name::$var => $kw),* }
            }

            pub fn from_keyword(s: &str) -> Option<$name> {
                match s { $($kw => Some($name::$var),)* _ => None }
            }
        }
    };
}

named_enum!(
    /// Built-in constructors.
    Func {
        Line => "line",
        Perp => "perp",
        Circle => "circle",
        CircleThrough => "circle_through",
        CircleDiameter => "circle_diameter",
        OrthoCircle => "ortho_circle",
        Geodesic => "geodesic",
        Intersect => "intersect",
        Invert => "invert",
        ReflectReal => "reflect_real",
        Midpoint => "midpoint",
        Center => "center",
        MidpointOracle => "midpoint_oracle",
    }
);

named_enum!(
    AssertKind {
        On => "on",
        Orthogonal => "orthogonal",
        Tangent => "tangent",
        Collinear => "collinear",
        EqualRho => "equal_rho",
        Equals => "equals",
    }
);

/// Accepted kinds for each argument position.
pub(crate) type Signature = &'static [&'static [Kind]];

impl Func {
    pub(crate) fn signature(self) -> (Signature, Kind) {
        use Kind::*;
        const P: &[Kind] = &[Point];
        const L: &[Kind] = &[Line];
        const C: &[Kind] = &[Circle];
        const M: &[Kind] = &[Model];
        const CARRIER: &[Kind] = &[Carrier];
        const RADIUS: &[Kind] = &[Number, Point];
        match self {
            Func::Line => (&[P, P], Line),
            Func::Perp => (&[L, P], Line),
            Func::Circle => (&[P, RADIUS], Circle),
            Func::CircleThrough => (&[P, P, P], Circle),
            Func::CircleDiameter | Func::OrthoCircle => (&[P, P], Circle),
            Func::Geodesic => (&[M, P, P], Carrier),
            Func::Intersect => (&[CARRIER, CARRIER], Point),
            Func::Invert | Func::ReflectReal => (&[P], Point),
            Func::Midpoint => (&[P, P], Point),
            Func::Center => (&[C], Point),
            Func::MidpointOracle => (&[M, P, P], Point),
        }
    }
}

impl AssertKind {
    pub(crate) fn signature(self) -> Signature {
        use Kind::*;
        const P: &[Kind] = &[Point];
        const L: &[Kind] = &[Line];
        const C: &[Kind] = &[Circle];
        const M: &[Kind] = &[Model];
        const CARRIER: &[Kind] = &[Carrier];
        match self {
            AssertKind::On => &[P, CARRIER],
            AssertKind::Orthogonal => &[C, C],
            AssertKind::Tangent => &[L, C],
            AssertKind::Collinear => &[P, P, P],
            AssertKind::EqualRho => &[M, P, P, P, P],
            AssertKind::Equals => &[P, P],
        }
    }
}

/// Names bound before the first statement.
pub const PREDEFINED: [(&str, Kind); 3] = [("origin", Kind::Point), ("unit", Kind::Circle), ("axis", Kind::Line)];

/// Words that cannot be used as names.
pub const RESERVED: [&str; 10] = ["point", "line", "circle", "input", "assert", "output", "select", "tol", "h2", "b2"];
