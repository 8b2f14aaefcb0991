use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::constructions::trace::{Env, Object, Pick};
use crate::error::{Error, Result};
use crate::geom2d::{self, Carrier, Circle2, Line2, Point2, Tolerance};
use crate::hypmetric::{self, Model, OrthoCircle};

use super::format::statement as show;
use super::{AssertKind, Expr, Func, Kind, Pos, Program, ScriptError, SelectExpr, Statement};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssertionOutcome {
    pub pos: Pos,
    /// The assertion as written in canonical form.
    pub text: String,
    /// `None` when an argument could not be evaluated.
    pub residual: Option<f64>,
    pub tol: f64,
    pub passed: bool,
}

/// A geometry failure at a statement.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeGeometryError {
    /// Position of the innermost expression that failed.
    pub pos: Pos,
    pub statement: String,
    pub error: Error,
}

impl fmt::Display for RuntimeGeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} in `{}`", self.pos, self.error, self.statement)
    }
}

impl std::error::Error for RuntimeGeometryError {}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvaluationResult {
    /// Every name bound by the script, in order, including inputs.
    pub bindings: Vec<(String, Object)>,
    pub assertions: Vec<AssertionOutcome>,
    pub outputs: Vec<(String, Object)>,
    pub errors: Vec<RuntimeGeometryError>,
}

impl EvaluationResult {
    pub fn passes(&self) -> bool {
        self.errors.is_empty() && self.assertions.iter().all(|a| a.passed)
    }

    pub fn get(&self, name: &str) -> Option<Object> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, o)| *o)
    }

    pub fn point(&self, name: &str) -> Option<Point2> {
        self.get(name).and_then(|o| o.as_point())
    }
}

pub fn evaluate(p: &Program, tol: &Tolerance) -> Result<EvaluationResult, ScriptError> {
    evaluate_with(p, &[], tol)
}

/// Evaluates with the given points bound to `input point` names or replacing
/// point-literal bindings. Statements run in order; a failing statement is
/// recorded and evaluation continues with the next one.
pub fn evaluate_with(p: &Program, bind: &[(String, Point2)], tol: &Tolerance) -> Result<EvaluationResult, ScriptError> {
    let overridable: HashSet<&str> = p
        .statements()
        .filter_map(|s| match s {
            Statement::Input { name } | Statement::Binding { name, expr: Expr::Point(..), .. } => Some(name.name.as_str()),
            _ => None,
        })
        .collect();
    if let Some((name, _)) = bind.iter().find(|(n, _)| !overridable.contains(n.as_str())) {
        return Err(ScriptError::UnknownName { pos: None, name: name.clone() });
    }
    let bound = |n: &str| bind.iter().rev().find(|(b, _)| b == n).map(|(_, p)| *p);
    for s in p.statements() {
        if let Statement::Input { name } = s {
            if bound(&name.name).is_none() {
                return Err(ScriptError::UnknownName { pos: Some(name.span.0), name: name.name.clone() });
            }
        }
    }

    let mut ev = Evaluator { env: Env::default(), failed: HashSet::new(), tol };
    ev.env.insert("origin", Point2::ORIGIN.into());
    ev.env.insert("unit", Circle2::UNIT.into());
    ev.env.insert("axis", Line2::REAL_AXIS.into());
    let mut out = EvaluationResult::default();
    for s in p.statements() {
        match s {
            Statement::Input { name } | Statement::Binding { name, expr: Expr::Point(..), .. } if bound(&name.name).is_some() => {
                let at = bound(&name.name).unwrap_or(Point2::ORIGIN);
                ev.env.insert(&name.name, at.into());
                out.bindings.push((name.name.clone(), at.into()));
            }
            Statement::Input { .. } => {}
            Statement::Binding { kind, name, expr } => {
                let r = ev.expr(expr).and_then(|o| match kind {
                    Some(k) if !fits(&o, *k) => Err((expr.pos(), kind_error(*k))),
                    _ => Ok(o),
                });
                match r {
                    Ok(o) => {
                        ev.env.insert(&name.name, o);
                        out.bindings.push((name.name.clone(), o));
                    }
                    Err((pos, error)) => {
                        ev.failed.insert(name.name.clone());
                        out.errors.push(RuntimeGeometryError { pos, statement: show(s), error });
                    }
                }
            }
            Statement::Assert { kind, args, tol: t, span } => {
                let limit = t.unwrap_or(tol.eps_incidence);
                let residual = match ev.assertion(*kind, args) {
                    Ok(r) => Some(r),
                    Err((pos, error)) => {
                        out.errors.push(RuntimeGeometryError { pos, statement: show(s), error });
                        None
                    }
                };
                out.assertions.push(AssertionOutcome {
                    pos: span.0,
                    text: show(s),
                    residual,
                    tol: limit,
                    passed: residual.is_some_and(|r| r.abs() <= limit),
                });
            }
            Statement::Output { name } => match ev.name(&name.name, name.span.0) {
                Ok(o) => out.outputs.push((name.name.clone(), o)),
                Err((pos, error)) => out.errors.push(RuntimeGeometryError { pos, statement: show(s), error }),
            },
        }
    }
    Ok(out)
}

fn fits(o: &Object, k: Kind) -> bool {
    matches!((o, k), (Object::Point { .. }, Kind::Point) | (Object::Line { .. }, Kind::Line) | (Object::Circle { .. }, Kind::Circle))
}

fn kind_error(k: Kind) -> Error {
    match k {
        Kind::Point => Error::DegenerateInput("expected a point"),
        Kind::Line => Error::DegenerateInput("expected a line"),
        _ => Error::DegenerateInput("expected a circle"),
    }
}

type Eval<T> = std::result::Result<T, (Pos, Error)>;

struct Evaluator<'t> {
    env: Env,
    failed: HashSet<String>,
    tol: &'t Tolerance,
}

impl Evaluator<'_> {
    fn name(&self, name: &str, pos: Pos) -> Eval<Object> {
        if self.failed.contains(name) {
            return Err((pos, Error::DegenerateInput("depends on a binding that failed")));
        }
        self.env.get(name).map_err(|e| (pos, e))
    }

    fn point(&self, e: &Expr) -> Eval<Point2> {
        self.expr(e)?.as_point().ok_or((e.pos(), kind_error(Kind::Point)))
    }

    fn line(&self, e: &Expr) -> Eval<Line2> {
        self.expr(e)?.as_line().ok_or((e.pos(), kind_error(Kind::Line)))
    }

    fn circle(&self, e: &Expr) -> Eval<Circle2> {
        self.expr(e)?.as_circle().ok_or((e.pos(), kind_error(Kind::Circle)))
    }

    fn carrier(&self, e: &Expr) -> Eval<Carrier> {
        match self.expr(e)? {
            Object::Line { line } => Ok(line.into()),
            Object::Circle { circle } => Ok(circle.into()),
            Object::Point { .. } => Err((e.pos(), Error::DegenerateInput("expected a line or circle"))),
        }
    }

    fn model(e: &Expr) -> Model {
        match e {
            Expr::Model(m, _) => *m,
            _ => unreachable!("model arguments are checked by the parser"),
        }
    }

    fn pick(&self, s: &SelectExpr) -> Eval<Pick> {
        Ok(match s {
            SelectExpr::Upper => Pick::Upper,
            SelectExpr::Lower => Pick::Lower,
            SelectExpr::InDisk => Pick::InDisk,
            SelectExpr::OutDisk => Pick::OutDisk,
            SelectExpr::First => Pick::First,
            SelectExpr::Unique => Pick::Unique,
            SelectExpr::Boundary => Pick::Boundary,
            SelectExpr::Nearest(id) | SelectExpr::Farthest(id) => {
                self.name(&id.name, id.span.0)?;
                if matches!(s, SelectExpr::Nearest(_)) {
                    Pick::Nearest(id.name.clone())
                } else {
                    Pick::Farthest(id.name.clone())
                }
            }
        })
    }

    fn expr(&self, e: &Expr) -> Eval<Object> {
        let (func, args, select, pos) = match e {
            Expr::Point(a, b, _) => return Ok(Point2::new(*a, *b).into()),
            Expr::Name(id) => return self.name(&id.name, id.span.0),
            Expr::Number(..) | Expr::Model(..) => unreachable!("bare numbers and models are rejected by the parser"),
            Expr::Call { func, args, select, span } => (*func, args, select, span.0),
        };
        let tol = self.tol;
        let at = |r: Result<Object>| r.map_err(|err| (pos, err));
        match func {
            Func::Line => {
                let (p, q) = (self.point(&args[0])?, self.point(&args[1])?);
                at(geom2d::line_through(p, q, tol).map(Into::into))
            }
            Func::Perp => {
                let (l, p) = (self.line(&args[0])?, self.point(&args[1])?);
                Ok(geom2d::perpendicular_through(&l, p).into())
            }
            Func::Circle => {
                let c = self.point(&args[0])?;
                match &args[1] {
                    Expr::Number(r, _) => at(Circle2::new(c, *r).map(Into::into)),
                    other => {
                        let t = self.point(other)?;
                        at(Circle2::centered_through(c, t).map(Into::into))
                    }
                }
            }
            Func::CircleThrough => {
                let (p, q, r) = (self.point(&args[0])?, self.point(&args[1])?, self.point(&args[2])?);
                at(geom2d::circle_through(p, q, r, tol).map(Into::into))
            }
            Func::CircleDiameter => {
                let (p, q) = (self.point(&args[0])?, self.point(&args[1])?);
                at(geom2d::circle_on_diameter(p, q, tol).map(Into::into))
            }
            Func::OrthoCircle => {
                let (p, q) = (self.point(&args[0])?, self.point(&args[1])?);
                at(OrthoCircle::through(p, q, tol).map(|o| o.circle().into()))
            }
            Func::Geodesic => {
                let (p, q) = (self.point(&args[1])?, self.point(&args[2])?);
                at(hypmetric::geodesic_of(Self::model(&args[0]), p, q, tol).map(|g| match g.carrier {
                    Carrier::Line(l) => l.into(),
                    Carrier::Circle(c) => c.into(),
                }))
            }
            Func::Intersect => {
                let (a, b) = (self.carrier(&args[0])?, self.carrier(&args[1])?);
                let roots = match (a, b) {
                    (Carrier::Line(l), Carrier::Line(m)) => geom2d::intersect_line_line(&l, &m, tol).map(|p| vec![p]),
                    (Carrier::Line(l), Carrier::Circle(c)) | (Carrier::Circle(c), Carrier::Line(l)) => {
                        geom2d::line_circle_roots(&l, &c, tol)
                    }
                    (Carrier::Circle(c), Carrier::Circle(d)) => geom2d::circle_circle_roots(&c, &d, tol),
                };
                let roots = roots.map_err(|err| (pos, err))?;
                let pick = match select {
                    Some(s) => self.pick(s)?,
                    None => unreachable!("intersections carry a selector"),
                };
                at(pick.apply(&roots, &self.env, tol).map(Into::into))
            }
            Func::Invert => {
                let p = self.point(&args[0])?;
                at(geom2d::invert_unit(p, tol).map(Into::into))
            }
            Func::ReflectReal => Ok(self.point(&args[0])?.conj().into()),
            Func::Midpoint => Ok(self.point(&args[0])?.midpoint(self.point(&args[1])?).into()),
            Func::Center => Ok(self.circle(&args[0])?.center.into()),
            Func::MidpointOracle => {
                let (p, q) = (self.point(&args[1])?, self.point(&args[2])?);
                at(hypmetric::midpoint_oracle(Self::model(&args[0]), p, q, tol).map(Into::into))
            }
        }
    }

    fn assertion(&self, kind: AssertKind, args: &[Expr]) -> Eval<f64> {
        let tol = self.tol;
        Ok(match kind {
            AssertKind::On => geom2d::is_on(self.point(&args[0])?, &self.carrier(&args[1])?, tol).residual,
            AssertKind::Orthogonal => geom2d::circles_orthogonal(&self.circle(&args[0])?, &self.circle(&args[1])?, tol).residual,
            AssertKind::Tangent => geom2d::line_tangent_to_circle(&self.line(&args[0])?, &self.circle(&args[1])?, tol).residual,
            AssertKind::Collinear => {
                geom2d::collinear(self.point(&args[0])?, self.point(&args[1])?, self.point(&args[2])?, tol).residual
            }
            AssertKind::EqualRho => {
                let m = Self::model(&args[0]);
                let p: Vec<Point2> = args[1..].iter().map(|a| self.point(a)).collect::<Eval<_>>()?;
                let d1 = m.rho(p[0], p[1]).map_err(|e| (args[1].pos(), e))?;
                let d2 = m.rho(p[2], p[3]).map_err(|e| (args[3].pos(), e))?;
                d1 - d2
            }
            AssertKind::Equals => self.point(&args[0])?.distance(self.point(&args[1])?),
        })
    }
}
