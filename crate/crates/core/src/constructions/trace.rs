//! Recorded ruler-and-compass steps.
//!
//! A construction is built through [`Builder`], which evaluates every
//! primitive via [`Op::eval`] and appends a [`Step`]. Because the trace stores
//! the operation together with the labels of its inputs, it can be replayed
//! from the initial data alone, rendered, or exported as a `.hgc` script.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom2d::{self, Circle2, Line2, Point2, Selector, Tolerance};
use crate::hypmetric::{Model, OrthoCircle};

use super::MethodId;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Object {
    Point { at: Point2 },
    Line { line: Line2 },
    Circle { circle: Circle2 },
}

impl Object {
    pub fn as_point(&self) -> Option<Point2> {
        match self {
            Object::Point { at } => Some(*at),
            _ => None,
        }
    }

    pub fn as_line(&self) -> Option<Line2> {
        match self {
            Object::Line { line } => Some(*line),
            _ => None,
        }
    }

    pub fn as_circle(&self) -> Option<Circle2> {
        match self {
            Object::Circle { circle } => Some(*circle),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Point { .. } => "point",
            Object::Line { .. } => "line",
            Object::Circle { .. } => "circle",
        }
    }
}

impl From<Point2> for Object {
    fn from(at: Point2) -> Self {
        Object::Point { at }
    }
}

impl From<Line2> for Object {
    fn from(line: Line2) -> Self {
        Object::Line { line }
    }
}

impl From<Circle2> for Object {
    fn from(circle: Circle2) -> Self {
        Object::Circle { circle }
    }
}

/// Root selector by name; point references are resolved when the step runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Pick {
    Upper,
    Lower,
    InDisk,
    OutDisk,
    Nearest(String),
    Farthest(String),
    First,
    Unique,
    /// The root lying on `∂H²` or `S¹`.
    Boundary,
}

impl Pick {
    fn resolve(&self, env: &Env) -> Result<Option<Selector>> {
        Ok(Some(match self {
            Pick::Upper => Selector::UpperHalfPlane,
            Pick::Lower => Selector::LowerHalfPlane,
            Pick::InDisk => Selector::InsideUnitDisk,
            Pick::OutDisk => Selector::OutsideUnitDisk,
            Pick::Nearest(q) => Selector::NearestTo(env.point(q)?),
            Pick::Farthest(q) => Selector::FarthestFrom(env.point(q)?),
            Pick::First => Selector::First,
            Pick::Unique => Selector::Unique,
            Pick::Boundary => return Ok(None),
        }))
    }

    pub fn apply(&self, roots: &[Point2], env: &Env, tol: &Tolerance) -> Result<Point2> {
        match self.resolve(env)? {
            Some(sel) => sel.pick(roots),
            None => {
                let on: Vec<Point2> = roots
                    .iter()
                    .copied()
                    .filter(|p| p.x2.abs() <= tol.eps_incidence || (p.norm() - 1.0).abs() <= tol.eps_incidence)
                    .collect();
                match on.as_slice() {
                    [p] => Ok(*p),
                    _ => Err(Error::AmbiguousSelection { matched: on.len(), roots: roots.len() }),
                }
            }
        }
    }

    /// Keyword form used by `.hgc` scripts.
    pub fn keyword(&self) -> String {
        match self {
            Pick::Upper => "upper".into(),
            Pick::Lower => "lower".into(),
            Pick::InDisk => "in_disk".into(),
            Pick::OutDisk => "out_disk".into(),
            Pick::Nearest(q) => format!("nearest {q}"),
            Pick::Farthest(q) => format!("farthest {q}"),
            Pick::First => "first".into(),
            Pick::Unique => "unique".into(),
            Pick::Boundary => "boundary".into(),
        }
    }
}

/// One primitive. Arguments are labels of earlier objects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Op {
    Given(Object),
    Line(String, String),
    Perpendicular { line: String, through: String },
    Midpoint(String, String),
    Center(String),
    CircleThrough(String, String, String),
    CircleDiameter(String, String),
    CircleCentered { center: String, through: String },
    /// The circle through both points orthogonal to the unit circle.
    OrthoCircle(String, String),
    IntersectLL(String, String),
    IntersectLC { line: String, circle: String, pick: Pick },
    IntersectCC(String, String, Pick),
    ReflectReal(String),
    InvertUnit(String),
    /// A closed-form value, recorded so the trace still ends in the result.
    ClosedForm { formula: String, inputs: Vec<String>, value: Point2 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Given,
    Line,
    Circle,
    Perpendicular,
    Midpoint,
    IntersectLL,
    IntersectLC,
    IntersectCC,
    Reflect,
    Invert,
    ClosedForm,
}

impl Op {
    pub fn kind(&self) -> StepKind {
        match self {
            Op::Given(_) => StepKind::Given,
            Op::Line(..) => StepKind::Line,
            Op::Perpendicular { .. } => StepKind::Perpendicular,
            Op::Midpoint(..) | Op::Center(_) => StepKind::Midpoint,
            Op::CircleThrough(..) | Op::CircleDiameter(..) | Op::CircleCentered { .. } | Op::OrthoCircle(..) => {
                StepKind::Circle
            }
            Op::IntersectLL(..) => StepKind::IntersectLL,
            Op::IntersectLC { .. } => StepKind::IntersectLC,
            Op::IntersectCC(..) => StepKind::IntersectCC,
            Op::ReflectReal(_) => StepKind::Reflect,
            Op::InvertUnit(_) => StepKind::Invert,
            Op::ClosedForm { .. } => StepKind::ClosedForm,
        }
    }

    pub fn inputs(&self) -> Vec<String> {
        let mut v: Vec<String> = match self {
            Op::Given(_) => vec![],
            Op::Line(a, b)
            | Op::Midpoint(a, b)
            | Op::CircleDiameter(a, b)
            | Op::OrthoCircle(a, b)
            | Op::IntersectLL(a, b) => {
                vec![a.clone(), b.clone()]
            }
            Op::Perpendicular { line, through } => vec![line.clone(), through.clone()],
            Op::Center(a) | Op::ReflectReal(a) | Op::InvertUnit(a) => vec![a.clone()],
            Op::CircleThrough(a, b, c) => vec![a.clone(), b.clone(), c.clone()],
            Op::CircleCentered { center, through } => vec![center.clone(), through.clone()],
            Op::IntersectLC { line, circle, .. } => vec![line.clone(), circle.clone()],
            Op::IntersectCC(a, b, _) => vec![a.clone(), b.clone()],
            Op::ClosedForm { inputs, .. } => inputs.clone(),
        };
        if let Op::IntersectLC { pick: Pick::Nearest(q) | Pick::Farthest(q), .. }
        | Op::IntersectCC(_, _, Pick::Nearest(q) | Pick::Farthest(q)) = self
        {
            v.push(q.clone());
        }
        v
    }

    pub fn eval(&self, env: &Env, tol: &Tolerance) -> Result<Object> {
        Ok(match self {
            Op::Given(o) => *o,
            Op::Line(p, q) => geom2d::line_through(env.point(p)?, env.point(q)?, tol)?.into(),
            Op::Perpendicular { line, through } => geom2d::perpendicular_through(&env.line(line)?, env.point(through)?).into(),
            Op::Midpoint(p, q) => env.point(p)?.midpoint(env.point(q)?).into(),
            Op::Center(c) => env.circle(c)?.center.into(),
            Op::CircleThrough(p, q, r) => geom2d::circle_through(env.point(p)?, env.point(q)?, env.point(r)?, tol)?.into(),
            Op::CircleDiameter(p, q) => geom2d::circle_on_diameter(env.point(p)?, env.point(q)?, tol)?.into(),
            Op::CircleCentered { center, through } => Circle2::centered_through(env.point(center)?, env.point(through)?)?.into(),
            Op::OrthoCircle(p, q) => OrthoCircle::through(env.point(p)?, env.point(q)?, tol)?.circle().into(),
            Op::IntersectLL(a, b) => geom2d::intersect_line_line(&env.line(a)?, &env.line(b)?, tol)?.into(),
            Op::IntersectLC { line, circle, pick } => {
                let roots = geom2d::line_circle_roots(&env.line(line)?, &env.circle(circle)?, tol)?;
                pick.apply(&roots, env, tol)?.into()
            }
            Op::IntersectCC(a, b, pick) => {
                let roots = geom2d::circle_circle_roots(&env.circle(a)?, &env.circle(b)?, tol)?;
                pick.apply(&roots, env, tol)?.into()
            }
            Op::ReflectReal(p) => geom2d::reflect_in_line(env.point(p)?, Point2::new(0.0, 1.0), 0.0)?.into(),
            Op::InvertUnit(p) => geom2d::invert_unit(env.point(p)?, tol)?.into(),
            Op::ClosedForm { value, .. } => (*value).into(),
        })
    }
}

/// Labelled objects produced so far.
#[derive(Debug, Clone, Default)]
pub struct Env {
    objects: HashMap<String, Object>,
}

impl Env {
    pub fn insert(&mut self, label: &str, o: Object) {
        self.objects.insert(label.to_string(), o);
    }

    pub fn get(&self, label: &str) -> Result<Object> {
        self.objects.get(label).copied().ok_or(Error::DegenerateInput("reference to an unknown object"))
    }

    pub fn point(&self, label: &str) -> Result<Point2> {
        self.get(label)?.as_point().ok_or(Error::DegenerateInput("expected a point"))
    }

    pub fn line(&self, label: &str) -> Result<Line2> {
        self.get(label)?.as_line().ok_or(Error::DegenerateInput("expected a line"))
    }

    pub fn circle(&self, label: &str) -> Result<Circle2> {
        self.get(label)?.as_circle().ok_or(Error::DegenerateInput("expected a circle"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step {
    pub label: String,
    pub kind: StepKind,
    pub inputs: Vec<String>,
    #[serde(skip)]
    pub op: Op,
    pub object: Object,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionTrace {
    pub model: Model,
    pub method: MethodId,
    /// Given objects, in the order they were declared.
    pub initial: Vec<(String, Object)>,
    pub steps: Vec<Step>,
    pub result_label: String,
    pub result: Point2,
}

impl ConstructionTrace {
    /// Re-executes every step from the initial data and returns the result.
    pub fn replay(&self, tol: &Tolerance) -> Result<Point2> {
        let mut env = Env::default();
        for (label, o) in &self.initial {
            env.insert(label, *o);
        }
        for s in &self.steps {
            let o = s.op.eval(&env, tol)?;
            env.insert(&s.label, o);
        }
        env.point(&self.result_label)
    }

    pub fn step(&self, label: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.label == label)
    }

    pub fn point(&self, label: &str) -> Option<Point2> {
        self.initial
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, o)| *o)
            .or_else(|| self.step(label).map(|s| s.object))
            .and_then(|o| o.as_point())
    }

    /// The construction as a `.hgc` script ending in an output of the result.
    /// Closed-form steps are emitted as point literals.
    pub fn to_script(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} method {} (generated)", self.model, self.method);
        for (label, o) in &self.initial {
            if crate::script::PREDEFINED.iter().any(|(n, _)| n == label) {
                continue;
            }
            if let Some(p) = o.as_point() {
                let _ = writeln!(out, "point {label} = ({}, {})", p.x1, p.x2);
            }
        }
        for s in &self.steps {
            let kw = s.object.kind_name();
            let expr = match &s.op {
                Op::Given(_) | Op::ClosedForm { .. } => match s.object {
                    Object::Point { at } => format!("({}, {})", at.x1, at.x2),
                    Object::Line { line } => {
                        let (p, q) = (line.foot(Point2::ORIGIN), line.foot(Point2::ORIGIN) + line.direction());
                        format!("line(({}, {}), ({}, {}))", p.x1, p.x2, q.x1, q.x2)
                    }
                    Object::Circle { circle } => {
                        format!("circle(({}, {}), {})", circle.center.x1, circle.center.x2, circle.radius)
                    }
                },
                Op::Line(p, q) => format!("line({p}, {q})"),
                Op::Perpendicular { line, through } => format!("perp({line}, {through})"),
                Op::Midpoint(p, q) => format!("midpoint({p}, {q})"),
                Op::Center(c) => format!("center({c})"),
                Op::CircleThrough(p, q, r) => format!("circle_through({p}, {q}, {r})"),
                Op::CircleDiameter(p, q) => format!("circle_diameter({p}, {q})"),
                Op::CircleCentered { center, through } => format!("circle({center}, {through})"),
                Op::OrthoCircle(p, q) => format!("ortho_circle({p}, {q})"),
                Op::IntersectLL(a, b) => format!("intersect({a}, {b}) select unique"),
                Op::IntersectLC { line, circle, pick } => format!("intersect({line}, {circle}) select {}", pick.keyword()),
                Op::IntersectCC(a, b, pick) => format!("intersect({a}, {b}) select {}", pick.keyword()),
                Op::ReflectReal(p) => format!("reflect_real({p})"),
                Op::InvertUnit(p) => format!("invert({p})"),
            };
            let _ = writeln!(out, "{kw} {} = {expr}", s.label);
        }
        let _ = writeln!(out, "output {}", self.result_label);
        out
    }
}

/// Records steps while evaluating them.
pub struct Builder<'t> {
    tol: &'t Tolerance,
    env: Env,
    model: Model,
    initial: Vec<(String, Object)>,
    steps: Vec<Step>,
}

impl<'t> Builder<'t> {
    pub fn new(model: Model, tol: &'t Tolerance) -> Self {
        Builder { tol, env: Env::default(), model, initial: Vec::new(), steps: Vec::new() }
    }

    /// Starting data for the model: `axis` for `H²`, `origin` and `unit` for `B²`.
    pub fn for_model(model: Model, tol: &'t Tolerance) -> Self {
        let mut b = Builder::new(model, tol);
        match model {
            Model::HalfPlane => b.given("axis", Line2::REAL_AXIS.into()),
            Model::Disk => {
                b.given("origin", Point2::ORIGIN.into());
                b.given("unit", Circle2::UNIT.into());
            }
        }
        b
    }

    pub fn given(&mut self, label: &str, o: Object) {
        self.env.insert(label, o);
        self.initial.push((label.to_string(), o));
    }

    pub fn tol(&self) -> &Tolerance {
        self.tol
    }

    fn push(&mut self, label: &str, op: Op) -> Result<Object> {
        let object = op.eval(&self.env, self.tol)?;
        self.env.insert(label, object);
        self.steps.push(Step { label: label.to_string(), kind: op.kind(), inputs: op.inputs(), op, object });
        Ok(object)
    }

    fn push_point(&mut self, label: &str, op: Op) -> Result<Point2> {
        Ok(self.push(label, op)?.as_point().expect("op yields a point"))
    }

    fn push_line(&mut self, label: &str, op: Op) -> Result<Line2> {
        Ok(self.push(label, op)?.as_line().expect("op yields a line"))
    }

    fn push_circle(&mut self, label: &str, op: Op) -> Result<Circle2> {
        Ok(self.push(label, op)?.as_circle().expect("op yields a circle"))
    }

    pub fn line(&mut self, label: &str, p: &str, q: &str) -> Result<Line2> {
        self.push_line(label, Op::Line(p.into(), q.into()))
    }

    pub fn perpendicular(&mut self, label: &str, line: &str, through: &str) -> Result<Line2> {
        self.push_line(label, Op::Perpendicular { line: line.into(), through: through.into() })
    }

    pub fn midpoint(&mut self, label: &str, p: &str, q: &str) -> Result<Point2> {
        self.push_point(label, Op::Midpoint(p.into(), q.into()))
    }

    pub fn center(&mut self, label: &str, circle: &str) -> Result<Point2> {
        self.push_point(label, Op::Center(circle.into()))
    }

    pub fn circle_through(&mut self, label: &str, p: &str, q: &str, r: &str) -> Result<Circle2> {
        self.push_circle(label, Op::CircleThrough(p.into(), q.into(), r.into()))
    }

    pub fn ortho_circle(&mut self, label: &str, p: &str, q: &str) -> Result<Circle2> {
        self.push_circle(label, Op::OrthoCircle(p.into(), q.into()))
    }

    pub fn circle_diameter(&mut self, label: &str, p: &str, q: &str) -> Result<Circle2> {
        self.push_circle(label, Op::CircleDiameter(p.into(), q.into()))
    }

    pub fn circle_centered(&mut self, label: &str, center: &str, through: &str) -> Result<Circle2> {
        self.push_circle(label, Op::CircleCentered { center: center.into(), through: through.into() })
    }

    pub fn intersect_ll(&mut self, label: &str, a: &str, b: &str) -> Result<Point2> {
        self.push_point(label, Op::IntersectLL(a.into(), b.into()))
    }

    pub fn intersect_lc(&mut self, label: &str, line: &str, circle: &str, pick: Pick) -> Result<Point2> {
        self.push_point(label, Op::IntersectLC { line: line.into(), circle: circle.into(), pick })
    }

    pub fn intersect_cc(&mut self, label: &str, a: &str, b: &str, pick: Pick) -> Result<Point2> {
        self.push_point(label, Op::IntersectCC(a.into(), b.into(), pick))
    }

    pub fn reflect_real(&mut self, label: &str, p: &str) -> Result<Point2> {
        self.push_point(label, Op::ReflectReal(p.into()))
    }

    pub fn invert_unit(&mut self, label: &str, p: &str) -> Result<Point2> {
        self.push_point(label, Op::InvertUnit(p.into()))
    }

    pub fn closed_form(&mut self, label: &str, formula: &str, inputs: &[&str], value: Point2) -> Result<Point2> {
        let inputs = inputs.iter().map(|s| s.to_string()).collect();
        self.push_point(label, Op::ClosedForm { formula: formula.into(), inputs, value })
    }

    pub fn point(&self, label: &str) -> Result<Point2> {
        self.env.point(label)
    }

    /// Intersects two carriers in `S¹` or `∂H²` and labels the roots
    /// `x_end`, `y_end` so that `x_*, x, y, y_*` occur in this order. The
    /// point of `x, y` that separates the roots more clearly picks its
    /// nearest root; the other endpoint is the remaining root.
    pub fn ideal_endpoints(&mut self, a: &str, c: &str) -> Result<()> {
        let (x, y) = (self.env.point("x")?, self.env.point("y")?);
        let roots = match (self.env.get(a)?, self.env.get(c)?) {
            (Object::Line { line }, Object::Circle { circle }) | (Object::Circle { circle }, Object::Line { line }) => {
                geom2d::line_circle_roots(&line, &circle, self.tol)?
            }
            (Object::Circle { circle: p }, Object::Circle { circle: q }) => geom2d::circle_circle_roots(&p, &q, self.tol)?,
            _ => return Err(Error::DegenerateInput("ideal endpoints need a circle")),
        };
        let [r1, r2] = roots[..] else {
            return Err(Error::NoIntersection);
        };
        let gap = |p: Point2| (p.distance(r1) - p.distance(r2)).abs();
        let (first, second) = if gap(x) >= gap(y) { (("x_end", "x"), "y_end") } else { (("y_end", "y"), "x_end") };
        let (a, c) = (a.to_string(), c.to_string());
        let pick = |p: Pick| match self.env.get(&a) {
            Ok(Object::Line { .. }) => Op::IntersectLC { line: a.clone(), circle: c.clone(), pick: p },
            Ok(Object::Circle { .. }) if matches!(self.env.get(&c), Ok(Object::Line { .. })) => {
                Op::IntersectLC { line: c.clone(), circle: a.clone(), pick: p }
            }
            _ => Op::IntersectCC(a.clone(), c.clone(), p),
        };
        let op1 = pick(Pick::Nearest(first.1.into()));
        let op2 = pick(Pick::Farthest(first.0.into()));
        self.push_point(first.0, op1)?;
        self.push_point(second, op2)?;
        Ok(())
    }

    pub fn finish(self, method: MethodId, result_label: &str) -> Result<ConstructionTrace> {
        let result = self.env.point(result_label)?;
        Ok(ConstructionTrace {
            model: self.model,
            method,
            initial: self.initial,
            steps: self.steps,
            result_label: result_label.to_string(),
            result,
        })
    }
}
