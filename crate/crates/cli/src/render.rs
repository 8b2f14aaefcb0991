//! Construction figures: the model boundary, the geodesic carrier, every
//! traced object with its label, and the midpoint highlighted.

use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use hypmid::constructions::Object;
use hypmid::geom2d::{Carrier, Circle2, Line2};
use hypmid::hypmetric::{self, Model};
use hypmid::script::{Expr, Func, Program, Statement, PREDEFINED};
use hypmid::{midpoint, Point2};

use crate::svg::{self, Document};
use crate::{midpoint::require, tolerance, CmdResult, Failure, RenderArgs};

const STYLE: &str = "\
.background { fill: #ffffff; }
.boundary { fill: none; stroke: #000000; stroke-width: 1.5; }
.carrier { fill: none; stroke: #1f5fbf; stroke-width: 1.5; }
.line { fill: none; stroke: #8c8c8c; stroke-width: 0.8; }
.circle { fill: none; stroke: #8c8c8c; stroke-width: 0.8; }
.point { fill: #333333; }
.result { fill: #d62728; stroke: #000000; stroke-width: 1; }
.label { font-family: sans-serif; font-size: 12px; fill: #333333; }
.result-label { font-family: sans-serif; font-size: 14px; font-weight: bold; fill: #d62728; }
";

/// Everything a figure shows, in world coordinates.
pub struct Scene {
    pub model: Model,
    pub header: Vec<String>,
    /// Points the viewport must contain.
    pub anchors: Vec<Point2>,
    pub carriers: Vec<(String, Carrier)>,
    pub objects: Vec<(String, Object)>,
    pub highlight: Vec<(String, Point2)>,
}

pub fn run(args: &RenderArgs) -> CmdResult {
    let scene = match &args.script {
        Some(file) => script_scene(file, &args.bind)?,
        None => midpoint_scene(args)?,
    };
    let out = draw(&scene, args.width, args.height, !args.no_labels);
    if args.out.as_os_str() == "-" {
        let _ = std::io::stdout().write_all(out.as_bytes());
    } else {
        std::fs::write(&args.out, out)
            .map_err(|e| Failure::Other(format!("cannot write {}: {e}", args.out.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn fmt_point(p: Point2) -> String {
    format!("({}, {})", svg::num(p.x1), svg::num(p.x2))
}

fn midpoint_scene(args: &RenderArgs) -> Result<Scene, Failure> {
    let (model, x, y) = require(&args.pair)?;
    let tol = tolerance(None)?;
    let r = midpoint(model, x, y, args.pair.method, &tol)?;
    let g = hypmetric::geodesic_of(model, x, y, &tol)?;
    let objects = r
        .trace
        .initial
        .iter()
        .filter(|(name, _)| !PREDEFINED.iter().any(|(p, _)| p == name))
        .cloned()
        .chain(r.trace.steps.iter().map(|s| (s.label.clone(), s.object)))
        .collect();
    Ok(Scene {
        model,
        header: vec![
            format!("hypmid render: model {model}, method {}", r.method),
            format!("x = {}, y = {}, z = {}", fmt_point(x), fmt_point(y), fmt_point(r.z)),
        ],
        anchors: vec![x, y, r.z],
        carriers: vec![("geodesic".to_string(), g.carrier)],
        objects,
        highlight: vec![(r.trace.result_label.clone(), r.z)],
    })
}

fn script_scene(file: &Path, bind: &[(String, Point2)]) -> Result<Scene, Failure> {
    let source = crate::script::read(file)?;
    let program = crate::script::parse(file, &source)?;
    let result = crate::script::evaluate(file, bind)?;
    for e in &result.errors {
        eprintln!("warning: {e}");
    }
    let model = script_model(&program);
    let geodesics = geodesic_names(&program);
    let (mut carriers, mut objects) = (Vec::new(), Vec::new());
    for (name, o) in &result.bindings {
        match o {
            Object::Line { line } if geodesics.contains(name) => carriers.push((name.clone(), Carrier::Line(*line))),
            Object::Circle { circle } if geodesics.contains(name) => {
                carriers.push((name.clone(), Carrier::Circle(*circle)))
            }
            _ => objects.push((name.clone(), *o)),
        }
    }
    let highlight: Vec<(String, Point2)> =
        result.outputs.iter().filter_map(|(n, o)| o.as_point().map(|p| (n.clone(), p))).collect();
    let name = file.file_name().map_or_else(|| file.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut header = vec![format!("hypmid render: script {name}, model {model}")];
    for (n, p) in &highlight {
        header.push(format!("{n} = {}", fmt_point(*p)));
    }
    Ok(Scene {
        model,
        header,
        anchors: objects.iter().filter_map(|(_, o)| o.as_point()).chain(highlight.iter().map(|h| h.1)).collect(),
        carriers,
        objects,
        highlight,
    })
}

/// The first model literal in the script, else the disk.
fn script_model(p: &Program) -> Model {
    fn find(e: &Expr) -> Option<Model> {
        match e {
            Expr::Model(m, _) => Some(*m),
            Expr::Call { args, .. } => args.iter().find_map(find),
            _ => None,
        }
    }
    p.statements()
        .find_map(|s| match s {
            Statement::Binding { expr, .. } => find(expr),
            Statement::Assert { args, .. } => args.iter().find_map(find),
            _ => None,
        })
        .unwrap_or(Model::Disk)
}

fn geodesic_names(p: &Program) -> Vec<String> {
    p.statements()
        .filter_map(|s| match s {
            Statement::Binding { name, expr: Expr::Call { func: Func::Geodesic, .. }, .. } => Some(name.name.clone()),
            _ => None,
        })
        .collect()
}

/// World rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy)]
struct Rect {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Rect {
    fn around(p: Point2) -> Rect {
        Rect { x0: p.x1, x1: p.x1, y0: p.x2, y1: p.x2 }
    }

    fn include(&mut self, p: Point2) {
        self.x0 = self.x0.min(p.x1);
        self.x1 = self.x1.max(p.x1);
        self.y0 = self.y0.min(p.x2);
        self.y1 = self.y1.max(p.x2);
    }

    fn center(&self) -> Point2 {
        Point2::new((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)
    }

    fn half_size(&self) -> f64 {
        ((self.x1 - self.x0).max(self.y1 - self.y0) / 2.0).max(0.5)
    }

    fn contains(&self, p: Point2) -> bool {
        (self.x0..=self.x1).contains(&p.x1) && (self.y0..=self.y1).contains(&p.x2)
    }

    fn grow(&self, by: f64) -> Rect {
        Rect { x0: self.x0 - by, x1: self.x1 + by, y0: self.y0 - by, y1: self.y1 + by }
    }
}

/// The anchors and model boundary, widened by any construction point within
/// three half-sizes so the whole construction shows; the rest is clipped.
fn viewport(scene: &Scene) -> Rect {
    let mut base = match scene.model {
        Model::Disk => Rect { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 },
        Model::HalfPlane => {
            let mut r = Rect::around(Point2::ORIGIN);
            for p in &scene.anchors {
                r.include(*p);
                r.include(Point2::new(p.x1, 0.0));
            }
            r
        }
    };
    for a in &scene.anchors {
        base.include(*a);
    }
    let reach = {
        let (c, h) = (base.center(), 3.0 * base.half_size());
        Rect { x0: c.x1 - h, x1: c.x1 + h, y0: c.x2 - h, y1: c.x2 + h }
    };
    let mut candidates: Vec<Point2> = scene.objects.iter().filter_map(|(_, o)| o.as_point()).collect();
    for (_, c) in &scene.carriers {
        if let (Model::HalfPlane, Carrier::Circle(c)) = (scene.model, c) {
            candidates.extend([c.center - Point2::new(c.radius, 0.0), c.center + Point2::new(c.radius, 0.0)]);
            candidates.push(c.center + Point2::new(0.0, c.radius));
        }
    }
    let mut view = base;
    for p in candidates.into_iter().filter(|p| p.is_finite() && reach.contains(*p)) {
        view.include(p);
    }
    view.grow(0.08 * view.half_size())
}

/// World to SVG user units: `px = ox + s·x`, `py = oy − s·y`.
struct Frame {
    s: f64,
    ox: f64,
    oy: f64,
    view: Rect,
}

impl Frame {
    fn new(view: Rect, width: u32, height: u32) -> Frame {
        let (w, h) = (f64::from(width), f64::from(height));
        let (dx, dy) = (view.x1 - view.x0, view.y1 - view.y0);
        let s = (w / dx).min(h / dy);
        Frame { s, ox: (w - s * dx) / 2.0 - s * view.x0, oy: (h - s * dy) / 2.0 + s * view.y1, view }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (self.ox + self.s * p.x1, self.oy - self.s * p.x2)
    }

    /// A segment of `l` long enough to cross the whole viewport.
    fn span(&self, l: &Line2) -> ((f64, f64), (f64, f64)) {
        let c = self.view.center();
        let reach = (self.view.x1 - self.view.x0).hypot(self.view.y1 - self.view.y0);
        let foot = l.foot(c);
        (self.map(foot - l.direction() * reach), self.map(foot + l.direction() * reach))
    }
}

/// Candidate label spots on `o`, in order of preference.
fn label_spots(o: &Object, view: &Rect) -> Vec<Point2> {
    let c = view.center();
    match o {
        Object::Point { at } => vec![*at],
        Object::Line { line } => {
            let h = view.half_size();
            let foot = line.foot(c);
            (0..17).map(|k| foot + line.direction() * (h * (f64::from(k) / 8.0 - 1.0) * 0.9)).collect()
        }
        Object::Circle { circle } => {
            let d = c - circle.center;
            let start = if d.norm() > 0.0 { d.arg() } else { std::f64::consts::FRAC_PI_2 };
            (0..24)
                .map(|k| {
                    // alternate around the spot nearest the viewport center
                    let step = f64::from((k + 1) / 2) * if k % 2 == 0 { 1.0 } else { -1.0 };
                    circle.center + Point2::from_polar(circle.radius, start + step * std::f64::consts::PI / 12.0)
                })
                .collect()
        }
    }
}

/// Minimum distance between label anchors, in SVG user units.
const LABEL_GAP: f64 = 24.0;

fn draw_carrier(doc: &mut Document, frame: &Frame, class: &str, c: &Carrier, title: &str) {
    match c {
        Carrier::Circle(c) => {
            let (cx, cy) = frame.map(c.center);
            doc.circle(class, cx, cy, c.radius * frame.s, Some(title));
        }
        Carrier::Line(l) => {
            let (a, b) = frame.span(l);
            doc.line(class, a, b, Some(title));
        }
    }
}

pub fn draw(scene: &Scene, width: u32, height: u32, labels: bool) -> String {
    let view = viewport(scene);
    let frame = Frame::new(view, width, height);
    let mut header = scene.header.clone();
    header.push("Orientation: the y axis is flipped so that mathematical x2 points up the page.".to_string());
    header.push(format!(
        "Mapping: px = {} + {} * x1, py = {} - {} * x2 (SVG user units).",
        svg::num(frame.ox),
        svg::num(frame.s),
        svg::num(frame.oy),
        svg::num(frame.s)
    ));
    header.push("Objects beyond the viewport are clipped.".to_string());
    let mut doc = Document::new(width, height, header, STYLE);

    doc.open_group("boundary");
    match scene.model {
        Model::Disk => draw_carrier(&mut doc, &frame, "boundary", &Carrier::Circle(Circle2::UNIT), "unit circle"),
        Model::HalfPlane => draw_carrier(&mut doc, &frame, "boundary", &Carrier::Line(Line2::REAL_AXIS), "real axis"),
    }
    doc.close_group();

    doc.open_group("carriers");
    for (name, c) in &scene.carriers {
        draw_carrier(&mut doc, &frame, "carrier", c, name);
    }
    doc.close_group();

    doc.open_group("construction");
    for (name, o) in &scene.objects {
        match o {
            Object::Line { line } => draw_carrier(&mut doc, &frame, "line", &Carrier::Line(*line), name),
            Object::Circle { circle } => draw_carrier(&mut doc, &frame, "circle", &Carrier::Circle(*circle), name),
            Object::Point { .. } => {}
        }
    }
    for (name, o) in &scene.objects {
        if let Object::Point { at } = o {
            if at.is_finite() {
                let (px, py) = frame.map(*at);
                doc.circle("point", px, py, 3.0, Some(name));
            }
        }
    }
    doc.close_group();

    doc.open_group("result");
    for (name, p) in &scene.highlight {
        let (px, py) = frame.map(*p);
        doc.circle("result", px, py, 6.0, Some(name));
    }
    doc.close_group();

    if labels {
        doc.open_group("labels");
        let inner = view.grow(-0.04 * view.half_size());
        let mut taken: Vec<(f64, f64)> = Vec::new();
        for (name, p) in &scene.highlight {
            let (px, py) = frame.map(*p);
            doc.text("result-label", px + 8.0, py - 8.0, name);
            taken.push((px, py));
        }
        for (name, o) in &scene.objects {
            if let Object::Point { at } = o {
                if at.is_finite() && view.contains(*at) && !scene.highlight.iter().any(|(h, _)| h == name) {
                    let (px, py) = frame.map(*at);
                    doc.text("label", px + 5.0, py - 5.0, name);
                    taken.push((px, py));
                }
            }
        }
        let curves = scene
            .carriers
            .iter()
            .map(|(n, c)| {
                let o = match c {
                    Carrier::Circle(c) => Object::Circle { circle: *c },
                    Carrier::Line(l) => Object::Line { line: *l },
                };
                (n, o)
            })
            .chain(scene.objects.iter().filter(|(_, o)| o.as_point().is_none()).map(|(n, o)| (n, *o)));
        for (name, o) in curves {
            let spots: Vec<(f64, f64)> = label_spots(&o, &view)
                .into_iter()
                .filter(|p| p.is_finite() && inner.contains(*p))
                .map(|p| frame.map(p))
                .collect();
            let clear = |q: &(f64, f64)| taken.iter().all(|t| (t.0 - q.0).hypot(t.1 - q.1) >= LABEL_GAP);
            if let Some(&(px, py)) = spots.iter().find(|q| clear(q)).or(spots.first()) {
                doc.text("label", px + 5.0, py - 5.0, name);
                taken.push((px, py));
            }
        }
        doc.close_group();
    }
    doc.finish()
}
