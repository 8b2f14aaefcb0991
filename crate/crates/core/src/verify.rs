//! Seeded random sweeps that measure every invariant over many inputs and
//! report the largest residual per claim.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{self, ClaimStatus, DiagnosticsReport, MethodId};
use crate::error::Result;
use crate::geom2d::{Point2, Tolerance};
use crate::hypmetric::{self, Model, OrthoCircle};
use crate::moebius::MoebiusMap2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    H2,
    B2,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "h2" => Ok(Suite::H2),
            "b2" => Ok(Suite::B2),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}` (expected h2, b2 or all)")),
        }
    }
}

/// Sampling parameters. Defaults: 1000 samples, seed 42, `|x| ≤ 0.95`,
/// `||x| − |y|| ≥ 1e−3`, `|x × y| ≥ 1e−3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_modulus: f64,
    pub min_moduli_gap: f64,
    pub min_cross: f64,
    pub tol: Tolerance,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            samples: 1000,
            seed: 42,
            max_modulus: 0.95,
            min_moduli_gap: 1e-3,
            min_cross: 1e-3,
            tol: Tolerance::default(),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two points of `H²` in a box `[−5, 5] × (0.05, 5]`.
pub fn sample_h2_points(rng: &mut impl Rng) -> (Point2, Point2) {
    let mut pt = || Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.05..5.0));
    (pt(), pt())
}

/// Two points on a random semicircle `S¹(o, r)`, `o` real, at angles at
/// least `0.01` apart and `0.02` away from the boundary.
pub fn sample_h2_carrier_pair(rng: &mut impl Rng) -> (Point2, Point2) {
    let o = Point2::new(rng.gen_range(-5.0..5.0), 0.0);
    let r = rng.gen_range(0.2..5.0);
    loop {
        let (a, b) = (rng.gen_range(0.02..PI - 0.02), rng.gen_range(0.02..PI - 0.02));
        if (a - b).abs() >= 0.01 {
            return (o + Point2::from_polar(r, a), o + Point2::from_polar(r, b));
        }
    }
}

/// Two points on the unit semicircle.
pub fn sample_unit_semicircle_pair(rng: &mut impl Rng) -> (Point2, Point2) {
    loop {
        let (a, b) = (rng.gen_range(0.02..PI - 0.02), rng.gen_range(0.02..PI - 0.02));
        if (a - b).abs() >= 0.01 {
            return (Point2::from_polar(1.0, a), Point2::from_polar(1.0, b));
        }
    }
}

/// A point uniformly distributed in the disk `|p| ≤ r`.
pub fn sample_disk_point(rng: &mut impl Rng, r: f64) -> Point2 {
    Point2::from_polar(r * rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(-PI..PI))
}

/// Two points of `B²` admissible for the bisector-circle methods.
pub fn sample_b2_pair(rng: &mut impl Rng, cfg: &SweepConfig) -> (Point2, Point2) {
    loop {
        let (x, y) = (sample_disk_point(rng, cfg.max_modulus), sample_disk_point(rng, cfg.max_modulus));
        if (x.norm() - y.norm()).abs() >= cfg.min_moduli_gap && x.cross(y).abs() >= cfg.min_cross {
            return (x, y);
        }
    }
}

/// A pair whose arc `x*, x, y, y*` is a semicircle: an orthogonal circle
/// with center `a`, a point `x` of it inside the disk, and its partner.
pub fn sample_semicircle_pair(rng: &mut impl Rng, tol: &Tolerance) -> (Point2, Point2) {
    loop {
        let a = Point2::from_polar(rng.gen_range(1.1..3.0), rng.gen_range(-PI..PI));
        let oc = OrthoCircle { a, r_a: (a.norm_sq() - 1.0).sqrt() };
        let gamma = (oc.r_a / a.norm()).acos();
        // a point of the inner arc, by angle at `a` measured from the direction of 0
        let t = rng.gen_range(-0.9..0.9) * gamma;
        let x = a + Point2::from_polar(oc.r_a, (-a).arg() + t);
        if let Ok(y) = constructions::semicircle_partner(x, a, tol) {
            if y.norm() <= 0.95 && x.norm() <= 0.95 && (x.norm() - y.norm()).abs() >= 1e-3 && x.cross(y).abs() >= 1e-3 {
                return (x, y);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimSummary {
    pub name: String,
    pub evaluated: usize,
    pub not_applicable: usize,
    pub errors: usize,
    pub max_residual: f64,
    pub threshold: f64,
}

impl ClaimSummary {
    pub fn passes(&self) -> bool {
        self.errors == 0 && self.max_residual <= self.threshold
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub suite: Suite,
    pub config: SweepConfig,
    pub claims: Vec<ClaimSummary>,
}

impl SweepReport {
    pub fn passes(&self) -> bool {
        self.claims.iter().all(ClaimSummary::passes)
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimSummary> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// One line per claim, fixed formatting.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {:?} samples {} seed {} tol {:e}",
            self.suite, self.config.samples, self.config.seed, self.config.tol.eps_incidence
        );
        for c in &self.claims {
            let _ = writeln!(
                out,
                "{} {:<58} max {:.3e} (n={}, n/a={}, err={})",
                if c.passes() { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.evaluated,
                c.not_applicable,
                c.errors
            );
        }
        let _ = writeln!(out, "{}", if self.passes() { "all claims pass" } else { "some claims FAIL" });
        out
    }
}

#[derive(Default)]
struct Collector {
    order: Vec<String>,
    claims: BTreeMap<String, ClaimSummary>,
}

impl Collector {
    fn entry(&mut self, name: &str, threshold: f64) -> &mut ClaimSummary {
        if !self.claims.contains_key(name) {
            self.order.push(name.to_string());
        }
        self.claims.entry(name.to_string()).or_insert_with(|| ClaimSummary {
            name: name.to_string(),
            evaluated: 0,
            not_applicable: 0,
            errors: 0,
            max_residual: 0.0,
            threshold,
        })
    }

    fn record(&mut self, name: &str, threshold: f64, r: Result<f64>) {
        let e = self.entry(name, threshold);
        match r {
            Ok(v) => {
                e.evaluated += 1;
                // NaN must count as a failure
                e.max_residual = if v.abs() > e.max_residual || v.is_nan() { v.abs() } else { e.max_residual };
            }
            Err(_) => e.errors += 1,
        }
    }

    fn not_applicable(&mut self, name: &str, threshold: f64) {
        self.entry(name, threshold).not_applicable += 1;
    }

    fn report(&mut self, prefix: &str, rep: Result<DiagnosticsReport>, threshold: f64) {
        match rep {
            Ok(rep) => {
                for c in rep.claims {
                    let name = format!("{prefix}: {}", c.name);
                    match (c.status, c.residual) {
                        (ClaimStatus::ConditionNotMet, _) | (_, None) => self.not_applicable(&name, threshold),
                        (_, Some(r)) => self.record(&name, threshold, Ok(r)),
                    }
                }
            }
            Err(e) => self.record(&format!("{prefix}: report"), threshold, Err(e)),
        }
    }

    fn finish(mut self) -> Vec<ClaimSummary> {
        self.order.iter().map(|n| self.claims.remove(n).expect("recorded")).collect()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn h2_sweep(cfg: &SweepConfig, c: &mut Collector) {
    let tol = &cfg.tol;
    let eps = tol.eps_incidence;
    let mut r = rng(cfg.seed);
    for _ in 0..cfg.samples {
        let (x, y) = sample_h2_points(&mut r);
        let closed = hypmetric::rho_halfplane(x, y);
        let via = hypmetric::rho_via_cross_ratio(Model::HalfPlane, x, y, tol);
        c.record("H2 cross-ratio distance (relative)", eps, closed.and_then(|a| via.map(|b| rel(b, a))));
    }
    let mut r = rng(cfg.seed.wrapping_add(1));
    for _ in 0..cfg.samples {
        let (x, y) = sample_h2_carrier_pair(&mut r);
        let Ok(z0) = hypmetric::midpoint_halfplane_angles(x, y, tol) else {
            c.record("H2 methods agree with the closed form", eps, Err(crate::Error::NotOnArc));
            continue;
        };
        for m in [MethodId::I, MethodId::II, MethodId::III, MethodId::IV] {
            match constructions::midpoint(Model::HalfPlane, x, y, m.into(), tol) {
                Ok(res) => {
                    c.record("H2 methods agree with the closed form", eps, Ok(res.z.distance(z0)));
                    c.record("H2 midpoint equal distance", eps, Ok(res.residual_equal_distance));
                    c.record("H2 midpoint on carrier", eps, Ok(res.residual_on_geodesic));
                }
                Err(crate::Error::MethodInapplicable { .. }) => c.not_applicable("H2 methods agree with the closed form", eps),
                Err(e) => c.record("H2 methods agree with the closed form", eps, Err(e)),
            }
        }
        c.report("H2 auxiliary", constructions::h2_auxiliary_report(x, y, tol), eps);
    }
    let mut r = rng(cfg.seed.wrapping_add(2));
    for _ in 0..cfg.samples {
        let (x, y) = sample_unit_semicircle_pair(&mut r);
        let res = (|| {
            let lhs = 2.0 * hypmetric::rho_halfplane(x, y)?;
            let rhs = hypmetric::rho_disk(hypmetric::projection_pr(x, tol)?, hypmetric::projection_pr(y, tol)?)?;
            Ok((lhs - rhs).abs())
        })();
        c.record("projection property", eps, res);
    }
}

fn b2_sweep(cfg: &SweepConfig, c: &mut Collector) {
    let tol = &cfg.tol;
    let eps = tol.eps_incidence;
    let mut r = rng(cfg.seed.wrapping_add(10));
    for _ in 0..cfg.samples {
        let (x, y) = (sample_disk_point(&mut r, cfg.max_modulus), sample_disk_point(&mut r, cfg.max_modulus));
        let closed = hypmetric::rho_disk(x, y);
        let via = hypmetric::rho_via_cross_ratio(Model::Disk, x, y, tol);
        c.record("B2 cross-ratio distance (relative)", eps, closed.and_then(|a| via.map(|b| rel(b, a))));
    }
    let mut r = rng(cfg.seed.wrapping_add(11));
    let disk_methods =
        [MethodId::I, MethodId::II, MethodId::III, MethodId::IV, MethodId::V, MethodId::VI, MethodId::Angles];
    for _ in 0..cfg.samples {
        let (x, y) = sample_b2_pair(&mut r, cfg);
        let oracle = hypmetric::midpoint_oracle(Model::Disk, x, y, tol);
        for m in disk_methods {
            let res = constructions::midpoint(Model::Disk, x, y, m.into(), tol);
            match (&res, &oracle) {
                (Ok(res), Ok(o)) => {
                    c.record("B2 methods agree with the oracle", eps, Ok(res.z.distance(*o)));
                    c.record("B2 midpoint equal distance", eps, Ok(res.residual_equal_distance));
                    c.record("B2 midpoint on carrier", eps, Ok(res.residual_on_geodesic));
                }
                (Err(e), _) | (_, Err(e)) => c.record("B2 methods agree with the oracle", eps, Err(e.clone())),
            }
        }
        c.report("B2 auxiliary", constructions::b2_auxiliary_report(x, y, tol), eps);
        c.report("B2 chords", constructions::b2_chord_report(x, y, tol), eps);
        // Möbius transport of the configuration to the half-plane
        let map = MoebiusMap2::disk_to_half_plane();
        let res = (|| {
            let zd = hypmetric::midpoint_oracle(Model::Disk, x, y, tol)?;
            let img = |p: Point2| map.apply_finite(p).ok_or(crate::Error::OutsideDomain(p.x1, p.x2));
            let zh = hypmetric::midpoint_oracle(Model::HalfPlane, img(x)?, img(y)?, tol)?;
            Ok(zh.distance(img(zd)?))
        })();
        c.record("Moebius transport of the midpoint", eps.max(1e-8), res);
    }
    let mut r = rng(cfg.seed.wrapping_add(12));
    for _ in 0..(cfg.samples / 20).max(1) {
        let (x, y) = sample_semicircle_pair(&mut r, tol);
        c.report("B2 chords, semicircle", constructions::b2_chord_report(x, y, tol), eps);
    }
    let mut r = rng(cfg.seed.wrapping_add(13));
    for _ in 0..(cfg.samples / 10).max(1) {
        let (mx, my) = (r.gen_range(0.1..0.9), r.gen_range(0.1..0.9));
        let (x, base) = (Point2::from_polar(mx, 0.0), r.gen_range(0.05..PI - 0.05));
        let y = Point2::from_polar(my, base);
        let res = constructions::orthogonality_criterion(x, y, tol)
            .map(|p| if p.consistent(tol) { 0.0 } else { f64::INFINITY });
        c.record("orthogonality criterion sign agreement", eps, res);
    }
    let mut r = rng(cfg.seed.wrapping_add(14));
    for _ in 0..(cfg.samples / 10).max(1) {
        let x1 = Point2::from_polar(r.gen_range(0.1..0.6), r.gen_range(-PI..PI));
        match constructions::scale_sequence(x1, 10, tol) {
            Ok(ch) => {
                for (k, xk) in ch.points.iter().enumerate() {
                    let res = hypmetric::rho_disk(Point2::ORIGIN, *xk).map(|d| d - (k + 1) as f64 * ch.c);
                    c.record("chain rho(0,X_k) = k c", eps, res);
                    let want = ((k + 1) as f64 * x1.norm().atanh()).tanh();
                    c.record("chain |X_k| closed form", eps, Ok(xk.norm() - want));
                }
            }
            Err(e) => c.record("chain rho(0,X_k) = k c", eps, Err(e)),
        }
    }
}

/// Runs the suite. Identical configurations yield identical reports.
pub fn run_sweep(suite: Suite, cfg: &SweepConfig) -> SweepReport {
    let mut c = Collector::default();
    if matches!(suite, Suite::H2 | Suite::All) {
        h2_sweep(cfg, &mut c);
    }
    if matches!(suite, Suite::B2 | Suite::All) {
        b2_sweep(cfg, &mut c);
    }
    SweepReport { suite, config: *cfg, claims: c.finish() }
}
