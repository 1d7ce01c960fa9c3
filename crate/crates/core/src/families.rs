//! One-parameter families of triangles: Poncelet families, triangles
//! inscribed in a circle, and the degenerating families that tell the
//! three models apart.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles::AngleModPi;
use crate::error::{Error, Result};
use crate::extrapolate::{neville_iterates, DEFAULT_OFFSETS};
use crate::projections::{inscribed_sides, to_sphere, to_torus, SpherePoint, TorusPoint};
use crate::shape::{class_distance, class_of, BlowupCoord, ShapeClass};
use crate::triangle::{DegeneracyType, Slot, TriangleVariable};

/// Inradius `r`, circumradius `R` and center distance `d` of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PonceletConfig {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub d: f64,
}

impl PonceletConfig {
    /// Checks `0 < r ≤ R/2`, `d ≥ 0` and Chapple's relation.
    pub fn new(r: f64, big_r: f64, d: f64, tol: f64) -> Result<Self> {
        if !(r.is_finite() && big_r.is_finite() && d.is_finite()) {
            return Err(Error::NonFinite(format!("config r={r} R={big_r} d={d}")));
        }
        if !(r > 0.0 && r <= big_r / 2.0 * (1.0 + tol)) {
            return Err(Error::InvalidConfig(format!("need 0 < r <= R/2, got r={r} R={big_r}")));
        }
        if d < 0.0 {
            return Err(Error::InvalidConfig(format!("negative center distance {d}")));
        }
        let cfg = PonceletConfig { r, big_r, d };
        if cfg.chapple_residual() > tol {
            return Err(Error::InvalidConfig(format!(
                "Chapple's relation fails (relative residual {:e})",
                cfg.chapple_residual()
            )));
        }
        Ok(cfg)
    }

    /// The configuration with center distance `d = √(R² − 2rR)`.
    pub fn from_radii(r: f64, big_r: f64) -> Result<Self> {
        let d2 = big_r * big_r - 2.0 * r * big_r;
        Self::new(r, big_r, d2.max(0.0).sqrt(), 1e-9)
    }

    /// `|(R − r)² − r² − d²| / R²`.
    pub fn chapple_residual(&self) -> f64 {
        let (r, big_r, d) = (self.r, self.big_r, self.d);
        ((big_r - r).powi(2) - r * r - d * d).abs() / (big_r * big_r)
    }

    pub fn ratio(&self) -> f64 {
        self.r / self.big_r
    }
}

/// In- and circumcircle data of a nondegenerate triangle.
pub fn incircle_outcircle(t: &TriangleVariable) -> Result<PonceletConfig> {
    let kind = t.classify(crate::angles::DEFAULT_TOL);
    if kind != DegeneracyType::Nondegenerate {
        return Err(Error::Degenerate(format!("{kind} triangle has no incircle")));
    }
    let [va, vb, vc] = t.vertices();
    let [la, lb, lc] = t.sides.0.map(|z| z.norm());
    let area = t.sides.twice_signed_area().abs() / 2.0;
    let perimeter = la + lb + lc;
    let r = 2.0 * area / perimeter;
    let big_r = la * lb * lc / (4.0 * area);
    let incenter = (va * la + vb * lb + vc * lc) / perimeter;
    Ok(PonceletConfig {
        r,
        big_r,
        d: (incenter - circumcenter(va, vb, vc)).norm(),
    })
}

fn circumcenter(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    // solve relative to a to keep the arithmetic well scaled
    let (p, q) = (b - a, c - a);
    let det = 2.0 * (p.conj() * q).im;
    let num = Complex64::i() * (q * p.norm_sqr() - p * q.norm_sqr());
    a - num / det
}

/// `r/R = 4 sin(α/2) sin(β/2) sin(γ/2)` on the positive lift of the angles.
/// Zero when any angle vanishes.
pub fn level_value(angles: [AngleModPi; 3]) -> f64 {
    if angles.iter().any(|a| a.value() == 0.0) {
        return 0.0;
    }
    let sum: f64 = angles.iter().map(|a| a.value()).sum();
    let lifted = if sum < 1.5 * PI {
        angles.map(|a| a.value())
    } else {
        angles.map(|a| PI - a.value())
    };
    4.0 * lifted.iter().map(|x| (x / 2.0).sin()).product::<f64>()
}

/// The Poncelet triangle with vertex `A = R e^{iθ}` on the outcircle
/// (center 0), incircle center `(d, 0)`.
pub fn poncelet_family(cfg: &PonceletConfig, theta: f64) -> Result<TriangleVariable> {
    if !theta.is_finite() {
        return Err(Error::NonFinite(format!("theta {theta}")));
    }
    let (r, big_r) = (cfg.r, cfg.big_r);
    let center = Complex64::new(cfg.d, 0.0);
    let a = Complex64::from_polar(big_r, theta);
    let to_center = center - a;
    let l = to_center.norm();
    if l <= r {
        return Err(Error::Tangency { residual: r - l });
    }
    let u0 = to_center / l;
    let phi = (r / l).asin();
    let second = |u: Complex64| a + u * (-2.0 * (a.conj() * u).re);
    let p1 = second(u0 * Complex64::from_polar(1.0, phi));
    let p2 = second(u0 * Complex64::from_polar(1.0, -phi));
    let t = TriangleVariable::from_vertices(a, p1, p2)?;
    let t = if t.sides.twice_signed_area() < 0.0 {
        TriangleVariable::from_vertices(a, p2, p1)?
    } else {
        t
    };
    let residual = poncelet_closure_residual(cfg, &t);
    if residual > 1e-6 * big_r {
        return Err(Error::Tangency { residual });
    }
    Ok(t)
}

/// Distance from the line `BC` to the incircle center, minus `r`.
pub fn poncelet_closure_residual(cfg: &PonceletConfig, t: &TriangleVariable) -> f64 {
    let [_, b, c] = t.vertices();
    let center = Complex64::new(cfg.d, 0.0);
    let dir = c - b;
    let dist = ((center - b).conj() * dir).im.abs() / dir.norm();
    (dist - cfg.r).abs()
}

/// Which end of the parameter interval the family degenerates at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitEnd {
    Lower,
    Upper,
}

type EvalFn = dyn Fn(f64) -> Result<TriangleVariable> + Send + Sync;

/// A curve of triangles over an open parameter interval.
#[derive(Clone)]
pub struct Family {
    pub label: String,
    pub domain: (f64, f64),
    pub limit_end: LimitEnd,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("limit_end", &self.limit_end)
            .finish_non_exhaustive()
    }
}

impl Family {
    pub fn new(
        label: impl Into<String>,
        domain: (f64, f64),
        limit_end: LimitEnd,
        eval: impl Fn(f64) -> Result<TriangleVariable> + Send + Sync + 'static,
    ) -> Self {
        Family {
            label: label.into(),
            domain,
            limit_end,
            eval: Arc::new(eval),
        }
    }

    /// The triangle at parameter `t` of the open domain.
    pub fn eval(&self, t: f64) -> Result<TriangleVariable> {
        if !(t > self.domain.0 && t < self.domain.1) {
            return Err(Error::OutOfDomain(t));
        }
        (self.eval)(t)
    }

    pub fn class_at(&self, t: f64) -> Result<ShapeClass> {
        class_of(&self.eval(t)?)
    }

    /// The same curve approached from the other end.
    pub fn with_limit_end(mut self, end: LimitEnd) -> Self {
        self.limit_end = end;
        self
    }

    /// Parameters at the given offsets from the degenerate end.
    pub fn schedule(&self, offsets: &[f64]) -> Vec<f64> {
        offsets
            .iter()
            .map(|h| match self.limit_end {
                LimitEnd::Lower => self.domain.0 + h,
                LimitEnd::Upper => self.domain.1 - h,
            })
            .collect()
    }

    pub fn default_schedule(&self) -> Vec<f64> {
        self.schedule(&DEFAULT_OFFSETS)
    }

    fn end(&self) -> f64 {
        match self.limit_end {
            LimitEnd::Lower => self.domain.0,
            LimitEnd::Upper => self.domain.1,
        }
    }
}

/// `A` runs around the circle through `B` and `C`. The parameter is the
/// angle swept from `C`, so both ends of `(0, 2π)` are the double point
/// `A = C`, approached from either side of the chord.
pub fn inscribed_family(
    chord_b: Complex64,
    chord_c: Complex64,
    center: Complex64,
    radius: f64,
) -> Result<Family> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidConfig(format!("radius {radius}")));
    }
    for (name, p) in [("B", chord_b), ("C", chord_c)] {
        if ((p - center).norm() - radius).abs() > 1e-9 * radius.max(1.0) {
            return Err(Error::NotOnCircle(format!("{name} = {p}")));
        }
    }
    if chord_b == chord_c {
        return Err(Error::InvalidConfig("B and C coincide".into()));
    }
    let theta_c = (chord_c - center).arg();
    let side_a = chord_c - chord_b;
    Ok(Family::new(
        "inscribed",
        (0.0, 2.0 * PI),
        LimitEnd::Lower,
        move |s| {
            // A − C = ρ e^{iθ_C} (e^{is} − 1), without cancellation at small s
            let b = Complex64::from_polar(radius, theta_c + s / 2.0)
                * Complex64::new(0.0, 2.0 * (s / 2.0).sin());
            TriangleVariable::from_sides(chord_b, side_a, b)
        },
    ))
}

/// Triangles with interior angle `α₀` at `A`, inscribed in a fixed circle,
/// with `A` sliding into `C`; the parameter is the angle at `B`.
pub fn constant_angle_family(alpha0: AngleModPi) -> Result<Family> {
    let alpha = alpha0.value();
    if alpha == 0.0 {
        return Err(Error::InvalidConfig("constant angle must lie in (0, π)".into()));
    }
    Ok(Family::new(
        format!("constant-angle:{alpha}"),
        (0.0, PI - alpha),
        LimitEnd::Lower,
        move |beta| {
            let [a, b, _] = inscribed_sides(alpha, beta);
            TriangleVariable::from_sides(Complex64::new(1.0, 0.0), a, b)
        },
    ))
}

/// Triangles with `B = −1`, `C = 1` and `|c| = κ|b|`: `A` rides the
/// Apollonius circle down to the real axis. The parameter is the height
/// of `A`.
pub fn constant_ratio_family(ratio: f64) -> Result<Family> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::InvalidConfig(format!("side ratio {ratio} must be positive")));
    }
    let k2 = ratio * ratio;
    let b = Complex64::new(-1.0, 0.0);
    let c = Complex64::new(1.0, 0.0);
    let (top, apex): (f64, Box<dyn Fn(f64) -> f64 + Send + Sync>) = if ratio == 1.0 {
        (f64::INFINITY, Box::new(|_| 0.0))
    } else {
        let x0 = (k2 + 1.0) / (k2 - 1.0);
        let rho = 2.0 * ratio / (k2 - 1.0).abs();
        let s = (k2 - 1.0).signum();
        (rho, Box::new(move |h| x0 - s * rho * (1.0 - (h / rho).powi(2)).sqrt()))
    };
    Ok(Family::new(
        format!("constant-ratio:{ratio}"),
        (0.0, top),
        LimitEnd::Lower,
        move |h| TriangleVariable::from_vertices(Complex64::new(apex(h), h), b, c),
    ))
}

/// The class a family tends to at its degenerate end, by extrapolation
/// over `schedule` (parameters approaching the end). Fails with the trace
/// of successive iterate distances when the last one exceeds `tol`.
pub fn limit_class(f: &Family, schedule: &[f64], tol: f64) -> Result<ShapeClass> {
    if schedule.len() < 2 {
        return Err(Error::InvalidConfig("schedule needs at least two parameters".into()));
    }
    let end = f.end();
    let offsets: Vec<f64> = schedule.iter().map(|t| (t - end).abs()).collect();
    let samples = schedule
        .iter()
        .map(|&t| f.eval(t))
        .collect::<Result<Vec<_>>>()?;
    let last = samples.last().expect("nonempty");
    let pivot = pivot_slot(last);
    let reference = relative_arguments(last, pivot, None);
    let features: Vec<Vec<f64>> = samples
        .iter()
        .map(|t| {
            let scale = t.sides.get(pivot);
            let mut v: Vec<f64> = t.sides.0.iter().flat_map(|z| {
                let w = z / scale;
                [w.re, w.im]
            })
            .collect();
            v.extend(relative_arguments(t, pivot, Some(&reference)));
            v
        })
        .collect();
    let iterates = neville_iterates(&offsets, &features)
        .iter()
        .map(|v| class_from_features(v, tol))
        .collect::<Result<Vec<_>>>()?;
    let trace: Vec<f64> = iterates.windows(2).map(|w| class_distance(&w[0], &w[1])).collect();
    match trace.last() {
        Some(&d) if d <= tol => Ok(*iterates.last().expect("nonempty")),
        _ => Err(Error::NonConvergence { trace }),
    }
}

fn pivot_slot(t: &TriangleVariable) -> Slot {
    let m = t.sides.max_modulus();
    Slot::ALL
        .into_iter()
        .find(|s| t.sides.get(*s).norm() == m)
        .expect("some side attains the max")
}

/// `ξ_s − ξ_pivot` as real numbers, unwrapped near `reference`.
fn relative_arguments(t: &TriangleVariable, pivot: Slot, reference: Option<&[f64]>) -> Vec<f64> {
    let p = t.sides.get(pivot);
    Slot::ALL
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let z = t.sides.get(*s);
            let x = if z.norm() == 0.0 {
                let free = t.arguments.get(*s).unwrap_or_default();
                (free - AngleModPi::wrap(p.arg())).value()
            } else {
                AngleModPi::wrap((z / p).arg()).value()
            };
            let reference = reference.map_or(x, |r| r[i]);
            AngleModPi::wrap(x).lift_near(reference)
        })
        .collect()
}

fn class_from_features(v: &[f64], tol: f64) -> Result<ShapeClass> {
    let mut sides = [0, 1, 2].map(|i| Complex64::new(v[2 * i], v[2 * i + 1]));
    let scale = sides.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(k) = (0..3).find(|&k| sides[k].norm() <= tol * scale) {
        // keep the other two exactly opposite so the zero survives closure
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let (big, small) = if sides[i].norm() >= sides[j].norm() { (i, j) } else { (j, i) };
        sides[small] = -sides[big];
        sides[k] = Complex64::new(0.0, 0.0);
    }
    let xi = [6, 7, 8].map(|i| AngleModPi::wrap(v[i]));
    Ok(crate::shape::psi(&BlowupCoord::from_raw(sides, xi)?))
}

/// The three models in which limits are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    Dyck,
    Sphere,
    Torus,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A limit seen in one model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelPoint {
    Dyck(ShapeClass),
    Sphere(SpherePoint),
    Torus(TorusPoint),
}

impl ModelPoint {
    pub fn of(model: Model, c: &ShapeClass) -> ModelPoint {
        match model {
            Model::Dyck => ModelPoint::Dyck(*c),
            Model::Sphere => ModelPoint::Sphere(to_sphere(c)),
            Model::Torus => ModelPoint::Torus(to_torus(c)),
        }
    }

    /// Distance between two points of the same model.
    pub fn distance(&self, other: &ModelPoint) -> Option<f64> {
        match (self, other) {
            (ModelPoint::Dyck(a), ModelPoint::Dyck(b)) => Some(class_distance(a, b)),
            (ModelPoint::Sphere(a), ModelPoint::Sphere(b)) => Some(a.distance(b)),
            (ModelPoint::Torus(a), ModelPoint::Torus(b)) => Some(a.distance(b)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Separated,
    Merged,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationReport {
    pub model: Model,
    pub limit1: ModelPoint,
    pub limit2: ModelPoint,
    pub distance: f64,
    pub verdict: Verdict,
}

/// Default model-point distance above which two limits count as distinct.
pub const DEFAULT_SEPARATION: f64 = 1e-3;

/// Compares the limits of two families in one model. `offsets` are taken
/// from each family's degenerate end.
pub fn separation_test(
    f1: &Family,
    f2: &Family,
    model: Model,
    offsets: &[f64],
    sep_threshold: f64,
    tol: f64,
) -> Result<SeparationReport> {
    let l1 = ModelPoint::of(model, &limit_class(f1, &f1.schedule(offsets), tol)?);
    let l2 = ModelPoint::of(model, &limit_class(f2, &f2.schedule(offsets), tol)?);
    let distance = l1.distance(&l2).expect("same model");
    Ok(SeparationReport {
        model,
        limit1: l1,
        limit2: l2,
        distance,
        verdict: if distance > sep_threshold {
            Verdict::Separated
        } else {
            Verdict::Merged
        },
    })
}
