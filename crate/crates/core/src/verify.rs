//! Numeric checks of the library's defining properties, each against an
//! independent computation where one exists. Shared by the CLI `selftest`
//! and the acceptance test target.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::angles::{angle_dist, AngleModPi};
use crate::error::{Error, Result};
use crate::extrapolate::DEFAULT_OFFSETS;
use crate::families::{
    constant_angle_family, constant_ratio_family, Family, incircle_outcircle, inscribed_family,
    level_value, poncelet_closure_residual, poncelet_family, separation_test, Model, Verdict,
    DEFAULT_SEPARATION,
};
use crate::group::GroupElement;
use crate::projections::{
    delta, obtuse_cap_margin, to_sphere, to_torus, torus_fiber_limit, torus_inverse,
    SphereLocus, SpherePoint, TorusPoint,
};
use crate::sample;
use crate::shape::{
    act_class, class_distance, class_equal, class_of, orbit, phi, psi, BlowupCoord,
    ProjTripleC, ShapeClass,
};
use crate::triangle::{angles_from_arguments, Orientation, Slot, TriangleVariable};

/// Outcome of one numbered check.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str, passed: bool, detail: String) -> Self {
        CriterionReport { id, name, passed, detail }
    }

    fn from_result(id: u8, name: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(id, name, passed, detail),
            Err(e) => Self::new(id, name, false, format!("error: {e}")),
        }
    }

    /// `PASS 3 hemisphere-separation: ...`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

const SEED: u64 = 0x5eed_d7c6;

/// Runs criteria 1 to 10 in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        bijection(),
        sphere_landmarks(),
        hemispheres(),
        locus_residuals(),
        torus_round_trip(),
        fiber_directions(),
        poncelet(),
        missing_degenerates(),
        group_action(),
        angle_formula(),
    ]
}

fn blowup_error(x: &BlowupCoord, y: &BlowupCoord) -> f64 {
    let (dx, dy) = (angles_from_arguments(x.xi), angles_from_arguments(y.xi));
    let angle = dx.iter().zip(&dy).map(|(a, b)| angle_dist(*a, *b)).fold(0.0, f64::max);
    x.sides.distance(&y.sides) + angle
}

pub fn bijection() -> CriterionReport {
    let mut rng = sample::rng(SEED + 1);
    let mut worst: f64 = 0.0;
    let mut check = |c: &ShapeClass, b: &BlowupCoord| {
        worst = worst.max(class_distance(&psi(&phi(c)), c));
        worst = worst.max(blowup_error(&phi(&psi(b)), b));
    };
    for _ in 0..1000 {
        let c = sample::class(&mut rng);
        // an independent coordinate: forced arguments of a fresh triangle
        let t = sample::triangle(&mut rng);
        let xi = t.arguments.resolved().expect("forced");
        let b = BlowupCoord::new(class_of(&t).expect("forced").sides, xi, 1e-9);
        match b {
            Ok(b) => check(&c, &b),
            Err(e) => return CriterionReport::new(1, "bijection", false, format!("error: {e}")),
        }
    }
    for _ in 0..100 {
        let (t, k) = sample::double_point(&mut rng);
        let c = class_of(&t).expect("free argument set");
        let sides = c.sides;
        let mut xi = [AngleModPi::ZERO; 3];
        for s in Slot::ALL {
            xi[s.index()] = sides.argument(s).unwrap_or_default();
        }
        xi[k.index()] = AngleModPi::wrap(rand::Rng::gen_range(&mut rng, 0.0..PI));
        let b = BlowupCoord::new(sides, xi, 1e-9).expect("forced arguments copied");
        check(&c, &b);
    }
    CriterionReport::new(
        1,
        "bijection",
        worst < 1e-9,
        format!("max |psi(phi(c))-c|, |phi(psi(b))-b| = {worst:.3e} (< 1e-9)"),
    )
}

pub fn sphere_landmarks() -> CriterionReport {
    let mut rng = sample::rng(SEED + 2);
    let mut worst: f64 = 0.0;
    let max_coord = |s: &SpherePoint, e: &SpherePoint| {
        (s.x - e.x).abs().max((s.y - e.y).abs()).max((s.z - e.z).abs())
    };
    for _ in 0..300 {
        let (t, k) = sample::double_point(&mut rng);
        let s = to_sphere(&class_of(&t).expect("free argument set"));
        worst = worst.max(max_coord(&s, &delta(k)));
    }
    for _ in 0..100 {
        let (lambda, w) = sample::similarity(&mut rng);
        let tri = TriangleVariable::from_vertices(
            Complex64::from_polar(1.0, PI / 3.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
        .and_then(|t| t.transformed(lambda, w))
        .expect("equilateral");
        let plus = to_sphere(&class_of(&tri).expect("forced"));
        worst = worst.max(max_coord(&plus, &SpherePoint { x: 0.0, y: -1.0, z: 0.0 }));
        let flip = GroupElement::new(crate::group::Perm3::IDENTITY, true);
        let minus = to_sphere(&class_of(&tri.act(&flip)).expect("forced"));
        worst = worst.max(max_coord(&minus, &SpherePoint { x: 0.0, y: 1.0, z: 0.0 }));
    }
    CriterionReport::new(
        2,
        "sphere-landmarks",
        worst < 1e-12,
        format!("max coordinate error at delta_a/b/c and +-j = {worst:.3e} (< 1e-12)"),
    )
}

/// Twice the signed area from raw vertex coordinates.
fn shoelace(t: &TriangleVariable) -> f64 {
    let [a, b, c] = t.vertices();
    (b.re - a.re) * (c.im - a.im) - (c.re - a.re) * (b.im - a.im)
}

pub fn hemispheres() -> CriterionReport {
    let mut rng = sample::rng(SEED + 3);
    let (mut pos, mut neg, mut bad) = (0, 0, 0);
    let mut degenerate_y: f64 = 0.0;
    while pos < 1000 || neg < 1000 {
        let t = sample::triangle(&mut rng);
        let y = to_sphere(&class_of(&t).expect("forced")).y;
        if shoelace(&t) > 0.0 {
            if pos < 1000 {
                pos += 1;
                bad += usize::from(y >= 0.0 || y.is_nan());
            }
        } else if neg < 1000 {
            neg += 1;
            bad += usize::from(y <= 0.0 || y.is_nan());
        }
    }
    for _ in 0..500 {
        let s = sample::simple_point(&mut rng);
        degenerate_y = degenerate_y.max(to_sphere(&class_of(&s).expect("forced")).y.abs());
        let (d, _) = sample::double_point(&mut rng);
        degenerate_y = degenerate_y.max(to_sphere(&class_of(&d).expect("set")).y.abs());
    }
    CriterionReport::new(
        3,
        "hemisphere-separation",
        bad == 0 && degenerate_y < 1e-9,
        format!(
            "{bad} of 2000 oriented classes on the wrong side; max |Y| over 1000 degenerate = {degenerate_y:.3e} (< 1e-9)"
        ),
    )
}

fn isosceles_locus(k: Slot) -> SphereLocus {
    [SphereLocus::IsoscelesA, SphereLocus::IsoscelesB, SphereLocus::IsoscelesC][k.index()]
}

fn right_locus(k: Slot) -> SphereLocus {
    [SphereLocus::RightA, SphereLocus::RightB, SphereLocus::RightC][k.index()]
}

/// Unsigned angle at vertex `k`, from dot products of the raw vertices.
fn unsigned_vertex_angle(t: &TriangleVariable, k: Slot) -> f64 {
    let v = t.vertices();
    let i = k.index();
    let (p, q) = (v[(i + 1) % 3] - v[i], v[(i + 2) % 3] - v[i]);
    ((p.re * q.re + p.im * q.im) / (p.norm() * q.norm())).clamp(-1.0, 1.0).acos()
}

pub fn locus_residuals() -> CriterionReport {
    let mut rng = sample::rng(SEED + 4);
    let (mut iso, mut right): (f64, f64) = (0.0, 0.0);
    let mut outside = 0;
    let mut min_margin = f64::INFINITY;
    for _ in 0..500 {
        let (t, k) = sample::isosceles(&mut rng);
        iso = iso.max(isosceles_locus(k).residual(&to_sphere(&class_of(&t).expect("forced"))));
        let (t, k) = sample::right(&mut rng);
        right = right.max(right_locus(k).residual(&to_sphere(&class_of(&t).expect("forced"))));
        let (t, k) = sample::obtuse(&mut rng);
        debug_assert!(unsigned_vertex_angle(&t, k) > PI / 2.0);
        let m = obtuse_cap_margin(k, &to_sphere(&class_of(&t).expect("forced")));
        min_margin = min_margin.min(m);
        outside += usize::from(m <= 0.0 || m.is_nan());
    }
    CriterionReport::new(
        4,
        "locus-residuals",
        iso < 1e-9 && right < 1e-9 && outside == 0,
        format!(
            "isosceles max residual {iso:.3e}, right max residual {right:.3e} (< 1e-9); {outside} of 500 obtuse outside cap (min margin {min_margin:.3e})"
        ),
    )
}

pub fn torus_round_trip() -> CriterionReport {
    let mut rng = sample::rng(SEED + 5);
    let mut worst: f64 = 0.0;
    let mut inconsistent = 0;
    for _ in 0..1000 {
        let t = sample::torus_point(&mut rng);
        match torus_inverse(&t) {
            Ok(c) => {
                worst = worst.max(to_torus(&c).distance(&t));
                // the sides must carry the angles they are paired with
                inconsistent += usize::from(ShapeClass::new(c.sides, c.angles, 1e-9).is_err());
            }
            Err(_) => inconsistent += 1,
        }
    }
    let zero = TorusPoint::from_pq(AngleModPi::ZERO, AngleModPi::ZERO);
    let rejects = matches!(torus_inverse(&zero), Err(Error::BlownDownPoint));
    CriterionReport::new(
        5,
        "torus-inverse",
        worst < 1e-9 && inconsistent == 0 && rejects,
        format!(
            "max round-trip error {worst:.3e} (< 1e-9); {inconsistent} inconsistent classes; origin rejected: {rejects}"
        ),
    )
}

pub fn fiber_directions() -> CriterionReport {
    let mut rng = sample::rng(SEED + 6);
    let result = (|| {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let d = sample::direction(&mut rng);
            let limit = torus_fiber_limit(d, &DEFAULT_OFFSETS, 1e-6)?;
            let exact = ProjTripleC::from_ab(Complex64::new(d[0], 0.0), Complex64::new(d[1], 0.0))?;
            worst = worst.max(limit.distance(&exact));
        }
        Ok((worst < 1e-6, format!("max projective error {worst:.3e} (< 1e-6)")))
    })();
    CriterionReport::from_result(6, "fiber-directions", result)
}

pub fn poncelet() -> CriterionReport {
    let mut rng = sample::rng(SEED + 7);
    let result = (|| {
        let (mut chapple, mut level): (f64, f64) = (0.0, 0.0);
        for _ in 0..1000 {
            let t = sample::triangle(&mut rng);
            let cfg = incircle_outcircle(&t)?;
            chapple = chapple.max(cfg.chapple_residual());
            level = level.max((level_value(class_of(&t)?.angles) - cfg.ratio()).abs());
        }
        let (mut variation, mut tangency): (f64, f64) = (0.0, 0.0);
        for _ in 0..20 {
            let cfg = sample::poncelet_config(&mut rng);
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for i in 0..32 {
                let t = poncelet_family(&cfg, 2.0 * PI * i as f64 / 32.0)?;
                let ratio = incircle_outcircle(&t)?.ratio();
                lo = lo.min(ratio);
                hi = hi.max(ratio);
                tangency = tangency.max(poncelet_closure_residual(&cfg, &t));
            }
            variation = variation.max(hi - lo);
        }
        Ok((
            chapple < 1e-9 && level < 1e-9 && variation < 1e-9 && tangency < 1e-8,
            format!(
                "Chapple {chapple:.3e}, level {level:.3e}, r/R variation {variation:.3e} (< 1e-9); tangency {tangency:.3e} (< 1e-8)"
            ),
        ))
    })();
    CriterionReport::from_result(7, "poncelet", result)
}

/// Label, two families, model, expected verdict, distance bound.
type SignatureCase<'a> = (&'static str, &'a Family, &'a Family, Model, Verdict, fn(f64) -> bool);

pub fn missing_degenerates() -> CriterionReport {
    let result = (|| {
        let tol = crate::angles::DEFAULT_TOL;
        let right = constant_angle_family(AngleModPi::new(PI / 2.0)?)?;
        let obtuse = constant_angle_family(AngleModPi::new(2.0 * PI / 3.0)?)?;
        let one = constant_ratio_family(1.0)?;
        let two = constant_ratio_family(2.0)?;
        let mut ok = true;
        let mut parts = Vec::new();
        let cases: [SignatureCase; 6] = [
            ("angle", &right, &obtuse, Model::Sphere, Verdict::Merged, |d: f64| d < 1e-6),
            ("angle", &right, &obtuse, Model::Torus, Verdict::Separated, |d: f64| d > 0.5),
            ("angle", &right, &obtuse, Model::Dyck, Verdict::Separated, |_| true),
            ("ratio", &one, &two, Model::Torus, Verdict::Merged, |d: f64| d < 1e-6),
            ("ratio", &one, &two, Model::Sphere, Verdict::Separated, |d: f64| d > 0.05),
            ("ratio", &one, &two, Model::Dyck, Verdict::Separated, |_| true),
        ];
        for (name, f1, f2, model, expected, bound) in cases {
            let r = separation_test(f1, f2, model, &DEFAULT_OFFSETS, DEFAULT_SEPARATION, tol)?;
            ok &= r.verdict == expected && bound(r.distance);
            parts.push(format!("{name}/{model} {:?} {:.3e}", r.verdict, r.distance));
        }
        Ok((ok, parts.join(", ")))
    })();
    CriterionReport::from_result(8, "missing-degenerates", result)
}

fn same_variable(x: &TriangleVariable, y: &TriangleVariable, tol: f64) -> bool {
    x.basepoint == y.basepoint
        && x.sides.0.iter().zip(&y.sides.0).all(|(a, b)| (a - b).norm() <= tol)
        && x.directions.approx_eq(&y.directions, tol)
        && Slot::ALL.iter().all(|s| match (x.arguments.get(*s), y.arguments.get(*s)) {
            (Some(a), Some(b)) => angle_dist(a, b) <= tol,
            (None, None) => true,
            _ => false,
        })
}

pub fn group_action() -> CriterionReport {
    let mut rng = sample::rng(SEED + 9);
    let tol = 1e-9;
    let all = GroupElement::all();
    let mut law_failures = 0;
    for _ in 0..20 {
        let t = sample::triangle(&mut rng);
        for g in &all {
            for h in &all {
                law_failures +=
                    usize::from(!same_variable(&t.act(&g.compose(h)), &t.act(h).act(g), tol));
            }
        }
    }
    let mut sizes_ok = true;
    let mut seen = Vec::new();
    for _ in 0..20 {
        let n = orbit(&sample::class(&mut rng), tol).len();
        sizes_ok &= n == 12;
        let (iso, _) = sample::isosceles(&mut rng);
        let m = orbit(&class_of(&iso).expect("forced"), tol).len();
        sizes_ok &= m == 6;
        seen.push((n, m));
    }
    let eq = TriangleVariable::from_vertices(
        Complex64::from_polar(1.0, PI / 3.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    )
    .expect("equilateral");
    let eq_size = orbit(&class_of(&eq).expect("forced"), tol).len();
    sizes_ok &= eq_size == 2;
    let mut equivariance = 0;
    for _ in 0..100 {
        let t = sample::triangle(&mut rng);
        let g = sample::group_element(&mut rng);
        let lhs = class_of(&t.act(&g)).expect("forced");
        let rhs = act_class(&g, &class_of(&t).expect("forced"));
        equivariance += usize::from(!class_equal(&lhs, &rhs, tol));
    }
    CriterionReport::new(
        9,
        "group-action",
        law_failures == 0 && sizes_ok && equivariance == 0,
        format!(
            "{law_failures} composition failures over 20x144; orbit sizes generic/isosceles {}, equilateral {eq_size}; {equivariance} equivariance failures of 100",
            if seen.iter().all(|&(n, m)| n == 12 && m == 6) { "12/6" } else { "wrong" }
        ),
    )
}

/// Signed vertex angles in `(−π, π]`, measured from the raw vertices.
pub fn signed_vertex_angles(t: &TriangleVariable) -> [f64; 3] {
    let [a, b, c] = t.vertices();
    [((c - a) / (b - a)).arg(), ((a - b) / (c - b)).arg(), ((b - c) / (a - c)).arg()]
}

pub fn angle_formula() -> CriterionReport {
    let mut rng = sample::rng(SEED + 10);
    let mut worst: f64 = 0.0;
    let mut sheet_errors = 0;
    for _ in 0..1000 {
        let t = sample::triangle(&mut rng);
        let oracle = signed_vertex_angles(&t);
        let angles = t.interior_angles().expect("forced");
        for i in 0..3 {
            worst = worst.max(angle_dist(angles[i], AngleModPi::wrap(oracle[i])));
        }
        // the oracle angles all share the orientation's sign
        let sum: f64 = oracle.iter().sum();
        let expected = if t.orientation(1e-9) == Orientation::Positive { PI } else { -PI };
        sheet_errors += usize::from((sum - expected).abs() > 1e-9);
    }
    let continuity = (|| {
        let f = inscribed_family(
            Complex64::from_polar(1.0, 2.2),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            1.0,
        )?;
        let eps = 1e-7;
        let before = f.eval(2.0 * PI - eps)?;
        let after = f.eval(eps)?;
        let (kb, ka) = (class_of(&before)?, class_of(&after)?);
        let jump = kb.angles.iter().zip(&ka.angles).map(|(x, y)| angle_dist(*x, *y)).fold(0.0, f64::max);
        let flipped = before.orientation(1e-9) == after.orientation(1e-9).reversed();
        let (pos, neg) = if after.orientation(1e-9) == Orientation::Positive {
            (ka.angles[0], kb.angles[0])
        } else {
            (kb.angles[0], ka.angles[0])
        };
        let lift_gap = pos.value() - neg.value_nonpositive();
        Ok::<_, Error>((jump, flipped, lift_gap))
    })();
    match continuity {
        Ok((jump, flipped, gap)) => CriterionReport::new(
            10,
            "angle-formula",
            worst < 1e-9 && sheet_errors == 0 && jump < 1e-6 && flipped && (gap - PI).abs() < 1e-6,
            format!(
                "max mod-pi error vs vertex angles {worst:.3e} (< 1e-9); {sheet_errors} sign errors; across the double point: jump {jump:.3e}, orientation flipped {flipped}, alpha+ - alpha- = {gap:.9}"
            ),
        ),
        Err(e) => CriterionReport::new(10, "angle-formula", false, format!("error: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines() {
        let r = CriterionReport::new(3, "x", true, "ok".into());
        assert_eq!(r.line(), "PASS  3 x: ok");
        let r = CriterionReport::new(11, "y", false, "bad".into());
        assert_eq!(r.line(), "FAIL 11 y: bad");
    }
}
