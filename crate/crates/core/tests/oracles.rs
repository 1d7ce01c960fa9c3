//! Cross-checks against independent reference computations.

use std::f64::consts::PI;

use dyck_core::angles::{angle_dist, AngleModPi};
use dyck_core::families::{
    constant_angle_family, constant_ratio_family, incircle_outcircle, inscribed_family,
    level_value, limit_class, poncelet_closure_residual, poncelet_family, Family, LimitEnd,
    PonceletConfig,
};
use dyck_core::projections::{delta, hopf, to_sphere, to_torus, SphereLocus};
use dyck_core::sample;
use dyck_core::shape::{class_distance, class_of, ProjTripleC};
use dyck_core::triangle::{Orientation, Slot, TriangleVariable};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type Quat = [f64; 4];

fn qmul(p: Quat, q: Quat) -> Quat {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// `q i q̄ / |q|²` for `q = u + j v`, read off in the basis `(i, j, k)`.
fn quaternion_hopf(u: Complex64, v: Complex64) -> [f64; 3] {
    // j v = j (v.re + v.im i) = v.re j − v.im k
    let q = [u.re, u.im, v.re, -v.im];
    let qbar = [q[0], -q[1], -q[2], -q[3]];
    let n: f64 = q.iter().map(|x| x * x).sum();
    let r = qmul(qmul(q, [0.0, 1.0, 0.0, 0.0]), qbar);
    [r[1] / n, r[2] / n, r[3] / n]
}

#[test]
fn hopf_matches_quaternion_conjugation() {
    let mut rng = sample::rng(11);
    for _ in 0..500 {
        let t = sample::triangle(&mut rng);
        let (u, v) = (t.sides.0[0], t.sides.0[1]);
        let s = hopf(u, v).unwrap();
        let q = quaternion_hopf(u, v);
        // (X, Y, Z) are the (i, j, −k) components
        assert!((s.x - q[0]).abs() < 1e-12);
        assert!((s.y - q[1]).abs() < 1e-12, "{s:?} vs {q:?}");
        assert!((s.z + q[2]).abs() < 1e-12, "{s:?} vs {q:?}");
    }
}

#[test]
fn sphere_landmarks_and_equilaterals() {
    for k in Slot::ALL {
        // a double point with side k zero
        let mut s = [c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)];
        s[k.index()] = c(0.0, 0.0);
        s[(k.index() + 2) % 3] = -s[(k.index() + 1) % 3];
        let t = TriangleVariable::from_sides(c(0.0, 0.0), s[0], s[1])
            .unwrap()
            .with_free_argument(k, AngleModPi::new(0.4).unwrap())
            .unwrap();
        assert!(to_sphere(&class_of(&t).unwrap()).distance(&delta(k)) < 1e-12);
    }
    let w = Complex64::from_polar(1.0, PI / 3.0);
    let pos = TriangleVariable::from_vertices(w, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let neg = TriangleVariable::from_vertices(w.conj(), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    assert_eq!(pos.orientation(1e-9), Orientation::Positive);
    let sp = to_sphere(&class_of(&pos).unwrap());
    let sn = to_sphere(&class_of(&neg).unwrap());
    assert!((sp.y + 1.0).abs() < 1e-12 && (sn.y - 1.0).abs() < 1e-12);
    assert!(SphereLocus::EquilateralPlus.residual(&sp) < 1e-12);
}

/// Incenter as the side-length weighted vertex average, circumcenter from
/// the perpendicular-bisector determinant.
fn classical_centers(v: [Complex64; 3]) -> (f64, f64, f64) {
    let [a, b, c] = v;
    let (la, lb, lc) = ((c - b).norm(), (a - c).norm(), (b - a).norm());
    let p = la + lb + lc;
    let incenter = (a * la + b * lb + c * lc) / p;
    let area = ((b - a).conj() * (c - a)).im.abs() / 2.0;
    let r = area / (p / 2.0);
    let d2 = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let ux = (a.norm_sqr() * (b.im - c.im) + b.norm_sqr() * (c.im - a.im) + c.norm_sqr() * (a.im - b.im)) / d2;
    let uy = (a.norm_sqr() * (c.re - b.re) + b.norm_sqr() * (a.re - c.re) + c.norm_sqr() * (b.re - a.re)) / d2;
    let center = Complex64::new(ux, uy);
    (r, (a - center).norm(), (incenter - center).norm())
}

#[test]
fn incircle_outcircle_matches_classical_centers() {
    let mut rng = sample::rng(12);
    for _ in 0..1000 {
        let t = sample::triangle(&mut rng);
        let cfg = incircle_outcircle(&t).unwrap();
        let (r, big_r, d) = classical_centers(t.vertices());
        let scale = big_r.max(1.0);
        assert!((cfg.r - r).abs() < 1e-9 * scale);
        assert!((cfg.big_r - big_r).abs() < 1e-9 * scale);
        assert!((cfg.d - d).abs() < 1e-7 * scale, "{} vs {d}", cfg.d);
        assert!(cfg.chapple_residual() < 1e-9);
    }
    let right = TriangleVariable::from_vertices(c(0.0, 0.0), c(3.0, 0.0), c(0.0, 4.0)).unwrap();
    let cfg = incircle_outcircle(&right).unwrap();
    assert!((cfg.r - 1.0).abs() < 1e-12 && (cfg.big_r - 2.5).abs() < 1e-12);
    assert!((cfg.d - 5f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn level_value_of_right_isosceles() {
    let angles = [PI / 2.0, PI / 4.0, PI / 4.0].map(|x| AngleModPi::new(x).unwrap());
    let expected = 2.0 * 2f64.sqrt() * (PI / 8.0).sin().powi(2);
    assert!((level_value(angles) - expected).abs() < 1e-15);
    let t = TriangleVariable::from_vertices(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)).unwrap();
    assert!((incircle_outcircle(&t).unwrap().ratio() - expected).abs() < 1e-12);
}

#[test]
fn poncelet_orbits() {
    let concentric = PonceletConfig::from_radii(0.5, 1.0).unwrap();
    let eq = class_of(
        &TriangleVariable::from_vertices(Complex64::from_polar(1.0, PI / 3.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
    )
    .unwrap();
    for k in 0..8 {
        let t = poncelet_family(&concentric, k as f64).unwrap();
        assert!(class_distance(&class_of(&t).unwrap(), &eq) < 1e-9);
    }
    let mut rng = sample::rng(13);
    for _ in 0..20 {
        let cfg = sample::poncelet_config(&mut rng);
        for k in 0..32 {
            let t = poncelet_family(&cfg, 2.0 * PI * k as f64 / 32.0).unwrap();
            assert!((incircle_outcircle(&t).unwrap().ratio() - cfg.ratio()).abs() < 1e-9);
            assert!(poncelet_closure_residual(&cfg, &t) < 1e-8);
        }
    }
}

#[test]
fn thales_family_keeps_its_right_angle() {
    let f = inscribed_family(c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), 1.0).unwrap();
    let mut orientations = Vec::new();
    for k in 1..40 {
        let t = f.eval(2.0 * PI * k as f64 / 40.0 - 0.01).unwrap();
        let alpha = t.interior_angles().unwrap()[0];
        assert!(angle_dist(alpha, AngleModPi::new(PI / 2.0).unwrap()) < 1e-12);
        orientations.push(t.orientation(1e-9));
    }
    assert!(orientations.contains(&Orientation::Positive));
    assert!(orientations.contains(&Orientation::Negative));
    // the tangent at C = 1 is vertical
    let limit = limit_class(&f, &f.default_schedule(), 1e-9).unwrap();
    assert_eq!(limit.sides.zero_slot(), Some(Slot::B));
    assert!(angle_dist(limit.lift().arguments.get(Slot::B).unwrap(), AngleModPi::new(PI / 2.0).unwrap()) < 1e-9);
    let other = limit_class(&f.clone().with_limit_end(LimitEnd::Upper), &f.clone().with_limit_end(LimitEnd::Upper).default_schedule(), 1e-9).unwrap();
    assert!(class_distance(&limit, &other) < 1e-9);
}

#[test]
fn constant_angle_limits() {
    for (alpha, expected) in [(PI / 2.0, [PI / 2.0, 0.0, PI / 2.0]), (2.0 * PI / 3.0, [2.0 * PI / 3.0, 0.0, PI / 3.0])] {
        let f = constant_angle_family(AngleModPi::new(alpha).unwrap()).unwrap();
        let l = limit_class(&f, &f.default_schedule(), 1e-9).unwrap();
        let torus = to_torus(&l).angles();
        for k in 0..3 {
            assert!(angle_dist(torus[k], AngleModPi::new(expected[k]).unwrap()) < 1e-9, "{alpha}: {torus:?}");
        }
        assert!(to_sphere(&l).distance(&delta(Slot::B)) < 1e-9);
    }
}

/// Limiting collinear triangle of the ratio family: `A` lands on the real
/// axis at the point dividing `BC` externally or internally in ratio `κ`.
fn ratio_limit_sides(kappa: f64) -> [Complex64; 3] {
    let x = if kappa == 1.0 { 0.0 } else { (kappa * kappa + 1.0) / (kappa * kappa - 1.0) - 2.0 * kappa / (kappa * kappa - 1.0) };
    let (a, b, cc) = (c(x, 0.0), c(-1.0, 0.0), c(1.0, 0.0));
    [cc - b, a - cc, b - a]
}

fn projectively_equal(p: [Complex64; 3], q: [Complex64; 3], tol: f64) -> bool {
    // p ∝ q iff every 2×2 minor vanishes
    let n = p.iter().map(|z| z.norm()).fold(0.0, f64::max) * q.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (0..3).all(|i| (0..3).all(|j| (p[i] * q[j] - p[j] * q[i]).norm() <= tol * n))
}

#[test]
fn constant_ratio_limits() {
    let mut limits = Vec::new();
    for kappa in [1.0, 2.0] {
        let f = constant_ratio_family(kappa).unwrap();
        let l = limit_class(&f, &f.default_schedule(), 1e-9).unwrap();
        assert!(projectively_equal(l.sides.coords(), ratio_limit_sides(kappa), 1e-9));
        assert!(to_torus(&l).is_origin(1e-9));
        assert!(SphereLocus::DegenerateCircle.residual(&to_sphere(&l)) < 1e-9);
        limits.push(l);
    }
    assert!(!projectively_equal(limits[0].sides.coords(), limits[1].sides.coords(), 1e-3));
}

#[test]
fn constant_family_limit_is_itself() {
    let t = TriangleVariable::from_vertices(c(0.1, 0.7), c(-0.4, 0.0), c(0.9, 0.2)).unwrap();
    let f = Family::new("constant", (0.0, 1.0), LimitEnd::Lower, move |_| Ok(t));
    let l = limit_class(&f, &f.default_schedule(), 1e-9).unwrap();
    assert!(class_distance(&l, &class_of(&t).unwrap()) < 1e-12);
    let expected = ProjTripleC::from_ab(t.sides.0[0], t.sides.0[1]).unwrap();
    assert!(l.sides.approx_eq(&expected, 1e-12));
}
