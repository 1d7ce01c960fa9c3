//! Seeded random generators for triangles, classes and configurations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::angles::AngleModPi;
use crate::families::PonceletConfig;
use crate::group::GroupElement;
use crate::projections::TorusPoint;
use crate::shape::{class_of, ShapeClass};
use crate::triangle::{Slot, TriangleVariable};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn point<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn unit<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))
}

fn slot<R: Rng>(rng: &mut R) -> Slot {
    Slot::from_index(rng.gen_range(0..3))
}

/// Places `apex` at vertex `k` and the other two points in the remaining
/// slots, in cyclic order.
fn with_apex(k: Slot, apex: Complex64, p: Complex64, q: Complex64) -> TriangleVariable {
    let mut v = [Complex64::new(0.0, 0.0); 3];
    let i = k.index();
    v[i] = apex;
    v[(i + 1) % 3] = p;
    v[(i + 2) % 3] = q;
    TriangleVariable::from_vertices(v[0], v[1], v[2]).expect("finite distinct vertices")
}

/// A nondegenerate triangle with vertices in the square `[−1, 1]²`, not
/// too thin (twice the area at least `10⁻³` of the longest side squared).
pub fn triangle<R: Rng>(rng: &mut R) -> TriangleVariable {
    loop {
        let (a, b, c) = (point(rng), point(rng), point(rng));
        let t = TriangleVariable::from_vertices(a, b, c).expect("finite vertices");
        let m = t.sides.max_modulus();
        if m > 1e-3 && t.sides.twice_signed_area().abs() > 1e-3 * m * m {
            return t;
        }
    }
}

pub fn class<R: Rng>(rng: &mut R) -> ShapeClass {
    class_of(&triangle(rng)).expect("nondegenerate triangles have no free arguments")
}

/// A double point with zero side `k` and a random free argument.
pub fn double_point<R: Rng>(rng: &mut R) -> (TriangleVariable, Slot) {
    let k = slot(rng);
    let w = unit(rng) * rng.gen_range(0.1..2.0);
    let mut sides = [w, -w, w];
    sides[k.index()] = Complex64::new(0.0, 0.0);
    sides[(k.index() + 2) % 3] = -sides[(k.index() + 1) % 3];
    let t = TriangleVariable::from_sides(point(rng), sides[0], sides[1])
        .expect("one zero side")
        .with_free_argument(k, AngleModPi::wrap(rng.gen_range(0.0..PI)))
        .expect("the zero side is free");
    (t, k)
}

/// A collinear triangle with three distinct vertices.
pub fn simple_point<R: Rng>(rng: &mut R) -> TriangleVariable {
    let base = point(rng);
    let dir = unit(rng);
    loop {
        let s: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if (s[0] - s[1]).abs() > 0.05 && (s[1] - s[2]).abs() > 0.05 && (s[0] - s[2]).abs() > 0.05 {
            let v = s.map(|x| base + dir * x);
            return TriangleVariable::from_vertices(v[0], v[1], v[2]).expect("finite vertices");
        }
    }
}

/// A non-equilateral isosceles triangle whose odd side is `k`: the apex sits
/// at vertex `k` on the perpendicular bisector of the opposite side.
pub fn isosceles<R: Rng>(rng: &mut R) -> (TriangleVariable, Slot) {
    let k = slot(rng);
    let (p, q) = loop {
        let (p, q) = (point(rng), point(rng));
        if (p - q).norm() > 0.1 {
            break (p, q);
        }
    };
    let height = loop {
        let h: f64 = rng.gen_range(-2.0..2.0);
        if h.abs() > 0.05 && (h.abs() - 3f64.sqrt() / 2.0).abs() > 0.05 {
            break h;
        }
    };
    let apex = (p + q) / 2.0 + Complex64::i() * (q - p) * height;
    (with_apex(k, apex, p, q), k)
}

/// A triangle with a right angle at vertex `k`.
pub fn right<R: Rng>(rng: &mut R) -> (TriangleVariable, Slot) {
    let k = slot(rng);
    let apex = point(rng);
    let u = unit(rng) * rng.gen_range(0.1..1.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let v = Complex64::i() * u * (sign * rng.gen_range(0.1..2.0));
    (with_apex(k, apex, apex + u, apex + v), k)
}

/// A triangle whose unsigned angle at vertex `k` lies in `(π/2, π)`.
pub fn obtuse<R: Rng>(rng: &mut R) -> (TriangleVariable, Slot) {
    let k = slot(rng);
    let apex = point(rng);
    let u = unit(rng) * rng.gen_range(0.1..1.0);
    let theta = rng.gen_range(PI / 2.0 + 0.01..PI - 0.01);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let v = u * Complex64::from_polar(rng.gen_range(0.1..2.0), sign * theta);
    (with_apex(k, apex, apex + u, apex + v), k)
}

/// A torus point away from the origin.
pub fn torus_point<R: Rng>(rng: &mut R) -> TorusPoint {
    loop {
        let p = AngleModPi::wrap(rng.gen_range(0.0..PI));
        let q = AngleModPi::wrap(rng.gen_range(0.0..PI));
        let t = TorusPoint::from_pq(p, q);
        if !t.is_origin(1e-3) {
            return t;
        }
    }
}

/// A real direction `(α₀, β₀, γ₀)` with zero sum and max-abs at least 0.1.
pub fn direction<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let a: f64 = rng.gen_range(-1.0..1.0);
        let b: f64 = rng.gen_range(-1.0..1.0);
        let d = [a, b, -a - b];
        if d.iter().any(|x| x.abs() > 0.1) {
            return d;
        }
    }
}

pub fn poncelet_config<R: Rng>(rng: &mut R) -> PonceletConfig {
    let big_r = rng.gen_range(0.5..2.0);
    let ratio = rng.gen_range(0.05..0.5);
    PonceletConfig::from_radii(ratio * big_r, big_r).expect("ratio below 1/2")
}

pub fn group_element<R: Rng>(rng: &mut R) -> GroupElement {
    GroupElement::all()[rng.gen_range(0..12)]
}

/// A random orientation-preserving similarity `z ↦ λz + w`.
pub fn similarity<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    (unit(rng) * rng.gen_range(0.01..100.0), point(rng) * 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::DegeneracyType;

    #[test]
    fn samplers_produce_what_they_promise() {
        let mut r = rng(7);
        for _ in 0..200 {
            assert_eq!(triangle(&mut r).classify(1e-9), DegeneracyType::Nondegenerate);
            let (t, k) = isosceles(&mut r);
            let m = t.sides.0.map(|z| z.norm());
            let (i, j) = ((k.index() + 1) % 3, (k.index() + 2) % 3);
            assert!((m[i] - m[j]).abs() < 1e-12);
            let (t, k) = double_point(&mut r);
            assert_eq!(t.sides.get(k), Complex64::new(0.0, 0.0));
            assert_eq!(t.classify(1e-9), DegeneracyType::Double);
            assert_eq!(simple_point(&mut r).classify(1e-9), DegeneracyType::Simple);
            let d = direction(&mut r);
            assert_eq!(d[0] + d[1] + d[2], 0.0);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = triangle(&mut rng(42));
        let b = triangle(&mut rng(42));
        assert_eq!(a, b);
    }
}
