//! Similarity classes `([a, b, c]; (α, β, γ)) ∈ P(X) × T`, blowup
//! coordinates, and the bijections `φ`, `ψ` between them.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::angles::{angle_dist, AngleModPi};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::triangle::{angles_from_arguments, Slot, TriangleVariable};

/// Moduli below this (after dividing by the largest side) are rounding
/// noise and snap to an exact zero, so double points stay exact.
pub(crate) const ZERO_SNAP: f64 = 1e-13;

const PIVOT_TIE: f64 = 1e-12;

/// A point `[a, b, c]` of `P(X) ≅ P¹(ℂ)`, stored divided by its
/// largest-modulus coordinate (ties go to the earlier slot).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjTripleC([Complex64; 3]);

impl ProjTripleC {
    /// Validates `a + b + c = 0` to within `tol` relative to the largest
    /// coordinate and canonicalizes.
    pub fn new(coords: [Complex64; 3], tol: f64) -> Result<Self> {
        if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(format!("side triple {coords:?}")));
        }
        let scale = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::ZeroVector("side triple [0, 0, 0]".into()));
        }
        let residual = coords.iter().sum::<Complex64>().norm() / scale;
        if residual > tol {
            return Err(Error::ClosureViolated { residual });
        }
        Ok(Self::canonicalize(coords))
    }

    /// `[a, b, −a − b]`.
    pub fn from_ab(a: Complex64, b: Complex64) -> Result<Self> {
        Self::new([a, b, -a - b], f64::INFINITY)
    }

    fn canonicalize(coords: [Complex64; 3]) -> Self {
        let p = pivot_index(&coords);
        let mut z = coords.map(|x| x / coords[p]);
        z[p] = Complex64::new(1.0, 0.0);
        let others = [(p + 1) % 3, (p + 2) % 3];
        if let Some(&k) = others.iter().find(|&&k| z[k].norm() <= ZERO_SNAP) {
            let j = others[0] + others[1] - k;
            z[k] = Complex64::new(0.0, 0.0);
            z[j] = Complex64::new(-1.0, 0.0);
        } else {
            let half = (z[0] + z[1] + z[2]) * 0.5;
            for k in others {
                z[k] -= half;
            }
        }
        ProjTripleC(z.map(|x| Complex64::new(x.re + 0.0, x.im + 0.0)))
    }

    pub fn coords(&self) -> [Complex64; 3] {
        self.0
    }

    pub fn get(&self, slot: Slot) -> Complex64 {
        self.0[slot.index()]
    }

    /// The slot holding the coordinate `1`.
    pub fn pivot(&self) -> Slot {
        Slot::from_index(pivot_index(&self.0))
    }

    /// The slot whose coordinate is exactly zero, if any.
    pub fn zero_slot(&self) -> Option<Slot> {
        Slot::ALL.into_iter().find(|s| self.get(*s) == Complex64::new(0.0, 0.0))
    }

    /// `Arg` mod π of a nonzero coordinate.
    pub fn argument(&self, slot: Slot) -> Option<AngleModPi> {
        let z = self.get(slot);
        (z.norm() > 0.0).then(|| AngleModPi::wrap(z.arg()))
    }

    /// Fubini–Study sine distance `|u ∧ v| / (|u| |v|)` in `[0, 1]`.
    pub fn distance(&self, other: &ProjTripleC) -> f64 {
        let (u, v) = (&self.0, &other.0);
        let mut wedge = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                wedge += (u[i] * v[j] - u[j] * v[i]).norm_sqr();
            }
        }
        let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        (wedge / (nu * nv)).sqrt().min(1.0)
    }

    pub fn approx_eq(&self, other: &ProjTripleC, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

fn pivot_index(z: &[Complex64; 3]) -> usize {
    let m = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    (0..3).find(|&i| z[i].norm() >= m * (1.0 - PIVOT_TIE)).unwrap_or(0)
}

/// A similarity class `([a, b, c]; (α, β, γ))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeClass {
    pub sides: ProjTripleC,
    pub angles: [AngleModPi; 3],
}

impl ShapeClass {
    /// Checks `α + β + γ ≡ 0` and consistency of the angles with the side
    /// arguments: all three angles are forced when no side vanishes, and
    /// the angle carrying the label of a zero side must be zero.
    pub fn new(sides: ProjTripleC, angles: [AngleModPi; 3], tol: f64) -> Result<Self> {
        let sum = angles[0] + angles[1] + angles[2];
        if angle_dist(sum, AngleModPi::ZERO) > tol {
            return Err(Error::InconsistentClass(format!(
                "angles sum to {sum} mod π, expected 0"
            )));
        }
        match sides.zero_slot() {
            Some(k) => {
                if angle_dist(angles[k.index()], AngleModPi::ZERO) > tol {
                    return Err(Error::InconsistentClass(format!(
                        "side {k} is zero so its opposite angle must vanish"
                    )));
                }
            }
            None => {
                let xi = Slot::ALL.map(|s| sides.argument(s).unwrap_or_default());
                let forced = angles_from_arguments(xi);
                for i in 0..3 {
                    if angle_dist(forced[i], angles[i]) > tol {
                        return Err(Error::InconsistentClass(format!(
                            "angle {} disagrees with the side arguments",
                            Slot::from_index(i)
                        )));
                    }
                }
            }
        }
        Ok(ShapeClass { sides, angles })
    }

    /// A representative triangle with basepoint 0 and canonical sides.
    pub fn lift(&self) -> TriangleVariable {
        let [a, b, _] = self.sides.coords();
        let mut t = TriangleVariable::from_sides(Complex64::new(0.0, 0.0), a, b)
            .expect("canonical sides are finite and nonzero");
        if let Some(k) = self.sides.zero_slot() {
            let i = k.index();
            let next = Slot::from_index((i + 2) % 3);
            let forced = t.arguments.get(next).expect("nonzero side has a forced argument");
            let xi = forced - self.angles[(i + 1) % 3];
            t = t.with_free_argument(k, xi).expect("zero side is free");
        }
        t
    }

    /// Whether the class lies on the exceptional fiber over a double point.
    pub fn is_double(&self) -> bool {
        self.sides.zero_slot().is_some()
    }
}

/// `π_𝔇`: forget the basepoint and projectivize.
pub fn class_of(t: &TriangleVariable) -> Result<ShapeClass> {
    let angles = t.interior_angles()?;
    let sides = ProjTripleC::from_ab(t.directions.complex(Slot::A), t.directions.complex(Slot::B))?;
    Ok(ShapeClass { sides, angles })
}

pub fn class_equal(c1: &ShapeClass, c2: &ShapeClass, tol: f64) -> bool {
    c1.sides.approx_eq(&c2.sides, tol)
        && c1.angles.iter().zip(&c2.angles).all(|(x, y)| angle_dist(*x, *y) <= tol)
}

/// Side distance plus the largest angle distance.
pub fn class_distance(c1: &ShapeClass, c2: &ShapeClass) -> f64 {
    let angle = c1
        .angles
        .iter()
        .zip(&c2.angles)
        .map(|(x, y)| angle_dist(*x, *y))
        .fold(0.0, f64::max);
    c1.sides.distance(&c2.sides) + angle
}

/// `([a, b, c]; [ξ_a, ξ_b, ξ_c])` with the arguments taken modulo a common
/// shift. The stored gauge has `ξ = 0` on the pivot side of `sides`, which
/// makes every forced argument equal `Arg` of its canonical coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlowupCoord {
    pub sides: ProjTripleC,
    pub xi: [AngleModPi; 3],
}

impl BlowupCoord {
    /// Fixes the gauge and checks that the nonzero sides carry their forced
    /// arguments (up to a common shift).
    pub fn new(sides: ProjTripleC, xi: [AngleModPi; 3], tol: f64) -> Result<Self> {
        let p = sides.pivot().index();
        let shift = xi[p];
        let xi = xi.map(|x| x - shift);
        for s in Slot::ALL {
            if let Some(forced) = sides.argument(s) {
                if angle_dist(forced, xi[s.index()]) > tol {
                    return Err(Error::InconsistentClass(format!(
                        "ξ_{s} disagrees with the argument of side {s}"
                    )));
                }
            }
        }
        Ok(BlowupCoord { sides, xi })
    }

    /// Builds the coordinate from unnormalized sides, recomputing forced
    /// arguments; `free` supplies ξ of a zero side in the gauge where the
    /// raw coordinate `raw[gauge]` has argument `free[gauge]`.
    pub(crate) fn from_raw(raw: [Complex64; 3], free: [AngleModPi; 3]) -> Result<Self> {
        let sides = ProjTripleC::from_ab(raw[0], raw[1])?;
        let p = sides.pivot().index();
        // the canonical coordinates are raw / raw[p]
        let offset = AngleModPi::wrap(raw[p].arg());
        let xi = Slot::ALL.map(|s| match sides.argument(s) {
            Some(forced) => forced,
            None => free[s.index()] - offset,
        });
        Ok(BlowupCoord { sides, xi })
    }

    pub fn approx_eq(&self, other: &BlowupCoord, tol: f64) -> bool {
        let da = angles_from_arguments(self.xi);
        let db = angles_from_arguments(other.xi);
        self.sides.approx_eq(&other.sides, tol)
            && da.iter().zip(&db).all(|(x, y)| angle_dist(*x, *y) <= tol)
    }
}

/// `φ([a, b, c]; (α, β, γ)) = ([a, b, c]; [0, −γ, β])`.
pub fn phi(c: &ShapeClass) -> BlowupCoord {
    let [_, beta, gamma] = c.angles;
    let xi = [AngleModPi::ZERO, -gamma, beta];
    let shift = xi[c.sides.pivot().index()];
    BlowupCoord {
        sides: c.sides,
        xi: xi.map(|x| x - shift),
    }
}

/// `ψ([a, b, c]; [ξ_a, ξ_b, ξ_c]) = ([a, b, c]; (ξ_b − ξ_c, ξ_c − ξ_a, ξ_a − ξ_b))`.
pub fn psi(b: &BlowupCoord) -> ShapeClass {
    ShapeClass {
        sides: b.sides,
        angles: angles_from_arguments(b.xi),
    }
}

/// The `D₆` action on classes, computed upstairs on a lift.
pub fn act_class(g: &GroupElement, c: &ShapeClass) -> ShapeClass {
    class_of(&c.lift().act(g)).expect("the action preserves set free arguments")
}

/// The deduplicated images of `c` under all twelve group elements.
pub fn orbit(c: &ShapeClass, tol: f64) -> Vec<ShapeClass> {
    let mut out: Vec<ShapeClass> = Vec::with_capacity(12);
    for g in GroupElement::all() {
        let image = act_class(&g, c);
        if !out.iter().any(|o| class_equal(o, &image, tol)) {
            out.push(image);
        }
    }
    out
}

/// The orbit element that is least in the order (sorted angles, then
/// canonical side coordinates), with `tol`-tolerant comparisons.
pub fn canonical_rep(c: &ShapeClass, tol: f64) -> ShapeClass {
    GroupElement::all()
        .iter()
        .map(|g| act_class(g, c))
        .min_by(|x, y| rep_order(x, y, tol))
        .expect("the group is nonempty")
}

fn rep_order(x: &ShapeClass, y: &ShapeClass, tol: f64) -> Ordering {
    let key = |c: &ShapeClass| {
        let mut angles = c.angles.map(|a| {
            // values within tol of π are the same point as 0
            if std::f64::consts::PI - a.value() <= tol {
                0.0
            } else {
                a.value()
            }
        });
        angles.sort_by(f64::total_cmp);
        let s = c.sides.coords();
        let mut k = angles.to_vec();
        k.extend(s.iter().flat_map(|z| [z.re, z.im]));
        k
    };
    for (a, b) in key(x).iter().zip(key(y).iter()) {
        if (a - b).abs() > tol {
            return a.total_cmp(b);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm3;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-9;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ang(x: f64) -> AngleModPi {
        AngleModPi::new(x).unwrap()
    }

    fn omega() -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI / 3.0)
    }

    fn equilateral_plus() -> ShapeClass {
        let t = TriangleVariable::from_vertices(Complex64::from_polar(1.0, PI / 3.0), c(0.0, 0.0), c(1.0, 0.0))
            .unwrap();
        class_of(&t).unwrap()
    }

    fn double_b(alpha: f64) -> ShapeClass {
        let sides = ProjTripleC::from_ab(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        ShapeClass::new(sides, [ang(alpha), AngleModPi::ZERO, ang(-alpha)], TOL).unwrap()
    }

    #[test]
    fn canonical_form_divides_by_largest() {
        let p = ProjTripleC::new([c(0.0, 2.0), c(0.0, -1.0), c(0.0, -1.0)], TOL).unwrap();
        assert_eq!(p.coords(), [c(1.0, 0.0), c(-0.5, 0.0), c(-0.5, 0.0)]);
        assert_eq!(p.pivot(), Slot::A);
        // tie between a and c goes to a
        let q = ProjTripleC::from_ab(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(q.coords(), [c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(q.zero_slot(), Some(Slot::B));
        assert!(ProjTripleC::new([c(1.0, 0.0); 3], TOL).is_err());
        assert!(ProjTripleC::new([c(0.0, 0.0); 3], TOL).is_err());
    }

    #[test]
    fn class_of_examples() {
        let eq = equilateral_plus();
        let w = omega();
        let expected = ProjTripleC::new([c(1.0, 0.0), w, w * w], TOL).unwrap();
        assert!(eq.sides.approx_eq(&expected, 1e-12));
        for a in eq.angles {
            assert!(a.approx_eq(ang(PI / 3.0), 1e-12));
        }

        let t = TriangleVariable::from_vertices(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
            .unwrap()
            .with_free_argument(Slot::C, ang(PI / 2.0))
            .unwrap();
        let k = class_of(&t).unwrap();
        assert_eq!(k.sides.coords(), [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
        assert!(k.angles[0].approx_eq(ang(PI / 2.0), 1e-15));
        assert!(k.angles[1].approx_eq(ang(PI / 2.0), 1e-15));
        assert_eq!(k.angles[2], AngleModPi::ZERO);
    }

    #[test]
    fn triple_points_are_absorbed() {
        let d = crate::triangle::DirectionTriple::new([2.0, 1.0, -1.0, 0.5, -1.0, -1.5], TOL).unwrap();
        let tp = TriangleVariable::triple_point(c(3.0, 3.0), d);
        let plain = TriangleVariable::from_sides(c(0.0, 0.0), c(2.0, 1.0), c(-1.0, 0.5)).unwrap();
        assert!(class_equal(&class_of(&tp).unwrap(), &class_of(&plain).unwrap(), 1e-12));
    }

    #[test]
    fn class_equal_examples() {
        let t = TriangleVariable::from_vertices(c(0.3, 0.9), c(-0.4, 0.1), c(1.1, -0.2)).unwrap();
        let s = t.transformed(c(-2.0, 5.0), c(7.0, -1.0)).unwrap();
        assert!(class_equal(&class_of(&t).unwrap(), &class_of(&s).unwrap(), TOL));

        let right = double_b(PI / 2.0);
        let obtuse = double_b(2.0 * PI / 3.0);
        assert!(!class_equal(&right, &obtuse, TOL));

        let minus = act_class(&GroupElement::new(Perm3::IDENTITY, true), &equilateral_plus());
        assert!(!class_equal(&minus, &equilateral_plus(), TOL));
    }

    #[test]
    fn phi_examples() {
        let b = phi(&equilateral_plus());
        let expected = [AngleModPi::ZERO, ang(2.0 * PI / 3.0), ang(PI / 3.0)];
        for (x, y) in b.xi.iter().zip(&expected) {
            assert!(x.approx_eq(*y, 1e-12));
        }
        let alpha = 1.1;
        let d = phi(&double_b(alpha));
        assert_eq!(d.xi[0], AngleModPi::ZERO);
        assert!(d.xi[1].approx_eq(ang(alpha), 1e-15));
        assert_eq!(d.xi[2], AngleModPi::ZERO);

        // [0, −γ, β] and [γ, 0, −α] name the same point
        let [al, be, ga] = equilateral_plus().angles;
        let sides = equilateral_plus().sides;
        let u = BlowupCoord::new(sides, [AngleModPi::ZERO, -ga, be], TOL).unwrap();
        let v = BlowupCoord::new(sides, [ga, AngleModPi::ZERO, -al], TOL).unwrap();
        assert!(u.approx_eq(&v, 1e-12));
    }

    #[test]
    fn psi_on_the_fiber() {
        let sides = ProjTripleC::from_ab(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let xi = ang(0.8);
        let b = BlowupCoord::new(sides, [AngleModPi::ZERO, xi, AngleModPi::ZERO], TOL).unwrap();
        let k = psi(&b);
        assert!(class_equal(&k, &double_b(0.8), 1e-15));
        assert!(phi(&k).approx_eq(&b, 1e-15));
    }

    #[test]
    fn blowup_rejects_wrong_forced_argument() {
        let sides = ProjTripleC::from_ab(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(BlowupCoord::new(sides, [AngleModPi::ZERO, ang(0.3), ang(0.2)], TOL).is_err());
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&equilateral_plus(), TOL).len(), 2);
        let iso = TriangleVariable::from_vertices(c(0.0, 2.0), c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(orbit(&class_of(&iso).unwrap(), TOL).len(), 6);
        let scalene = TriangleVariable::from_vertices(c(0.3, 1.3), c(-1.0, 0.0), c(1.5, 0.1)).unwrap();
        assert_eq!(orbit(&class_of(&scalene).unwrap(), TOL).len(), 12);
    }

    #[test]
    fn canonical_rep_is_constant_on_orbits() {
        let plus = equilateral_plus();
        let minus = act_class(&GroupElement::new(Perm3::IDENTITY, true), &plus);
        assert!(class_equal(&canonical_rep(&plus, TOL), &canonical_rep(&minus, TOL), TOL));
        let t = TriangleVariable::from_vertices(c(0.3, 1.3), c(-1.0, 0.0), c(1.5, 0.1)).unwrap();
        let k = class_of(&t).unwrap();
        let r = canonical_rep(&k, TOL);
        for g in GroupElement::all() {
            assert!(class_equal(&canonical_rep(&act_class(&g, &k), TOL), &r, 1e-9));
        }
        assert!(class_equal(&canonical_rep(&r, TOL), &r, 1e-12));
    }

    #[test]
    fn lift_round_trips() {
        for k in [equilateral_plus(), double_b(0.4), double_b(2.9)] {
            assert!(class_equal(&class_of(&k.lift()).unwrap(), &k, 1e-15));
        }
    }
}
