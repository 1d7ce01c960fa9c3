//! Angles modulo π, the real projective line, and the isomorphism `ρ`
//! between them.
//!
//! Every direction of a line in the plane is an element of `ℝ/π`. We store
//! such values by their canonical representative in `[0, π)`, so equality of
//! angles is a plain comparison up to the wraparound metric [`angle_dist`].

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default comparison tolerance used throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An element of `ℝ/π`, stored as its representative in `[0, π)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct AngleModPi(f64);

impl AngleModPi {
    pub const ZERO: AngleModPi = AngleModPi(0.0);

    /// Reduces `x` modulo π. Fails on non-finite input.
    pub fn new(x: f64) -> Result<Self> {
        reduce_mod_pi(x)
    }

    /// Reduces a value that is known to be finite (internal arithmetic).
    pub(crate) fn wrap(x: f64) -> Self {
        debug_assert!(x.is_finite(), "non-finite angle {x}");
        AngleModPi(canonical(x))
    }

    /// The representative in `[0, π)`.
    pub fn value(self) -> f64 {
        self.0
    }

    /// The representative in `(-π, 0]`; used for negatively oriented lifts.
    pub fn value_nonpositive(self) -> f64 {
        if self.0 == 0.0 {
            0.0
        } else {
            self.0 - PI
        }
    }

    /// The representative nearest to `reference` (as a real number).
    pub fn lift_near(self, reference: f64) -> f64 {
        let k = ((reference - self.0) / PI).round();
        self.0 + k * PI
    }

    /// Unit direction vector `[cos ξ, sin ξ]` of the line at this angle.
    pub fn lift(self) -> ProjPoint1R {
        ProjPoint1R::canonicalize(self.0.cos(), self.0.sin())
    }

    /// Wraparound distance in `[0, π/2]`.
    pub fn dist(self, other: AngleModPi) -> f64 {
        angle_dist(self, other)
    }

    pub fn approx_eq(self, other: AngleModPi, tol: f64) -> bool {
        angle_dist(self, other) <= tol
    }
}

fn canonical(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    // rem_euclid of a tiny negative number rounds up to exactly π
    if r >= PI || r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Returns `x − kπ ∈ [0, π)` for the unique integer `k`.
pub fn reduce_mod_pi(x: f64) -> Result<AngleModPi> {
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("angle {x}")));
    }
    Ok(AngleModPi(canonical(x)))
}

/// `ρ([x, y]) = Arg(x + yi) mod π`.
pub fn rho(p: ProjPoint1R) -> AngleModPi {
    AngleModPi::wrap(p.y.atan2(p.x))
}

/// `min(|a − b|, π − |a − b|)`.
pub fn angle_dist(a: AngleModPi, b: AngleModPi) -> f64 {
    let d = (a.0 - b.0).abs();
    d.min(PI - d).max(0.0)
}

impl Add for AngleModPi {
    type Output = AngleModPi;
    fn add(self, rhs: AngleModPi) -> AngleModPi {
        AngleModPi::wrap(self.0 + rhs.0)
    }
}

impl Sub for AngleModPi {
    type Output = AngleModPi;
    fn sub(self, rhs: AngleModPi) -> AngleModPi {
        AngleModPi::wrap(self.0 - rhs.0)
    }
}

impl Neg for AngleModPi {
    type Output = AngleModPi;
    fn neg(self) -> AngleModPi {
        AngleModPi::wrap(-self.0)
    }
}

impl fmt::Display for AngleModPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for AngleModPi {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for AngleModPi {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        reduce_mod_pi(x).map_err(serde::de::Error::custom)
    }
}

/// A point `[x, y]` of `P¹(ℝ)`, kept with `max(|x|, |y|) = 1` and the first
/// nonzero coordinate positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint1R {
    x: f64,
    y: f64,
}

impl ProjPoint1R {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::NonFinite(format!("projective point [{x}, {y}]")));
        }
        if x == 0.0 && y == 0.0 {
            return Err(Error::ZeroVector("projective point [0, 0]".into()));
        }
        Ok(Self::canonicalize(x, y))
    }

    fn canonicalize(x: f64, y: f64) -> Self {
        let m = x.abs().max(y.abs());
        let (mut x, mut y) = (x / m, y / m);
        if x < 0.0 || (x == 0.0 && y < 0.0) {
            x = -x;
            y = -y;
        }
        // normalize signed zeros
        ProjPoint1R { x: x + 0.0, y: y + 0.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod_pi(PI).unwrap().value(), 0.0);
        assert!((reduce_mod_pi(-FRAC_PI_4).unwrap().value() - 3.0 * FRAC_PI_4).abs() < 1e-15);
        let x = 2.0 * PI / 3.0;
        assert_eq!(reduce_mod_pi(x).unwrap().value(), x);
        assert!(reduce_mod_pi(f64::NAN).is_err());
        assert!(reduce_mod_pi(f64::INFINITY).is_err());
    }

    #[test]
    fn reduce_tiny_negative_stays_below_pi() {
        let a = reduce_mod_pi(-1e-18).unwrap();
        assert!(a.value() < PI);
        assert!(a.value() >= 0.0);
        assert_eq!(reduce_mod_pi(-0.0).unwrap().value().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn rho_examples() {
        let p = |x, y| ProjPoint1R::new(x, y).unwrap();
        assert_eq!(rho(p(1.0, 0.0)).value(), 0.0);
        assert!((rho(p(0.0, 1.0)).value() - PI / 2.0).abs() < 1e-15);
        // oracle: Arg(-1 - i) = atan2(-1, -1) = -3π/4, shifted by π
        let oracle = (-1.0f64).atan2(-1.0) + PI;
        assert!((rho(p(-1.0, -1.0)).value() - oracle).abs() < 1e-15);
        assert!((oracle - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn dist_examples() {
        let a = |x| AngleModPi::new(x).unwrap();
        assert_eq!(angle_dist(a(0.0), a(0.0)), 0.0);
        assert!((angle_dist(a(0.01), a(PI - 0.01)) - 0.02).abs() < 1e-12);
        assert!((angle_dist(a(FRAC_PI_4), a(3.0 * FRAC_PI_4)) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn proj_point_canonical_form() {
        let p = ProjPoint1R::new(-2.0, 4.0).unwrap();
        assert_eq!((p.x(), p.y()), (0.5, -1.0));
        let q = ProjPoint1R::new(0.0, -3.0).unwrap();
        assert_eq!((q.x(), q.y()), (0.0, 1.0));
        assert!(ProjPoint1R::new(0.0, 0.0).is_err());
    }

    #[test]
    fn arithmetic_closes() {
        let a = AngleModPi::new(3.0).unwrap();
        let b = AngleModPi::new(2.5).unwrap();
        for v in [a + b, a - b, -a, b - a] {
            assert!((0.0..PI).contains(&v.value()));
        }
        assert!(((a + b) - b).approx_eq(a, 1e-14));
    }

    #[test]
    fn lift_near_picks_closest_representative() {
        let a = AngleModPi::new(PI - 1e-3).unwrap();
        assert!((a.lift_near(0.0) + 1e-3).abs() < 1e-12);
        assert!((a.lift_near(3.0) - (PI - 1e-3)).abs() < 1e-12);
    }
}
