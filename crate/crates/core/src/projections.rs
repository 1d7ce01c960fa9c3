//! The two blowdowns of `𝔇`: side ratios on the Riemann sphere through the
//! Hopf map, and interior angles on the Clifford torus.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles::{angle_dist, AngleModPi};
use crate::error::{Error, Result};
use crate::extrapolate::neville_iterates;
use crate::shape::{ProjTripleC, ShapeClass};

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// `2 − √3`, the off-diagonal entry of the sphere chart.
const K: f64 = 2.0 - SQRT3;

/// A point of the unit sphere `X² + Y² + Z² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    /// Normalizes a nonzero vector onto the sphere.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() {
            return Err(Error::NonFinite(format!("sphere point ({x}, {y}, {z})")));
        }
        if n == 0.0 {
            return Err(Error::ZeroVector("sphere point (0, 0, 0)".into()));
        }
        Ok(SpherePoint { x: x / n, y: y / n, z: z / n })
    }

    /// Chord length in `ℝ³`.
    pub fn distance(&self, other: &SpherePoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// The images of `[H_a]`, `[H_b]`, `[H_c]`.
pub fn delta(slot: crate::triangle::Slot) -> SpherePoint {
    use crate::triangle::Slot;
    match slot {
        Slot::A => SpherePoint { x: -SQRT3 / 2.0, y: 0.0, z: 0.5 },
        Slot::B => SpherePoint { x: SQRT3 / 2.0, y: 0.0, z: 0.5 },
        Slot::C => SpherePoint { x: 0.0, y: 0.0, z: -1.0 },
    }
}

/// `H_i(u, v) = (|u|² − |v|², −2 Im(ū v), 2 Re(ū v)) / (|u|² + |v|²)`,
/// the `(i, j, −k)` components of `q i q̄ / |q|²` for the quaternion `q = u + j v`.
pub fn hopf(u: Complex64, v: Complex64) -> Result<SpherePoint> {
    if !(u.re.is_finite() && u.im.is_finite() && v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::NonFinite(format!("hopf({u}, {v})")));
    }
    // scale first so squares cannot overflow or underflow
    let m = u.norm().max(v.norm());
    if m == 0.0 {
        return Err(Error::ZeroVector("hopf(0, 0)".into()));
    }
    let (u, v) = (u / m, v / m);
    let n = u.norm_sqr() + v.norm_sqr();
    let w = u.conj() * v;
    Ok(SpherePoint {
        x: (u.norm_sqr() - v.norm_sqr()) / n,
        y: -2.0 * w.im / n,
        z: 2.0 * w.re / n,
    })
}

/// `π_Ĉ`: `[u, v] = [a + (2 − √3) b, (2 − √3) a + b]`, then the Hopf map.
pub fn to_sphere(c: &ShapeClass) -> SpherePoint {
    let [a, b, _] = c.sides.coords();
    hopf(a + b * K, a * K + b).expect("u = v = 0 forces a = b = 0")
}

/// Named loci on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SphereLocus {
    DegenerateCircle,
    IsoscelesA,
    IsoscelesB,
    IsoscelesC,
    RightA,
    RightB,
    RightC,
    EquilateralPlus,
    EquilateralMinus,
    DoubleA,
    DoubleB,
    DoubleC,
}

impl SphereLocus {
    pub const ALL: [SphereLocus; 12] = [
        SphereLocus::DegenerateCircle,
        SphereLocus::IsoscelesA,
        SphereLocus::IsoscelesB,
        SphereLocus::IsoscelesC,
        SphereLocus::RightA,
        SphereLocus::RightB,
        SphereLocus::RightC,
        SphereLocus::EquilateralPlus,
        SphereLocus::EquilateralMinus,
        SphereLocus::DoubleA,
        SphereLocus::DoubleB,
        SphereLocus::DoubleC,
    ];

    /// Distance-like residual of `s` from the locus; zero on it.
    ///
    /// Isosceles: `|b| = |c|` on `X + √3Z = 0`, `|a| = |c|` on `X − √3Z = 0`,
    /// `|a| = |b|` on `X = 0`. Right angle at `A`, `B`, `C` on the planes
    /// `−√3X + Z = −1`, `√3X + Z = −1`, `Z = 1/2`.
    pub fn residual(self, s: &SpherePoint) -> f64 {
        use crate::triangle::Slot;
        let (x, y, z) = (s.x, s.y, s.z);
        match self {
            SphereLocus::DegenerateCircle => y.abs(),
            SphereLocus::IsoscelesA => (x + SQRT3 * z).abs() / 2.0,
            SphereLocus::IsoscelesB => (x - SQRT3 * z).abs() / 2.0,
            SphereLocus::IsoscelesC => x.abs(),
            SphereLocus::RightA => (-SQRT3 * x + z + 1.0).abs() / 2.0,
            SphereLocus::RightB => (SQRT3 * x + z + 1.0).abs() / 2.0,
            SphereLocus::RightC => (z - 0.5).abs(),
            SphereLocus::EquilateralPlus => s.distance(&SpherePoint { x: 0.0, y: -1.0, z: 0.0 }),
            SphereLocus::EquilateralMinus => s.distance(&SpherePoint { x: 0.0, y: 1.0, z: 0.0 }),
            SphereLocus::DoubleA => s.distance(&delta(Slot::A)),
            SphereLocus::DoubleB => s.distance(&delta(Slot::B)),
            SphereLocus::DoubleC => s.distance(&delta(Slot::C)),
        }
    }
}

impl fmt::Display for SphereLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Positive inside the open cap of classes obtuse at the given vertex:
/// `−√3X + Z < −1` at `A`, `√3X + Z < −1` at `B`, `Z > 1/2` at `C`.
pub fn obtuse_cap_margin(slot: crate::triangle::Slot, s: &SpherePoint) -> f64 {
    use crate::triangle::Slot;
    match slot {
        Slot::A => (-1.0 - (-SQRT3 * s.x + s.z)) / 2.0,
        Slot::B => (-1.0 - (SQRT3 * s.x + s.z)) / 2.0,
        Slot::C => s.z - 0.5,
    }
}

/// Every locus whose residual is within `tol`, in declaration order.
pub fn classify_sphere_locus(s: &SpherePoint, tol: f64) -> Vec<SphereLocus> {
    SphereLocus::ALL
        .into_iter()
        .filter(|l| l.residual(s) <= tol)
        .collect()
}

/// A point `(P, Q, R)` of `V(P + Q + R) ⊂ (ℝ/π)³`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusPoint {
    pub p: AngleModPi,
    pub q: AngleModPi,
    pub r: AngleModPi,
}

/// Which sheet of the lifted cube a torus point sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusSheet {
    /// `(0, 0, 0)`, the image of every simple point.
    Origin,
    /// Lifted sum `π`: positively oriented or degenerate.
    Pi,
    /// Lifted sum `2π`: negatively oriented or degenerate.
    TwoPi,
}

impl TorusPoint {
    pub fn new(p: AngleModPi, q: AngleModPi, r: AngleModPi, tol: f64) -> Result<Self> {
        let sum = p + q + r;
        if angle_dist(sum, AngleModPi::ZERO) > tol {
            return Err(Error::InvalidConfig(format!(
                "torus point ({p}, {q}, {r}) violates P+Q+R = 0 mod π"
            )));
        }
        Ok(TorusPoint { p, q, r })
    }

    /// `(α, β, −α − β)`.
    pub fn from_pq(p: AngleModPi, q: AngleModPi) -> Self {
        TorusPoint { p, q, r: -(p + q) }
    }

    pub fn angles(&self) -> [AngleModPi; 3] {
        [self.p, self.q, self.r]
    }

    /// Sum of the representatives in `[0, π)`: `0`, `π` or `2π`.
    pub fn lifted_sum(&self) -> f64 {
        self.p.value() + self.q.value() + self.r.value()
    }

    pub fn sheet(&self) -> TorusSheet {
        let s = self.lifted_sum();
        if s < PI / 2.0 {
            TorusSheet::Origin
        } else if s < 1.5 * PI {
            TorusSheet::Pi
        } else {
            TorusSheet::TwoPi
        }
    }

    pub fn is_origin(&self, tol: f64) -> bool {
        self.angles().iter().all(|a| angle_dist(*a, AngleModPi::ZERO) <= tol)
    }

    /// Euclidean norm of the three wraparound distances.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        self.angles()
            .iter()
            .zip(other.angles().iter())
            .map(|(x, y)| angle_dist(*x, *y).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// `π_T`: forget the sides.
pub fn to_torus(c: &ShapeClass) -> TorusPoint {
    let [p, q, r] = c.angles;
    TorusPoint { p, q, r }
}

/// Sides of the triangle inscribed in the unit circle with `B = 1` and
/// angles `α`, `β` at `A`, `B`: `[1 − e^{−2iα}, −1 + e^{2iβ}, e^{−2iα} − e^{2iβ}]`,
/// written in half-angle form so small angles keep full relative precision.
pub(crate) fn inscribed_sides(alpha: f64, beta: f64) -> [Complex64; 3] {
    let two_i = Complex64::new(0.0, 2.0);
    let a = two_i * alpha.sin() * Complex64::from_polar(1.0, -alpha);
    let b = two_i * beta.sin() * Complex64::from_polar(1.0, beta);
    let c = -two_i * (alpha + beta).sin() * Complex64::from_polar(1.0, beta - alpha);
    [a, b, c]
}

/// The inverse of `π_T` away from the origin.
pub fn torus_inverse(t: &TorusPoint) -> Result<ShapeClass> {
    let [a, b, _] = inscribed_sides(t.p.value(), t.q.value());
    let sides = ProjTripleC::from_ab(a, b).map_err(|_| Error::BlownDownPoint)?;
    Ok(ShapeClass { sides, angles: t.angles() })
}

/// The side triple reached by approaching the origin of the torus along
/// `t·(α₀, β₀, γ₀)`, extrapolated over `schedule` (values of `t`, tending
/// to zero). The exact limit is the real triple `[α₀, β₀, γ₀]`.
pub fn torus_fiber_limit(direction: [f64; 3], schedule: &[f64], tol: f64) -> Result<ProjTripleC> {
    if direction.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite(format!("direction {direction:?}")));
    }
    let scale = direction.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err(Error::ZeroVector("direction (0, 0, 0)".into()));
    }
    if direction.iter().sum::<f64>().abs() > 1e-9 * scale {
        return Err(Error::InvalidConfig(format!(
            "direction {direction:?} does not sum to zero"
        )));
    }
    if schedule.len() < 2 || schedule.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(Error::InvalidConfig(
            "schedule needs at least two positive parameters".into(),
        ));
    }
    let p = (0..3)
        .find(|&i| direction[i].abs() == scale)
        .expect("some coordinate attains the max");
    let samples: Vec<Vec<f64>> = schedule
        .iter()
        .map(|&t| {
            let s = inscribed_sides(t * direction[0], t * direction[1]);
            s.iter().flat_map(|z| {
                let w = z / s[p];
                [w.re, w.im]
            })
            .collect()
        })
        .collect();
    let iterates: Vec<ProjTripleC> = neville_iterates(schedule, &samples)
        .into_iter()
        .map(|v| {
            ProjTripleC::from_ab(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
        })
        .collect::<Result<_>>()?;
    let trace: Vec<f64> = iterates.windows(2).map(|w| w[0].distance(&w[1])).collect();
    match trace.last() {
        Some(&last) if last <= tol => Ok(*iterates.last().expect("nonempty")),
        _ => Err(Error::NonConvergence { trace }),
    }
}
