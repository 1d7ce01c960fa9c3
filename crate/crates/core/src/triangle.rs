//! The geometric variable of a labeled, oriented, possibly-degenerate
//! triangle.
//!
//! A triangle is stored as
//!
//! ```text
//! (B₀; (a, b, c); [a₁, a₂, b₁, b₂, c₁, c₂]; (ξ_a, ξ_b, ξ_c))
//! ```
//!
//! with side-vectors `a + b + c = 0`, a direction sextuple in `P⁵(ℝ)` that
//! remembers the shape of a triple point, and one argument mod π per side.
//! The vertices are `(A, B, C) = (B₀ − c, B₀, B₀ + a)`, so `a = C − B`,
//! `b = A − C` and `c = B − A`.
//!
//! Arguments of nonzero direction pairs are forced. The argument of a zero
//! pair (a double point, or a tripled double point) is free and encodes the
//! approach direction; it is `None` until the caller supplies it.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles::{angle_dist, rho, AngleModPi, ProjPoint1R};
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// One of the three alphabetical slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    A,
    B,
    C,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::A, Slot::B, Slot::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Slot {
        Self::ALL[i]
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::A => "a",
            Slot::B => "b",
            Slot::C => "c",
        })
    }
}

/// Side-vectors `(a, b, c) ∈ ℂ³` with `a + b + c = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideTriple(pub [Complex64; 3]);

impl SideTriple {
    pub const ZERO: SideTriple = SideTriple([Complex64::new(0.0, 0.0); 3]);

    /// Checks closure to within `tol` relative to the largest side, then
    /// replaces `c` by `−a − b`.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, tol: f64) -> Result<Self> {
        for z in [a, b, c] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!("side {z}")));
            }
        }
        let scale = a.norm().max(b.norm()).max(c.norm());
        let residual = (a + b + c).norm();
        if residual > tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::ClosureViolated { residual });
        }
        Ok(SideTriple([a, b, -a - b]))
    }

    /// Closed by construction: `c = −a − b`.
    pub fn from_ab(a: Complex64, b: Complex64) -> Self {
        SideTriple([a, b, -a - b])
    }

    pub fn get(&self, slot: Slot) -> Complex64 {
        self.0[slot.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn max_modulus(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Twice the signed area of the vertex triangle, `Im(conj(a)·b)`.
    pub fn twice_signed_area(&self) -> f64 {
        (self.0[0].conj() * self.0[1]).im
    }

    pub fn scaled(&self, lambda: Complex64) -> SideTriple {
        SideTriple::from_ab(self.0[0] * lambda, self.0[1] * lambda)
    }
}

/// A point `[a₁, a₂, b₁, b₂, c₁, c₂]` of `P⁵(ℝ)` with both alphabetical sums
/// zero, in canonical form (max-abs coordinate 1, first nonzero positive).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionTriple([f64; 6]);

impl DirectionTriple {
    pub fn new(coords: [f64; 6], tol: f64) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("directions {coords:?}")));
        }
        let m = max_abs(&coords);
        if m == 0.0 {
            return Err(Error::InvalidDirections("all six coordinates are zero".into()));
        }
        let d = coords.map(|x| x / m);
        if (d[0] + d[2] + d[4]).abs() > tol {
            return Err(Error::InvalidDirections(
                "direction triple violates a1+b1+c1=0".into(),
            ));
        }
        if (d[1] + d[3] + d[5]).abs() > tol {
            return Err(Error::InvalidDirections(
                "direction triple violates a2+b2+c2=0".into(),
            ));
        }
        let closed = [d[0], d[1], d[2], d[3], -d[0] - d[2], -d[1] - d[3]];
        Ok(Self::canonicalize(closed))
    }

    /// `[re a, im a, re b, im b, re c, im c]`, or `None` for zero sides.
    pub fn from_sides(sides: &SideTriple) -> Option<Self> {
        if sides.is_zero() {
            return None;
        }
        let [a, b, c] = sides.0;
        Some(Self::canonicalize([a.re, a.im, b.re, b.im, c.re, c.im]))
    }

    fn canonicalize(coords: [f64; 6]) -> Self {
        let m = max_abs(&coords);
        let mut d = coords.map(|x| x / m);
        if let Some(first) = d.iter().find(|x| **x != 0.0) {
            if *first < 0.0 {
                d = d.map(|x| -x);
            }
        }
        DirectionTriple(d.map(|x| x + 0.0))
    }

    /// Raw constructor without validation; see [`TriangleVariable::validate`].
    pub fn from_raw(coords: [f64; 6]) -> Self {
        DirectionTriple(coords)
    }

    pub fn coords(&self) -> [f64; 6] {
        self.0
    }

    pub fn pair(&self, slot: Slot) -> (f64, f64) {
        let i = 2 * slot.index();
        (self.0[i], self.0[i + 1])
    }

    /// The pair as a complex number `x₁ + x₂i`.
    pub fn complex(&self, slot: Slot) -> Complex64 {
        let (x, y) = self.pair(slot);
        Complex64::new(x, y)
    }

    pub fn complexes(&self) -> [Complex64; 3] {
        Slot::ALL.map(|s| self.complex(s))
    }

    pub fn pair_is_zero(&self, slot: Slot) -> bool {
        let (x, y) = self.pair(slot);
        x == 0.0 && y == 0.0
    }

    /// `ρ` of a pair; `None` for a zero pair.
    pub fn argument(&self, slot: Slot) -> Option<AngleModPi> {
        let (x, y) = self.pair(slot);
        ProjPoint1R::new(x, y).ok().map(rho)
    }

    /// Projective equality in `P⁵(ℝ)`.
    pub fn approx_eq(&self, other: &DirectionTriple, tol: f64) -> bool {
        let same = self.0.iter().zip(&other.0).all(|(x, y)| (x - y).abs() <= tol);
        let opposite = self.0.iter().zip(&other.0).all(|(x, y)| (x + y).abs() <= tol);
        same || opposite
    }
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// The arguments `(ξ_a, ξ_b, ξ_c)`; `None` marks an unset free argument.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ArgumentTriple(pub [Option<AngleModPi>; 3]);

impl ArgumentTriple {
    pub fn get(&self, slot: Slot) -> Option<AngleModPi> {
        self.0[slot.index()]
    }

    /// All three arguments, failing on the first unset one.
    pub fn resolved(&self) -> Result<[AngleModPi; 3]> {
        let mut out = [AngleModPi::ZERO; 3];
        for s in Slot::ALL {
            out[s.index()] = self.get(s).ok_or(Error::UnsetFreeArgument(s))?;
        }
        Ok(out)
    }
}

/// Degeneracy strata. `Simple` means all three side lines are parallel,
/// `Double` that some direction pair vanishes, `Triple` that all
/// side-vectors vanish; the compound variants are their intersections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegeneracyType {
    Nondegenerate,
    Simple,
    Double,
    Triple,
    TripledSimple,
    DoubledSimple,
    TripledDouble,
    TripledDoubledSimple,
}

impl DegeneracyType {
    fn from_flags(smp: bool, dbl: bool, tpl: bool) -> Self {
        use DegeneracyType::*;
        match (smp, dbl, tpl) {
            (false, false, false) => Nondegenerate,
            (true, false, false) => Simple,
            (false, true, false) => Double,
            (false, false, true) => Triple,
            (true, false, true) => TripledSimple,
            (true, true, false) => DoubledSimple,
            (false, true, true) => TripledDouble,
            (true, true, true) => TripledDoubledSimple,
        }
    }

    pub fn is_degenerate(self) -> bool {
        self != DegeneracyType::Nondegenerate
    }
}

impl fmt::Display for DegeneracyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
    Zero,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
            Orientation::Zero => Orientation::Zero,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A consistency condition that a [`TriangleVariable`] fails.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NonFinite,
    SidesDoNotClose { residual: f64 },
    DirectionsMismatchSides,
    DirectionsZero,
    DirectionClosure { component: u8 },
    ArgumentInconsistent(Slot),
    ArgumentMissing(Slot),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite => f.write_str("non-finite coordinate"),
            Violation::SidesDoNotClose { residual } => {
                write!(f, "side-vectors violate a+b+c=0 (residual {residual:e})")
            }
            Violation::DirectionsMismatchSides => {
                f.write_str("direction triple does not match the side-vectors")
            }
            Violation::DirectionsZero => f.write_str("direction triple is zero"),
            Violation::DirectionClosure { component } => write!(
                f,
                "direction triple violates a{component}+b{component}+c{component}=0"
            ),
            Violation::ArgumentInconsistent(s) => {
                write!(f, "argument ξ_{s} inconsistent with direction")
            }
            Violation::ArgumentMissing(s) => {
                write!(f, "argument ξ_{s} missing for a nonzero direction")
            }
        }
    }
}

/// The full geometric variable of a triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleVariable {
    pub basepoint: Complex64,
    pub sides: SideTriple,
    pub directions: DirectionTriple,
    pub arguments: ArgumentTriple,
}

impl TriangleVariable {
    /// Builds the variable from vertices, with `B₀ = B`. Free arguments of
    /// a double point are left unset.
    pub fn from_vertices(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        for z in [a, b, c] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!("vertex {z}")));
            }
        }
        let side_a = c - b;
        let side_b = a - c;
        Self::from_sides(b, side_a, side_b)
    }

    /// Builds the variable from `a` and `b`; `c = −a − b`.
    pub fn from_sides(basepoint: Complex64, a: Complex64, b: Complex64) -> Result<Self> {
        let sides = SideTriple::from_ab(a, b);
        if sides.0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(format!("sides {:?}", sides.0)));
        }
        let directions =
            DirectionTriple::from_sides(&sides).ok_or(Error::UnderdeterminedTriplePoint)?;
        Ok(TriangleVariable {
            basepoint,
            sides,
            directions,
            arguments: forced_arguments(&directions),
        })
    }

    /// A triple point `(a, b, c) = 0` with the given approach shape.
    pub fn triple_point(basepoint: Complex64, directions: DirectionTriple) -> Self {
        TriangleVariable {
            basepoint,
            sides: SideTriple::ZERO,
            directions,
            arguments: forced_arguments(&directions),
        }
    }

    /// Sets the free argument of a zero direction pair.
    pub fn with_free_argument(mut self, slot: Slot, xi: AngleModPi) -> Result<Self> {
        if !self.directions.pair_is_zero(slot) {
            return Err(Error::ForcedArgument(slot));
        }
        self.arguments.0[slot.index()] = Some(xi);
        Ok(self)
    }

    /// Fills every unset free argument with the argument of the common line
    /// of the two nonzero pairs: the approach along the degenerate line
    /// itself, i.e. inscribed in a circle of infinite radius.
    pub fn with_inscribed_default(mut self) -> Self {
        for s in Slot::ALL {
            if self.arguments.get(s).is_none() {
                let line = Slot::ALL
                    .iter()
                    .filter(|t| **t != s)
                    .find_map(|t| self.directions.argument(*t));
                self.arguments.0[s.index()] = line;
            }
        }
        self
    }

    /// Vertices `(A, B, C) = (B₀ − c, B₀, B₀ + a)`.
    pub fn vertices(&self) -> [Complex64; 3] {
        let [a, _, c] = self.sides.0;
        [self.basepoint - c, self.basepoint, self.basepoint + a]
    }

    /// The stratum whose defining equations hold within `tol`, evaluated on
    /// the canonical direction triple.
    pub fn classify(&self, tol: f64) -> DegeneracyType {
        let tpl = self.sides.is_zero();
        let moduli = Slot::ALL.map(|s| self.directions.complex(s).norm());
        let (zero_slot, min_modulus) = moduli
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, m)| if *m < acc.1 { (i, *m) } else { acc });
        let dbl = min_modulus <= tol;
        let smp = if dbl {
            let k = Slot::from_index(zero_slot);
            let line = self.directions.argument(Slot::from_index((zero_slot + 1) % 3));
            match (self.arguments.get(k), line) {
                (Some(free), Some(line)) => angle_dist(free, line) <= tol,
                _ => false,
            }
        } else {
            let [a, b, _] = self.directions.complexes();
            (a.conj() * b).im.abs() / (moduli[0] * moduli[1]) <= tol
        };
        DegeneracyType::from_flags(smp, dbl, tpl)
    }

    /// Zero for every degenerate stratum, otherwise the sign of the signed
    /// area of `(A, B, C)`.
    pub fn orientation(&self, tol: f64) -> Orientation {
        if self.classify(tol).is_degenerate() {
            return Orientation::Zero;
        }
        let [a, b, _] = self.directions.complexes();
        if (a.conj() * b).im > 0.0 {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    /// `(α, β, γ) = (ξ_b − ξ_c, ξ_c − ξ_a, ξ_a − ξ_b) mod π`.
    pub fn interior_angles(&self) -> Result<[AngleModPi; 3]> {
        Ok(angles_from_arguments(self.arguments.resolved()?))
    }

    /// The `D₆` action: permute slots, reflect across the real axis on flip.
    /// The basepoint is fixed.
    pub fn act(&self, g: &GroupElement) -> TriangleVariable {
        let sides = g.perm.apply(self.sides.0);
        let pairs = g.perm.apply(Slot::ALL.map(|s| self.directions.pair(s)));
        let args = g.perm.apply(self.arguments.0);
        let (sides, pairs, args) = if g.flip {
            (
                sides.map(|z| z.conj()),
                pairs.map(|(x, y)| (x, -y)),
                args.map(|a| a.map(|x| -x)),
            )
        } else {
            (sides, pairs, args)
        };
        let [(a1, a2), (b1, b2), (c1, c2)] = pairs;
        TriangleVariable {
            basepoint: self.basepoint,
            sides: SideTriple(sides),
            directions: DirectionTriple::canonicalize([a1, a2, b1, b2, c1, c2]),
            arguments: ArgumentTriple(args),
        }
    }

    /// Every consistency condition that fails within `tol`.
    pub fn validate(&self, tol: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        let finite = self.basepoint.re.is_finite()
            && self.basepoint.im.is_finite()
            && self.sides.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
            && self.directions.0.iter().all(|x| x.is_finite());
        if !finite {
            out.push(Violation::NonFinite);
            return out;
        }
        let scale = self.sides.max_modulus();
        let residual = self.sides.0.iter().sum::<Complex64>().norm();
        if residual > tol * scale.max(f64::MIN_POSITIVE) {
            out.push(Violation::SidesDoNotClose { residual });
        }
        let d = self.directions.0;
        let m = max_abs(&d);
        if m == 0.0 {
            out.push(Violation::DirectionsZero);
            return out;
        }
        match DirectionTriple::from_sides(&self.sides) {
            Some(expected) => {
                let normalized = DirectionTriple(d.map(|x| x / m));
                if !expected.approx_eq(&normalized, tol) {
                    out.push(Violation::DirectionsMismatchSides);
                }
            }
            None => {
                if ((d[0] + d[2] + d[4]) / m).abs() > tol {
                    out.push(Violation::DirectionClosure { component: 1 });
                }
                if ((d[1] + d[3] + d[5]) / m).abs() > tol {
                    out.push(Violation::DirectionClosure { component: 2 });
                }
            }
        }
        for s in Slot::ALL {
            if let Some(forced) = self.directions.argument(s) {
                match self.arguments.get(s) {
                    Some(x) if angle_dist(x, forced) <= tol => {}
                    Some(_) => out.push(Violation::ArgumentInconsistent(s)),
                    None => out.push(Violation::ArgumentMissing(s)),
                }
            }
        }
        out
    }

    /// Applies `z ↦ λz + w` to the vertices: sides scale by `λ`, the
    /// basepoint moves to `λB₀ + w`.
    pub fn transformed(&self, lambda: Complex64, shift: Complex64) -> Result<TriangleVariable> {
        if lambda.norm() == 0.0 {
            return Err(Error::ZeroVector("similarity scale factor".into()));
        }
        let basepoint = self.basepoint * lambda + shift;
        if self.sides.is_zero() {
            // rotate the approach shape, keep free arguments attached to it
            let rotated = SideTriple(self.directions.complexes()).scaled(lambda / lambda.norm());
            let [a, b, c] = rotated.0;
            let mut t = TriangleVariable::triple_point(
                basepoint,
                DirectionTriple::canonicalize([a.re, a.im, b.re, b.im, c.re, c.im]),
            );
            let turn = AngleModPi::wrap(lambda.arg());
            for s in Slot::ALL {
                if let (None, Some(x)) = (t.arguments.get(s), self.arguments.get(s)) {
                    t.arguments.0[s.index()] = Some(x + turn);
                }
            }
            return Ok(t);
        }
        let [a, b, _] = self.sides.0;
        let mut t = TriangleVariable::from_sides(basepoint, a * lambda, b * lambda)?;
        let turn = AngleModPi::wrap(lambda.arg());
        for s in Slot::ALL {
            if let (None, Some(x)) = (t.arguments.get(s), self.arguments.get(s)) {
                t.arguments.0[s.index()] = Some(x + turn);
            }
        }
        Ok(t)
    }
}

fn forced_arguments(directions: &DirectionTriple) -> ArgumentTriple {
    ArgumentTriple(Slot::ALL.map(|s| directions.argument(s)))
}

pub(crate) fn angles_from_arguments(xi: [AngleModPi; 3]) -> [AngleModPi; 3] {
    let [xa, xb, xc] = xi;
    [xb - xc, xc - xa, xa - xb]
}
