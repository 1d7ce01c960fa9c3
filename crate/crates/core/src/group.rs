//! The dihedral group `D₆ ≅ S₃ × ℤ₂` acting on labels and orientation.

use std::fmt;

/// A permutation of the three alphabetical slots `a, b, c`, stored as the
/// image of each slot: slot `i` moves to slot `self.0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3([usize; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([0, 1, 2]);

    pub fn new(images: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm3(images))
    }

    pub fn all() -> [Perm3; 6] {
        [
            Perm3([0, 1, 2]),
            Perm3([1, 2, 0]),
            Perm3([2, 0, 1]),
            Perm3([1, 0, 2]),
            Perm3([0, 2, 1]),
            Perm3([2, 1, 0]),
        ]
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    /// Moves the entry in slot `i` to slot `σ(i)`.
    pub fn apply<T: Copy>(&self, x: [T; 3]) -> [T; 3] {
        let mut y = x;
        for i in 0..3 {
            y[self.0[i]] = x[i];
        }
        y
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm3) -> Perm3 {
        Perm3([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0; 3];
        for i in 0..3 {
            inv[self.0[i]] = i;
        }
        Perm3(inv)
    }

    pub fn is_odd(&self) -> bool {
        let mut inversions = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }
}

/// An element `(σ, ε)` of `S₃ × ℤ₂`. The `flip` component reverses
/// orientation by reflecting the plane across the real axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub perm: Perm3,
    pub flip: bool,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        perm: Perm3::IDENTITY,
        flip: false,
    };

    pub fn new(perm: Perm3, flip: bool) -> Self {
        GroupElement { perm, flip }
    }

    /// All twelve elements, rotations of `S₃` first.
    pub fn all() -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(12);
        for flip in [false, true] {
            for perm in Perm3::all() {
                out.push(GroupElement { perm, flip });
            }
        }
        out
    }

    /// The product `self · other` (act by `other` first).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            perm: self.perm.compose(&other.perm),
            flip: self.flip ^ other.flip,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            perm: self.perm.inverse(),
            flip: self.flip,
        }
    }

    /// Whether the element negates orientation of nondegenerate triangles.
    pub fn reverses_orientation(&self) -> bool {
        self.perm.is_odd() ^ self.flip
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [char; 3] = ['a', 'b', 'c'];
        let p = self.perm.images();
        write!(
            f,
            "a->{} b->{} c->{}{}",
            NAMES[p[0]],
            NAMES[p[1]],
            NAMES[p[2]],
            if self.flip { " flip" } else { "" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_distinct_elements() {
        let all = GroupElement::all();
        assert_eq!(all.len(), 12);
        for (i, g) in all.iter().enumerate() {
            for h in &all[i + 1..] {
                assert_ne!(g, h);
            }
        }
    }

    #[test]
    fn closure_identity_inverse() {
        let all = GroupElement::all();
        for g in &all {
            assert_eq!(g.compose(&GroupElement::IDENTITY), *g);
            assert_eq!(g.compose(&g.inverse()), GroupElement::IDENTITY);
            for h in &all {
                assert!(all.contains(&g.compose(h)));
            }
        }
    }

    #[test]
    fn apply_is_an_action() {
        let x = ['x', 'y', 'z'];
        for s in Perm3::all() {
            for t in Perm3::all() {
                assert_eq!(s.compose(&t).apply(x), s.apply(t.apply(x)));
            }
        }
    }

    #[test]
    fn three_cycle_moves_a_to_b() {
        let cyc = Perm3::new([1, 2, 0]).unwrap();
        assert_eq!(cyc.apply(['a', 'b', 'c']), ['c', 'a', 'b']);
        assert!(!cyc.is_odd());
        assert!(Perm3::new([1, 0, 2]).unwrap().is_odd());
        assert!(Perm3::new([0, 0, 1]).is_none());
    }

    #[test]
    fn dihedral_structure() {
        // S3 x Z2 has exactly seven involutions and is non-abelian
        let all = GroupElement::all();
        let involutions = all
            .iter()
            .filter(|g| **g != GroupElement::IDENTITY && g.compose(g) == GroupElement::IDENTITY)
            .count();
        assert_eq!(involutions, 7);
        let noncommuting = all
            .iter()
            .flat_map(|g| all.iter().map(move |h| (g, h)))
            .any(|(g, h)| g.compose(h) != h.compose(g));
        assert!(noncommuting);
    }
}
