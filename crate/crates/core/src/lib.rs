//! Labeled, oriented, possibly-degenerate triangles up to similarity.
//!
//! The compact moduli space of such classes is Dyck's surface `𝔇`, the
//! connected sum of three projective planes. It maps onto two classical
//! shape spaces: the Riemann sphere of side ratios and the Clifford torus
//! of interior angles mod π. Each map collapses a different set of
//! degenerate classes; [`families`] makes that visible numerically.

pub mod angles;
pub mod error;
pub mod extrapolate;
pub mod families;
pub mod group;
pub mod json;
pub mod projections;
pub mod sample;
pub mod shape;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
