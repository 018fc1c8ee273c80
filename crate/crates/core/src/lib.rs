//! Topology of the flat surfaces obtained by unfolding polygonal billiards.
//!
//! For a polygon with interior angles λ₁π,…,λ_Nπ the crate computes the exact
//! genus when every λⱼ is rational, and otherwise produces checkable evidence
//! that the surface is one-ended with infinite genus: resonance lattices, end
//! diagnostics on the Cayley graph of the deck group, and explicit families of
//! pairwise disjoint handles.

pub mod angles;
pub mod lattice;
pub mod resonance;
pub mod deckgraph;
pub mod ribbon;
pub mod surgery;
pub mod unfold;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;

pub use angles::{AngleError, AngleValue, AngleVector, IrrationalBasis, Order, Rational, RotationClass};
pub use resonance::{AngleChoice, DeckGroup, GroupElementCoord, QuotientGroup, ResonanceError, ResonanceLattice};
pub use ribbon::{RibbonError, RibbonGraph, SurfaceReport, VoltageRibbonGraph};
pub use surgery::{SubcaseTag, SubcaseVerdict, SurgeryError, Word};
pub use unfold::{GeometricPolygon, PlanarIsometry, UnfoldError, UnfoldingRecord};
