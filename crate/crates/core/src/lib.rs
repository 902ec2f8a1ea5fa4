//! Space from dynamics and observation.
//!
//! - [`dynsys`] and [`pretopology`]: finite dynamical systems, their
//!   reachability closure, and the (pre-)topology of invariant regions.
//! - [`sigma`]: σ-algebras generated by observed properties or by
//!   reachability domains, and measures on them.
//! - [`linalg`], [`gns`]: complex matrices, finite *-algebras, states and
//!   the GNS representation.
//! - [`context`]: measure spaces induced by choosing observables.
//! - [`spin`]: spin-1/2 precession, Bloch orbits and co-rotating observables.

pub mod context;
pub mod dynsys;
pub mod error;
pub mod gns;
pub mod linalg;
pub mod pretopology;
pub mod sigma;
pub mod spin;
pub mod subset;
pub mod tolerance;

pub use dynsys::{build_system, DynamicalSystem, ReachabilitySet, TimeKind, TimeModel};
pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use subset::Subset;
