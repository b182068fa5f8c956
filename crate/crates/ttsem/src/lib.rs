//! A semantics engine for temporal propositions over the interval domain.
//!
//! Behaviors live over windows of time; a proposition over a window is a
//! Scott-open set of the interval domain, which this crate represents
//! exactly as a Dyck path: a 1-Lipschitz rational piecewise-linear function
//! pinned to zero at both ends. On top of that representation the crate
//! provides:
//!
//! * the full Heyting algebra of propositions with exact meet, join,
//!   implication, negation, restriction and Kripke-Joyal forcing
//!   ([`omega`]);
//! * the temporal modalities See, At, In and the pointwise modality pi
//!   ([`modality`]);
//! * Kaucher interval arithmetic on possibly-improper intervals and
//!   piecewise-linear sections of the numeric sheaves, with comparison
//!   opens ([`numeric`]);
//! * interval-valued lower/upper derivatives and the derivative
//!   approximation relation ([`calculus`]);
//! * walks through graphs as hybrid behaviors, labeled transition systems,
//!   and delay checking ([`walk`]);
//! * behavior contracts and a machine-checked reproduction of an
//!   airspace-safety case study ([`contract`]);
//! * a classical temporal-logic monitor on boolean signals with an
//!   embedding into the open-set semantics ([`mtl`]).
//!
//! All arithmetic is exact over arbitrary-precision rationals; algebraic
//! laws in the test suite are checked as equalities of normalized
//! representations, not up to tolerance.

pub mod calculus;
pub mod cli;
pub mod contract;
pub mod error;
pub mod formula;
pub mod interval;
pub mod modality;
pub mod mtl;
pub mod numeric;
pub mod omega;
pub mod plf;
pub mod rat;
pub mod sample;
pub mod walk;

pub use error::{Error, Result};
pub use interval::{Clock, HalfPlanePoint, IntervalPoint, Window};
pub use omega::DyckPath;
pub use plf::{ClosedSet1D, LinPiece, Plf};
pub use rat::{ExtQ, Q};
