//! Exact-arithmetic bounds on stable commutator lengths of Dehn twists along
//! separating curves, together with mechanical verification of every algebraic
//! ingredient the bounds rest on.
//!
//! The crate has four layers:
//!
//! * [`trace_words`] — a word engine for the free partially commutative group
//!   in which generators at index distance ≥ 2 commute, including a
//!   certificate-producing verifier for the interleaving conjugacy used when
//!   rearranging twist products.
//! * [`homology`] — the integer symplectic representation of the twist
//!   generators on first homology, used to verify the chain, hyperelliptic and
//!   block relations as exact matrix identities (necessary conditions).
//! * [`bounds`] — the exact rational recursion for the upper bounds, its
//!   closed forms, and the coefficient identity behind them.
//! * [`replay`] — re-derives a bound end-to-end from the block decomposition
//!   and the quasi-morphism defect inequality, cross-checking every structural
//!   hypothesis along the way.
//!
//! All bound arithmetic is exact; decimals only ever appear as renderings.

pub mod bounds;
pub mod error;
pub mod homology;
pub mod matrix;
pub mod rational;
pub mod replay;
pub mod trace_words;

pub use bounds::{bound, BoundResult};
pub use error::{Error, Result};
pub use homology::SymplecticElement;
pub use rational::Rational;
pub use replay::{replay_report, ReplayReport};
pub use trace_words::{Generator, HeapNormalForm, Word};
