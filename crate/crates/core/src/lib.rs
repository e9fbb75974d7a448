//! Numerical toolkit for the spectral-region characterization of Gevrey
//! ultradifferentiability of weak solutions of `y'(t) = A y(t)` on the real
//! axis, with `A` modelled as a diagonal scalar-type spectral operator on an
//! orthonormal-basis sequence space.
//!
//! The crate provides:
//!
//! - atomic spectrum models (finite lists and closed-form generators) with
//!   exact per-family asymptotics ([`spectrum`]);
//! - the two-sided power region `P^beta_{b-,b+}`, membership tests and the
//!   complement-boundedness criterion ([`region`]);
//! - the diagonal Borel operational calculus: spectral projections, `F(A)`,
//!   domain tests in direct and dual (total-variation) form ([`calculus`]);
//! - Gevrey vector classes of Roumieu and Beurling type, order estimation
//!   from `||A^n f||` data ([`gevrey`]);
//! - two-sided orbits `e^{tA} f`, derivative chains and the mild-solution
//!   identity ([`evolution`]);
//! - synthesis of initial states refuting Roumieu membership when the region
//!   criterion fails, with replayable divergence certificates
//!   ([`counterexample`]);
//! - seeded theorem-level verification suites and canonical JSON/CSV report
//!   emission ([`verify`], [`report`]).

pub mod calculus;
pub mod counterexample;
pub mod error;
pub mod evolution;
pub mod gevrey;
pub mod numerics;
pub mod region;
pub mod report;
pub mod series;
pub mod spectrum;
pub mod state;
pub mod verify;

pub use error::Error;
