//! Exact balance checking for two-dimensional block stacks, together with the
//! mass-movement calculus used to bound how far a stack can reach past the
//! edge of a table.
//!
//! All arithmetic is exact ([`rational::Rational`]). The main entry points:
//!
//! * [`model`] and [`generators`]: stack geometry and named constructions.
//! * [`lp`]: exact linear feasibility with certificates.
//! * [`balance`]: equilibrium systems, force certificates, slice forces.
//! * [`massmove`]: distributions, moves, traces and the splitting order.
//! * [`harness`]: end-to-end verification reports and bound checks.

// Errors carry the offending exact values; they are cold and stay unboxed.
#![allow(clippy::result_large_err)]

pub mod balance;
pub mod generators;
pub mod harness;
pub mod lp;
pub mod massmove;
pub mod model;
pub mod rational;

pub use rational::Rational;
