//! Toader mean, complete elliptic integrals, and sharp bounds of the Toader
//! mean by convex and harmonic combinations of the centroidal and arithmetic
//! means.
//!
//! Layout:
//!
//! - [`elliptic`]: K(r), E(r), derivatives, Landen identity, quadrature oracle.
//! - [`means`]: classical, power and Toader means on positive pairs.
//! - [`bounds`]: sharp constants, envelopes, elementary bounds on E(r).
//! - [`harness`]: table reproduction, verification suites, CLI plumbing.

pub mod bounds;
pub mod elliptic;
pub mod error;
pub mod harness;
pub mod means;
pub mod quadrature;
pub mod twofold;

pub use error::{Error, Result};
