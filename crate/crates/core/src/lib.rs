//! Point sets on the unit torus `[0,1)^d`, the nonlocal log-sin pair energy
//! that promotes low discrepancy, and the machinery around it: classical
//! quasi-Monte Carlo generators, exact and sampled star discrepancy, Warnock's
//! L² formula, weighted exponential-sum surrogates, gradient descent on the
//! torus, and numerical verification of the lattice-rule criticality results.
//!
//! The crate is `no_std`-compatible (`alloc` required). Build with the default
//! `std` feature, or with `--no-default-features --features libm` to route the
//! transcendental math through [`libm`].
//!
//! All computations are single-threaded and deterministic by default. The
//! row-partitioned entry points in [`energy`] allow callers to parallelize the
//! O(N²d) pair sums while keeping a fixed reduction order per partition count.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod discrepancy;
pub mod energy;
pub mod error;
pub mod generators;
pub mod lattice;
mod math;
pub mod optimizer;
pub mod points;
pub mod quality;
mod rng;
pub mod torus;

pub use error::{Error, Result};
pub use points::PointSet;

/// Coordinate-coincidence threshold below which energy evaluation refuses to
/// proceed. Far below any displacement a descent step produces, far above
/// rounding noise.
pub const DEGENERACY_EPS: f64 = 1e-12;
