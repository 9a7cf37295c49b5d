//! Stationary scattering of a quantum particle off a finite array of
//! one-dimensional Dirac delta potentials.
//!
//! All solver math runs in dimensionless units: positions `y = k x`,
//! strengths `ξ = Ṽ₀ / k` with `Ṽ₀ = 2 m V₀ / ħ²`. A unit-amplitude plane
//! wave `e^{iy}` comes in from the left; every region between two sites
//! carries `a e^{iy} + b e^{-iy}`.
//!
//! Two independent routes compute the amplitudes:
//!
//! * [`direct`] assembles the `2n × 2n` matching system and solves it with
//!   dense Gaussian elimination.
//! * [`transfer`] composes `2 × 2` site matrices in `O(n)`.
//!
//! [`closed_forms`] carries hand-derived formulas for small arrays that act
//! as regression oracles for both, [`wavefunction`] rebuilds `ψ(y)` from a
//! solution, and [`analysis`] runs parameter sweeps and the resonance finder.
//!
//! ```
//! use deltascat::{direct, DimensionlessSystem};
//!
//! let sys = DimensionlessSystem::from_gaps(vec![1.0, 1.0], &[1.0], 0.0)?;
//! let sol = direct::solve_amplitudes(&sys)?;
//! assert!((sol.transmission() + sol.reflection() - 1.0).abs() < 1e-12);
//! # Ok::<(), deltascat::Error>(())
//! ```

// `!(x > 0.0)` is deliberate throughout: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod closed_forms;
mod ddouble;
pub mod direct;
pub mod error;
pub mod linalg;
pub mod model;
pub mod transfer;
pub mod wavefunction;

pub use direct::AmplitudeSolution;
pub use error::{Error, Result};
pub use model::{DimensionlessSystem, PhysicalInput, PotentialArray};
pub use transfer::TransferMatrix;

pub use num_complex::Complex64;

/// Convenience alias used throughout for `Complex64::new(re, im)`.
#[inline]
pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
