//! Arbitrary-precision construction of Padé and Hermite–Padé polynomials from
//! the Taylor coefficients of an analytic germ, together with the root finder
//! and diagnostics that turn their zero sets into branch-point evidence.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and anything else touching the operating system live in the
//! companion `branchpoint` crate.
//!
//! Module map:
//!
//! * [`numerics`]: complex scalars (floating at a fixed number of decimal
//!   digits, or exact Gaussian rationals), polynomials and truncated power
//!   series.
//! * [`linalg`]: the homogeneous solver shared by every approximant.
//! * [`pade`]: diagonal Padé approximants `[n/n]`.
//! * [`hermite_pade`]: type I / type II polynomials for `[1,f,f²]` and
//!   `[1,f,f²,f³]`, discriminants and the determinantal constructions.
//! * [`roots`]: Aberth–Ehrlich root finding at working precision.
//! * [`vdp`]: Lindstedt–Poincaré expansion of the Van der Pol frequency, in
//!   exact rationals or at fixed binary precision.
//! * [`models`]: Taylor coefficients of the explicit test functions.
//! * [`potential`]: Green function of `[-1,1]`, arcsine statistics and
//!   convergence-rate probes.
//! * [`analysis`]: point clouds, discriminant-zero stabilization and the
//!   two-step resonance workflow.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod hermite_pade;
pub mod linalg;
pub mod models;
pub mod numerics;
pub mod pade;
pub mod potential;
pub mod roots;
pub mod vdp;

pub use error::{Error, Result};
pub use numerics::{GaussRational, MpComplex, Polynomial, PowerSeries, Precision, Scalar};
