//! Bound states of the exponentially confining potential well
//!
//! `V(x) = (lambda^2 / 2) (e^(-2 lambda x) / 4 - A- e^(-lambda x) + A+ e^(lambda x))`.
//!
//! Two independent routes to the spectrum are provided:
//!
//! * [`tra`]: the finite Bessel basis in which the wave operator is
//!   tridiagonal. Its size is capped by `A-`, giving the lowest few states.
//! * [`refspec`]: diagonalization in a large orthonormal Laguerre basis,
//!   used as the accurate reference.
//!
//! [`polynomials`] and [`eigen`] hold the supporting numerics.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigen;
pub mod error;
pub mod polynomials;
pub mod quadrature;
pub mod refspec;
pub mod tra;

pub use error::{Error, Result};
pub use tra::{Method, PotentialParams, Spectrum, WavefunctionGrid};
