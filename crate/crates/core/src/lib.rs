//! Numerical toolkit for the (κ,a)-generalized Fourier transform on the line:
//! special functions, kernels, polynomial decompositions, quadrature and
//! integral transforms, plus the verification suites that exercise them.

#![forbid(unsafe_code)]

pub mod error;
pub mod genpoly;
pub mod kernels;
pub mod quad;
pub mod specfun;
pub mod suites;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
