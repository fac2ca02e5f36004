//! Numerical harmonic analysis of Hardy-class functions: Hermite and
//! Laguerre expansions, Fourier, Hankel, Bargmann and Fourier–Wigner
//! transforms, and the decay of Hermite projection norms.

pub mod analysis;
pub mod decay;
pub mod error;
pub mod quadrature;
pub mod special;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};

/// Complex double.
pub type C64 = num_complex::Complex64;
