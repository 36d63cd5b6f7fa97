//! Scattering data for the one-dimensional hyperbolic Pöschl-Teller potential
//! V(x) = −λ(λ−1)/cosh²x (α = 1, ħ²/2m = 1) in all three regimes: well
//! (λ > 1), low barrier (½ ≤ λ < 1) and high barrier (λ = ½ + iℓ).
//!
//! The crate computes the transfer and scattering matrices, transmission and
//! reflection coefficients, the full analytic pole structure of S(k) with
//! Newton refinement, the exact wavefunction family P(sinh x)(cosh x)^μ with
//! its ladder operators and su(1,1) algebra, and supersymmetric partner
//! potentials factorized through antibound and Gamow eigenfunctions.

pub mod cli;
pub mod complexfn;
pub mod error;
pub mod numerics;
pub mod poles;
pub mod scattering;
pub mod states;
pub mod susy;
pub mod table;

pub use error::{Error, Result};
pub use num_complex::Complex64;
