//! Exact characteristic-class calculus for linear-dependency and degeneracy
//! loci of real vector bundles.
//!
//! The crate is organised bottom-up:
//!
//! * [`graded`]: sparse graded polynomial algebra over Z₂ and Z with ring
//!   presentations (free truncated rings, Z₂[a]/(a^{n+1}), projective
//!   bundles).
//! * [`char_calc`]: Schur determinants, tensor-product top classes,
//!   projective-bundle pushforward and Sq¹.
//! * [`torsion`]: the involutions R, P and ψ on the symmetric group, the index
//!   set 𝒥, the torsion polynomial T^(ℓ)_r and the integral class Q^(ℓ)_r.
//! * [`obstruction`]: concrete obstruction statements on RP^n and for bundle
//!   maps and projections.
//! * [`kernel_lab`]: quadrature checks of mapping degrees and the kernel
//!   identities.

pub mod char_calc;
pub mod error;
pub mod graded;
pub mod kernel_lab;
pub mod obstruction;
pub mod torsion;

pub use error::{Error, Result};
pub use graded::{Coefficients, Generator, GradedPoly, Monomial, RingPresentation, TotalClass};
