//! Exact arithmetic for the generalized Dedekind sums attached to weight-zero
//! newform Eisenstein series, together with an independent floating-point
//! Fourier-series oracle.
//!
//! The library is organized around the objects involved:
//!
//! - [`cyclotomic`]: exact arithmetic in ℚ and in the cyclotomic fields ℚ(ζ_m),
//!   the value domain of every exact computation here.
//! - [`characters`]: Dirichlet characters with exact root-of-unity values,
//!   Gauss sums, and the admissible character pairs (χ₁, χ₂) with
//!   χ₁χ₂(−1) = 1 that index the sums.
//! - [`bernoulli`]: the sawtooth B₁, the twisted Bernoulli function B_{1,χ},
//!   and the cusp-limit closed form of the theta series.
//! - [`modgroup`]: integer 2×2 matrices in Γ₀(N) — validation, bottom-row
//!   completion, Fricke conjugation γ ↦ γ′, seeded sampling.
//! - [`dedekind`]: the exact sum S_{χ₁,χ₂}(γ) and its structural laws
//!   (cocycle, reciprocity, Fricke evaluation, bottom-row dependence).
//! - [`oracle`]: double-precision evaluation of the Eisenstein series f and
//!   E*, the cusp-limit φ, L(1,χ), and the coefficient identities — an
//!   independent channel every exact value is checked against.
//! - [`campaign`]: the verification campaigns behind `dedesum verify`.
//!
//! With the default `parallel` feature the campaign drivers and the large
//! double sums fan out over a rayon pool; without it everything runs on the
//! calling thread. Results are bit-identical either way: exact partial sums
//! are combined associatively and merged in input order.

pub mod bernoulli;
pub mod campaign;
pub mod characters;
pub mod cyclotomic;
pub mod dedekind;
mod error;
pub mod modgroup;
pub mod oracle;
pub mod rational;

pub use characters::{CharacterPair, DirichletCharacter};
pub use cyclotomic::Cyclotomic;
pub use dedekind::DedekindSumValue;
pub use error::{Error, Result};
pub use modgroup::GammaMatrix;
pub use rational::Rational;
