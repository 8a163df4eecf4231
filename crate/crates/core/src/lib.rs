//! Cesàro-type operators acting on truncated Taylor series.
//!
//! The crate is a small numerical laboratory for the classical Cesàro
//! operator `C`, the generalized operators `C_t` (with the Hardy operator
//! `C_0` and `C_1 = C` at the ends), the inverse `C^{-1}`, and the
//! composition semigroup `S_t` built from the Möbius maps
//! `φ_t(z) = e^{-t} z / ((e^{-t} - 1) z + 1)`.
//!
//! Every operator here is lower triangular in the monomial basis, so a
//! series truncated at degree `N` is mapped to the exact first `N + 1`
//! coefficients of the image. Norms are estimated by sampling the
//! maximum modulus on circles and weighting it radially, either with the
//! standard weights `(1 - r)^γ` or the logarithmic weights
//! `v_k(r) = (-log(1 - r))^{-k}` (equal to 1 for `r ≤ 1 - 1/e`).
//!
//! Modules:
//!
//! - [`series`]: the [`Poly`] type and exact-truncation arithmetic.
//! - [`weights`]: radial weights, max-modulus sweeps, growth fits.
//! - [`operators`]: `C`, `C_t`, `C^{-1}`, `S_t` and finite sections.
//! - [`resolvent`]: `R(λ, C) h` by recurrence, branch-cut integral and
//!   semigroup integral.
//! - [`ergodic`]: eigenvectors, iterates, Cesàro means, spectral sweeps.
//! - [`corpus`]: the seeded random and structured test functions.
//! - [`verify`]: the invariant suite behind `cesaro-lab verify`.
//! - [`cli`]: experiment configuration and CSV/JSON emission.
//!
//! ```
//! use cesaro_lab::{operators::cesaro_apply, Poly};
//!
//! let one = Poly::constant(1.0.into(), 4);
//! let image = cesaro_apply(&one);
//! assert!((image.coeff(3).re - 0.25).abs() < 1e-15);
//! ```

pub mod cli;
pub mod corpus;
pub mod ergodic;
mod error;
pub mod operators;
pub mod quadrature;
pub mod resolvent;
pub mod series;
pub mod verify;
pub mod weights;

pub use error::{LabError, Result};
pub use num_complex::Complex64;
pub use series::Poly;
pub use weights::{NormEstimate, WeightSpec};
