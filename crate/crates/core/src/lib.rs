//! Exact-index computations with the Weyl form of the canonical commutation
//! relations `U_a V_b = e^{-iab} V_b U_a`.
//!
//! * [`weyl_algebra`]: normal-ordered *-algebra over rational parameters.
//! * [`states`]: position, momentum and vacuum states; Gram-matrix positivity.
//! * [`gns`]: GNS vectors, canonical reductions, regularity and witnesses.
//! * [`position_rep`]: the nonregular position/momentum representations on
//!   finitely supported vectors of `l₂(ℝ)`.
//! * [`almost_periodic`]: trigonometric polynomials, invariant mean, Haar
//!   Fourier data on the Bohr compactification.
//! * [`schrodinger_oracle`]: grid quadrature in the Schrödinger representation.
//!
//! Parameters are exact rationals, so every support question (`b = 0`?) is
//! decided exactly; coefficients and phases are `f64`.

pub mod almost_periodic;
pub mod error;
pub mod gns;
pub mod position_rep;
pub mod rational;
pub mod sampling;
pub mod schrodinger_oracle;
pub mod serial;
pub mod states;
pub mod verify;
pub mod weyl_algebra;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use rational::Rational;
pub use states::StateFunctional;
pub use weyl_algebra::{WeylElement, WeylIndex};
