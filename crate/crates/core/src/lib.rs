//! Airy-kernel gap determinants and their finite-n Laguerre approximants.
//!
//! * [`fredholm`]: Nystrom evaluation of `ln det(I - K_s)` for the Airy kernel
//!   on `(-s, inf)`.
//! * [`painleve`]: the Hastings-McLeod solution of Painleve II and the
//!   Tracy-Widom log-CDF built from it.
//! * [`laguerre`]: gap probabilities `D_n(alpha)` of the scaled Laguerre
//!   unitary ensemble by several independent routes, with their logarithmic
//!   derivatives and edge-scaling limits.
//! * [`asymptotics`]: closed-form large-parameter expansions and residual fits.
//! * [`verify`]: the acceptance criteria as runnable checks.
//!
//! Extended precision ([`extprec`]) is used where cancellation or the
//! instability of the Painleve shooting defeats native arithmetic.

pub mod asymptotics;
pub mod error;
pub mod extprec;
pub mod fredholm;
pub mod laguerre;
pub mod linalg;
pub mod painleve;
pub mod par;
pub mod real;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use extprec::DDouble;
pub use real::Real;
