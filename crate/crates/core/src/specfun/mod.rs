//! Special functions and constants.

mod airy;
mod constants;
mod moments;
mod quadrature;

pub use airy::{airy_ai_pair, airy_ai_pair_dd, GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS};
pub use constants::{chi_constant, chi_dd, zeta_prime_minus_one, zeta_prime_two, Constants, EULER_GAMMA, METHOD};
pub use moments::{exp_moments, exp_moments_in, Precision};
pub use quadrature::{gauss_legendre, gauss_legendre_dd, QuadratureRule};
