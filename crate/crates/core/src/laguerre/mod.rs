//! Finite-`n` Laguerre ensemble with weight `e^{-4nx}`: wavefunctions,
//! Christoffel-Darboux kernel, two independent routes to the gap probability
//! `D_n(alpha)` and to its logarithmic derivative, exact normalizations and
//! the soft-edge limits.

mod basis;
mod edge;
mod exact;
mod gram;
mod orthonormal;

pub use basis::{cd_kernel, cd_kernel_in, wavefunction, LaguerreBasis, SignedLog};
pub use edge::{edge_alpha, edge_scaled_gap, edge_scaled_gap_default, plancherel_rotach_check, plancherel_rotach_unsigned};
pub use exact::{exact_products, ln_factorials, ExactProducts, ExactProductsReport};
pub use gram::{
    default_nodes, dlog_gap_rank1, gap_log_det_gram, gap_log_det_gram_checked, GramEstimate, GramSystem, RuleSource,
};
pub use orthonormal::{
    dlog_gap_cd, dlog_gap_cd_dd, gap_log_det_theta, gap_log_det_theta_dd, orthonormal_on_interval, OrthonormalBasis,
    MAX_N as THETA_MAX_N,
};
