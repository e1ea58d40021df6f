//! Gamma-type functions, zeta functions, quadrature and the analytic
//! kernels built on them.

mod bump;
mod contour;
mod gamma;
mod incgamma;
mod kernel;
pub mod quadrature;
mod zeta;

pub use bump::{mellin_hat, SmoothBump};
pub use contour::{line_nodes, vertical_line_integral, ContourResult, KernelConfig};
pub use gamma::{gamma, gamma_delta, gamma_real, ln_gamma};
pub use incgamma::{upper_incomplete_gamma, upper_incomplete_gamma_complex};
pub use kernel::{WKernel, WKernelGrid, GRID_HI, GRID_LO, GRID_NODES};
pub use zeta::{dirichlet_beta, dirichlet_eta, expm1, exprel, zeta, zeta_integer, zeta_k};
