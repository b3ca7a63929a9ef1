//! The cubic Yamabe equation `Δu + Λu³ = 0` on the Schwarzschild interior.
//!
//! With `u = 3(2Λ)^{-1/2} v` and `v = r^{-3/2} w` the solution regular at
//! the origin is a power series in `r`, computed here in exact rationals,
//! continued numerically, and used to build a conformal deformation that
//! pushes the singularity to infinite proper time.

pub mod radius;
pub mod series;
pub mod shoot;

pub use radius::{binomial_coefficients, radius_estimate, RadiusEstimate};
pub use series::{printed_w2, w_equation_residual, w_recurrence, RationalSeries, ResidualOrder};
pub use shoot::{
    find_rho, full_solution_check, integrate_v, rho_tilde_closed, u_lambda, v_deformation, vtilde, vtilde_compare,
    CriticalPoint, FullSolutionCheck, ODESolution, VDeformation,
};
