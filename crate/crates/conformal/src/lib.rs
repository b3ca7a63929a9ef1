//! Conformal geometry of densities and the mass models built on it.

pub mod banded;
pub mod constants;
pub mod curvature;
pub mod density;
pub mod diff;
pub mod duffing_asymptotics;
pub mod error;
pub mod experiments;
pub mod friedman;
pub mod grid;
pub mod metric;
pub mod models;
pub mod ode;
pub mod quadrature;
pub mod report;
pub mod schwarzschild_interior;
pub mod yamabe_ode;
pub mod yamabe_action;

pub use error::{Error, Result};
