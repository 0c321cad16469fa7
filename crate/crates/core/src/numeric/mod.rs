//! Numerical building blocks: forward-mode dual numbers, an adaptive
//! Dormand–Prince integrator, adaptive Gauss–Kronrod quadrature and
//! one-dimensional minimization / root bracketing.

pub mod dual;
pub mod minimize;
pub mod ode;
pub mod quadrature;

pub use dual::{Dual, Real};
