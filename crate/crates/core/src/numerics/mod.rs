//! Numerical building blocks shared by the physics modules.

pub mod interp;
pub mod ode;
pub mod quadrature;

pub use interp::MonotoneCubic;
pub use ode::{Dopri5, OdeStats};
pub use quadrature::{gauss_legendre_composite, integrate_adaptive};
