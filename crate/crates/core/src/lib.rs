//! Photon creation from vacuum in cavities with time-dependent parameters.
//!
//! The crate covers the single-mode Bogoliubov treatment of a
//! time-dependent oscillator ([`oscillator`]), closed-form parametric
//! resonance laws ([`resonance`]), the multimode one-dimensional cavity
//! ([`cavity`]), the photo-excited semiconductor mirror ([`mirror`]),
//! photon-number distributions ([`statistics`]) and order-of-magnitude
//! laboratory estimates ([`feasibility`]).

pub mod constants;
pub mod error;
pub mod numerics;
pub mod oscillator;
pub mod resonance;
pub mod cavity;
pub mod mirror;
pub mod statistics;
pub mod feasibility;

pub use error::{Error, Result};
