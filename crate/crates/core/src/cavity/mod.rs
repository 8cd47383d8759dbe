//! Truncated multimode cavity with a moving wall.
//!
//! Each instantaneous eigenmode F_n(x; L(t)) carries a canonical pair
//! (q_n, p_n). The wall velocity couples the modes through the
//! antisymmetric matrix m and the ratio λ = L̇/L:
//!
//! ```text
//! q̇ = p + λ m q,    ṗ = −Ω²(t) q + λ m p
//! ```
//!
//! Starting from the vacuum, the linear flow fixes every second moment and
//! hence every photon number.

mod averaged;
mod coupling;
mod evolve;
mod geometry;
mod parity;
mod two_mode;

pub use averaged::evolve_averaged;
pub use coupling::{coupling_matrix_1d, CouplingMatrix};
pub use evolve::{
    check_truncation, evolve_modes, evolve_modes_at, evolve_system, stroboscopic_times, uniform_times, Evolution, ModeSystem,
    PhotonRecord, TruncationReport, DEFAULT_SAMPLES,
};
pub use geometry::{BoundaryTrajectory, CavityGeometry1D, LengthProfile};
pub use parity::{even_mode_suppression, ParitySplit, EVEN_SHARE_LIMIT};
pub use two_mode::{log_linear_rate, two_mode_coupled_growth, TwoModeGrowth};
