//! Evolution speed of two-tier coupled-spin models.
//!
//! Spins are split into an upper tier of `n` spins (initially all up) and a
//! lower tier of `n` spins (initially all down). Under the pair Hamiltonians
//! studied here the dynamics never leave the `n + 1` states labelled by the
//! number `k` of upper-tier spins that have flipped, so every quantity of
//! interest reduces to a symmetric tridiagonal problem:
//!
//! * [`models`]: Hamiltonians A (all pairs coupled), B (only inter-tier pairs)
//!   and the analytic single-spin rotation C.
//! * [`evolution`]: exact spectral propagation and the observables `P(t)`,
//!   `R(t)`, `S_e(t)`, plus Clebsch-Gordan sums for model A.
//! * [`bounds`]: quantum speed limit times and their saturation curves.
//! * [`analysis`]: threshold crossings, scaling diagnostics, ground-state fits.
//! * [`angmom`]: Clebsch-Gordan coefficients for spins up to several hundred.
//! * [`oracle`]: brute-force checks in the full `2^(2n)` register.

pub mod analysis;
pub mod angmom;
pub mod bounds;
mod error;
pub mod evolution;
pub mod models;
mod numeric;
pub mod oracle;
pub mod tridiag;

pub use error::{Error, Result};
