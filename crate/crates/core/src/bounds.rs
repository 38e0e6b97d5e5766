//! Quantum speed limit for reaching overlap `epsilon` with the initial state.
//!
//! `tau >= max(pi alpha(eps) / (2 (E - E0)), pi beta(eps) / (2 dE))` with
//! `beta(eps) = 2 arccos(sqrt(eps)) / pi` and the approximation
//! `alpha(eps) = beta(eps)^2`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::models::SpeedLimitInputs;
use crate::{Error, Result};

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain { name, value })
    }
}

pub fn beta(epsilon: f64) -> Result<f64> {
    check_unit("epsilon", epsilon)?;
    Ok(2.0 * epsilon.sqrt().acos() / PI)
}

pub fn alpha(epsilon: f64) -> Result<f64> {
    Ok(beta(epsilon)?.powi(2))
}

/// Which term of the bound is larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Mean energy above the ground state (Margolus-Levitin).
    MeanEnergy,
    /// Energy spread (Mandelstam-Tamm).
    Spread,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::MeanEnergy => "MeanEnergy",
            Self::Spread => "Spread",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedLimitReport {
    pub mean_energy: f64,
    pub spread: f64,
    pub ground_energy: f64,
    pub tau_mean_energy: f64,
    pub tau_spread: f64,
    pub tau_limit: f64,
    pub dominant: BoundKind,
    pub epsilon: f64,
}

impl SpeedLimitReport {
    pub fn tau_for(&self, kind: BoundKind) -> f64 {
        match kind {
            BoundKind::MeanEnergy => self.tau_mean_energy,
            BoundKind::Spread => self.tau_spread,
        }
    }
}

/// Both candidate times and their maximum. Exact ties are reported as
/// [`BoundKind::MeanEnergy`]. A term with zero energy resource gives an
/// infinite time.
pub fn speed_limit(stats: &SpeedLimitInputs, epsilon: f64) -> Result<SpeedLimitReport> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain { name: "epsilon", value: epsilon });
    }
    let excess = stats.mean_energy - stats.ground_energy;
    if excess <= 0.0 && stats.spread <= 0.0 {
        return Err(Error::Degenerate("E = E0 and dE = 0: the state does not evolve".into()));
    }
    let time = |resource: f64, factor: f64| {
        if resource > 0.0 {
            PI * factor / (2.0 * resource)
        } else {
            f64::INFINITY
        }
    };
    let tau_mean_energy = time(excess, alpha(epsilon)?);
    let tau_spread = time(stats.spread, beta(epsilon)?);
    let (tau_limit, dominant) = if tau_mean_energy >= tau_spread {
        (tau_mean_energy, BoundKind::MeanEnergy)
    } else {
        (tau_spread, BoundKind::Spread)
    };
    Ok(SpeedLimitReport {
        mean_energy: stats.mean_energy,
        spread: stats.spread,
        ground_energy: stats.ground_energy,
        tau_mean_energy,
        tau_spread,
        tau_limit,
        dominant,
        epsilon,
    })
}

/// The overlap `eps(t)` of an evolution that meets one term of the bound with
/// equality, clamped to 0 past orthogonality.
pub fn saturation_epsilon(stats: &SpeedLimitInputs, kind: BoundKind, t: f64) -> f64 {
    // Solve t = pi b / (2 resource) for b = beta(eps), then eps = cos^2(pi b / 2).
    let b = match kind {
        BoundKind::Spread => 2.0 * stats.spread * t / PI,
        BoundKind::MeanEnergy => (2.0 * (stats.mean_energy - stats.ground_energy) * t / PI).max(0.0).sqrt(),
    };
    if b >= 1.0 {
        0.0
    } else {
        (FRAC_PI_2 * b).cos().powi(2)
    }
}
