//! Exact time evolution on the flip basis and the three diagnostics.
//!
//! * `P(t) = |<psi0|psi(t)>|^2`, survival of the initial product state;
//! * `R(t) = sum_k |psi_k|^2 (n - k) / n`, fraction of upper-tier spins still up;
//! * `S_e(t)`, entanglement entropy between the tiers in nats.
//!
//! Each flip-basis state is a product of one upper-tier and one lower-tier
//! collective state, and different `k` give orthogonal states on both sides,
//! so the flip-basis expansion is already a Schmidt decomposition: the reduced
//! density matrix of either tier is `diag(|psi_k|^2)`.

use num_complex::Complex64;

use crate::angmom;
use crate::models::{self, ModelSpec, ModelVariant, StateVector, TridiagonalHamiltonian};
use crate::{tridiag, Error, Result};

/// Eigenvalues ascending; `eigenvectors` row-major with column `i` paired to
/// eigenvalue `i`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Component `row` of eigenvector `col`.
    pub fn vector(&self, row: usize, col: usize) -> f64 {
        self.eigenvectors[row * self.dim() + col]
    }

    /// Largest `|eigenvalue|`.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    }
}

pub fn diagonalize(h: &TridiagonalHamiltonian) -> Result<SpectralDecomposition> {
    let (eigenvalues, eigenvectors) = tridiag::eigh(&h.diag, &h.offdiag)?;
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// Evolves one fixed initial state to arbitrary times.
#[derive(Debug, Clone)]
pub struct Propagator {
    decomp: SpectralDecomposition,
    /// `V^T psi0`.
    weights: Vec<Complex64>,
    psi0: StateVector,
}

impl Propagator {
    pub fn new(decomp: SpectralDecomposition, psi0: &StateVector) -> Result<Self> {
        let dim = decomp.dim();
        if psi0.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: psi0.dim() });
        }
        let weights = (0..dim).map(|i| (0..dim).map(|k| psi0.amplitudes[k] * decomp.vector(k, i)).sum()).collect();
        Ok(Self { decomp, weights, psi0: psi0.clone() })
    }

    /// Propagator for the standard initial state of a model A/B spec.
    pub fn for_model(spec: &ModelSpec) -> Result<Self> {
        let h = models::build_hamiltonian(spec)?;
        Self::new(diagonalize(&h)?, &models::initial_state(spec.n))
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomp
    }

    /// `psi(t) = V exp(-i Lambda t) V^T psi0`. At `t = 0` the initial state is
    /// returned as given.
    pub fn state_at(&self, t: f64) -> StateVector {
        if t == 0.0 {
            return self.psi0.clone();
        }
        let dim = self.decomp.dim();
        let phased: Vec<Complex64> = self
            .decomp
            .eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| w * Complex64::from_polar(1.0, -e * t))
            .collect();
        let amplitudes = self
            .decomp
            .eigenvectors
            .chunks_exact(dim)
            .map(|row| row.iter().zip(&phased).map(|(&v, &p)| p * v).sum())
            .collect();
        StateVector::new(amplitudes)
    }

    /// `H psi0` reconstructed from the spectral data.
    pub fn hamiltonian_on_initial(&self) -> Vec<Complex64> {
        let dim = self.decomp.dim();
        self.decomp
            .eigenvectors
            .chunks_exact(dim)
            .map(|row| {
                row.iter().zip(&self.decomp.eigenvalues).zip(&self.weights).map(|((&v, &e), &w)| w * (v * e)).sum()
            })
            .collect()
    }
}

pub fn propagate(decomp: &SpectralDecomposition, psi0: &StateVector, t: f64) -> Result<StateVector> {
    if t == 0.0 {
        if psi0.dim() != decomp.dim() {
            return Err(Error::DimensionMismatch { expected: decomp.dim(), actual: psi0.dim() });
        }
        return Ok(psi0.clone());
    }
    Ok(Propagator::new(decomp.clone(), psi0)?.state_at(t))
}

/// `|<psi0|psi_t>|^2`.
pub fn survival_probability(psi_t: &StateVector, psi0: &StateVector) -> f64 {
    psi0.amplitudes.iter().zip(&psi_t.amplitudes).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr()
}

/// Fraction of upper-tier spins still pointing up.
pub fn upper_tier_fraction(psi_t: &StateVector, n: usize) -> f64 {
    let n_f = n as f64;
    psi_t.amplitudes.iter().enumerate().map(|(k, a)| a.norm_sqr() * (n - k) as f64 / n_f).sum()
}

/// Von Neumann entropy of either tier, in nats.
pub fn entanglement_entropy(psi_t: &StateVector) -> f64 {
    shannon_entropy(psi_t.amplitudes.iter().map(|a| a.norm_sqr()))
}

fn shannon_entropy(probs: impl Iterator<Item = f64>) -> f64 {
    let s: f64 = probs.filter(|&p| p > 0.0).map(|p| -p * p.ln()).sum();
    s.max(0.0)
}

/// `P`, `R`, `S_e` at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub p: f64,
    pub r: f64,
    pub entropy: f64,
}

impl Observables {
    pub fn of(psi_t: &StateVector, n: usize) -> Self {
        Self {
            p: psi_t.amplitudes[0].norm_sqr(),
            r: upper_tier_fraction(psi_t, n),
            entropy: entanglement_entropy(psi_t),
        }
    }
}

/// Time evaluation of a model's observables: spectral for A/B, closed form
/// for C.
#[derive(Debug, Clone)]
pub enum Dynamics {
    Spectral { spec: ModelSpec, propagator: Propagator },
    Rotation { spec: ModelSpec },
}

impl Dynamics {
    pub fn new(spec: &ModelSpec) -> Result<Self> {
        Ok(match spec.variant {
            ModelVariant::A | ModelVariant::B => {
                Self::Spectral { spec: *spec, propagator: Propagator::for_model(spec)? }
            }
            ModelVariant::C => Self::Rotation { spec: *spec },
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        match self {
            Self::Spectral { spec, .. } | Self::Rotation { spec } => spec,
        }
    }

    pub fn observables(&self, t: f64) -> Observables {
        match self {
            Self::Spectral { spec, propagator } => Observables::of(&propagator.state_at(t), spec.n),
            Self::Rotation { spec } => {
                // Product state at all times.
                let o = models::model_c_observables(spec.n, spec.coupling, t);
                Observables { p: o.p, r: o.r, entropy: 0.0 }
            }
        }
    }

    /// Width of the spectrum, bounding how fast any observable can oscillate.
    pub fn bandwidth(&self) -> f64 {
        match self {
            Self::Spectral { propagator, .. } => {
                let e = &propagator.decomposition().eigenvalues;
                e[e.len() - 1] - e[0]
            }
            Self::Rotation { spec } => std::f64::consts::PI * spec.coupling * (spec.n * spec.n) as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub gnt: f64,
    pub p: f64,
    pub r: f64,
    pub entropy: f64,
}

#[derive(Debug, Clone)]
pub struct EvolutionTrace {
    pub spec: ModelSpec,
    pub rows: Vec<TraceRow>,
}

/// Samples `points` uniformly spaced times on `[0, t_max]` from a single
/// decomposition.
pub fn trace(spec: &ModelSpec, t_max: f64, points: usize) -> Result<EvolutionTrace> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidModel(format!("t_max must be positive, got {t_max}")));
    }
    if points < 2 {
        return Err(Error::InvalidModel(format!("need at least 2 points, got {points}")));
    }
    let dynamics = Dynamics::new(spec)?;
    let step = t_max / (points - 1) as f64;
    let row = |i: usize| {
        let t = if i + 1 == points { t_max } else { i as f64 * step };
        let o = dynamics.observables(t);
        TraceRow { t, gnt: spec.scaled_time(t), p: o.p, r: o.r, entropy: o.entropy }
    };
    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        (0..points).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows = (0..points).map(row).collect();
    Ok(EvolutionTrace { spec: *spec, rows })
}

/// Model A observables from Clebsch-Gordan sums: the initial state resolved
/// into total-spin eigenstates with energies `G j(j+1)`.
#[derive(Debug, Clone)]
pub struct ModelACgSums {
    n: usize,
    coupling: f64,
    /// `table[k][j]`, signed.
    table: Vec<Vec<f64>>,
}

impl ModelACgSums {
    pub fn new(n: usize, coupling: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("n must be at least 1".into()));
        }
        Ok(Self { n, coupling, table: angmom::tier_table(n as u32)? })
    }

    fn phases(&self, t: f64) -> Vec<Complex64> {
        (0..=self.n).map(|j| Complex64::from_polar(1.0, -self.coupling * (j * (j + 1)) as f64 * t)).collect()
    }

    /// Amplitude on flip state `k`: `sum_j e^{-iGj(j+1)t} C_k(j) C_0(j)`.
    fn amplitude(&self, k: usize, phases: &[Complex64]) -> Complex64 {
        self.table[k].iter().zip(&self.table[0]).zip(phases).map(|((&ck, &c0), &ph)| ph * (ck * c0)).sum()
    }

    pub fn survival(&self, t: f64) -> f64 {
        self.amplitude(0, &self.phases(t)).norm_sqr()
    }

    pub fn upper_fraction(&self, t: f64) -> f64 {
        let phases = self.phases(t);
        let flipped: f64 = (1..=self.n).map(|k| k as f64 / self.n as f64 * self.amplitude(k, &phases).norm_sqr()).sum();
        1.0 - flipped
    }
}

/// Model A survival probability as a single Clebsch-Gordan sum.
pub fn survival_cg_sum(n: usize, coupling: f64, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidModel("n must be at least 1".into()));
    }
    let column = angmom::CgColumn::new(n as i32, n as i32, n as i32, -(n as i32))?;
    let amp: Complex64 = (0..=n)
        .map(|j| {
            let c = column.get(2 * j as i32);
            Complex64::from_polar(c * c, -coupling * (j * (j + 1)) as f64 * t)
        })
        .sum();
    Ok(amp.norm_sqr())
}

/// Model A up-fraction as a double Clebsch-Gordan sum.
pub fn r_cg_sum(n: usize, coupling: f64, t: f64) -> Result<f64> {
    Ok(ModelACgSums::new(n, coupling)?.upper_fraction(t))
}
