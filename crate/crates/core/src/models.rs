//! Model definitions and their restriction to the flip basis.
//!
//! Flip-basis state `k` (0..=n) has `k` upper-tier spins flipped down and `k`
//! lower-tier spins flipped up, each tier in its fully symmetric collective
//! state. In the notation `|K3, L3>` of the two tier spins it is
//! `|n/2 - k, -n/2 + k>`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::{tridiag, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelVariant {
    /// Every pair coupled with the same strength.
    A,
    /// Only upper-lower pairs coupled.
    B,
    /// Independent single-spin rotations, `(pi/2) G N sum sigma_x`.
    C,
}

impl std::str::FromStr for ModelVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "C" | "c" => Ok(Self::C),
            other => Err(Error::InvalidModel(format!("unknown model {other:?}"))),
        }
    }
}

impl std::fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
        };
        f.write_str(s)
    }
}

/// A model instance. `n` is the tier size for A and B (total spins `2n`) and
/// the total spin count for C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub variant: ModelVariant,
    pub n: usize,
    pub coupling: f64,
}

impl ModelSpec {
    pub fn new(variant: ModelVariant, n: usize, coupling: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("n must be at least 1".into()));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(Error::InvalidModel(format!("coupling must be positive, got {coupling}")));
        }
        Ok(Self { variant, n, coupling })
    }

    /// Dimensionless time `G n t`.
    pub fn scaled_time(&self, t: f64) -> f64 {
        self.coupling * self.n as f64 * t
    }

    /// Inverse of [`ModelSpec::scaled_time`].
    pub fn time_from_scaled(&self, gnt: f64) -> f64 {
        gnt / (self.coupling * self.n as f64)
    }
}

/// Real symmetric tridiagonal Hamiltonian on the flip basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalHamiltonian {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub n: usize,
    pub coupling: f64,
}

impl TridiagonalHamiltonian {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `H x` for a complex vector.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        (0..d)
            .map(|k| {
                let mut y = x[k] * self.diag[k];
                if k > 0 {
                    y += x[k - 1] * self.offdiag[k - 1];
                }
                if k + 1 < d {
                    y += x[k + 1] * self.offdiag[k];
                }
                y
            })
            .collect()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Largest absolute row sum, a cheap norm bound.
    pub fn norm_bound(&self) -> f64 {
        let (lo, hi) = tridiag::gershgorin_bounds(&self.diag, &self.offdiag);
        lo.abs().max(hi.abs())
    }

    /// Ground-state energy by Sturm bisection.
    pub fn ground_energy(&self) -> f64 {
        tridiag::lowest_eigenvalue(&self.diag, &self.offdiag)
    }
}

/// Restricted Hamiltonian for model A or B.
///
/// Both share the inter-tier hopping `<k+1| K- L+ |k> = (n - k)(k + 1)`.
/// Model A adds the diagonal of `G (J^2 - J3^2)` on the `J3 = 0` sector,
/// `2 (n/2)(n/2 + 1) + 2 K3 L3`.
pub fn build_hamiltonian(spec: &ModelSpec) -> Result<TridiagonalHamiltonian> {
    let n = spec.n;
    let g = spec.coupling;
    let offdiag = (0..n).map(|k| g * ((n - k) * (k + 1)) as f64).collect();
    let diag = match spec.variant {
        ModelVariant::A => {
            let half = n as f64 / 2.0;
            (0..=n)
                .map(|k| {
                    let k3 = half - k as f64;
                    g * (2.0 * half * (half + 1.0) - 2.0 * k3 * k3)
                })
                .collect()
        }
        ModelVariant::B => vec![0.0; n + 1],
        ModelVariant::C => return Err(Error::UnsupportedVariant(ModelVariant::C)),
    };
    Ok(TridiagonalHamiltonian { diag, offdiag, n, coupling: g })
}

/// Unit-norm amplitudes over the flip basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Occupation probabilities `|psi_k|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Upper tier all up, lower tier all down: `psi_k = delta_{k0}`.
pub fn initial_state(n: usize) -> StateVector {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n + 1];
    amplitudes[0] = Complex64::new(1.0, 0.0);
    StateVector { amplitudes }
}

/// Energy statistics of the initial state entering the speed limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedLimitInputs {
    /// `<H>`.
    pub mean_energy: f64,
    /// `sqrt(<H^2> - <H>^2)`.
    pub spread: f64,
    /// Ground-state energy.
    pub ground_energy: f64,
}

/// Energy statistics of the initial state.
///
/// From the matrix: `H psi0 = diag[0] |0> + offdiag[0] |1>`, so
/// `<H> = diag[0]` and the spread is `offdiag[0] = nG` for both A and B.
/// Model A's spectrum `G j(j+1)` starts at 0; model B's ground energy is found
/// numerically.
pub fn energy_stats(spec: &ModelSpec) -> Result<SpeedLimitInputs> {
    let n = spec.n as f64;
    let g = spec.coupling;
    match spec.variant {
        ModelVariant::A => Ok(SpeedLimitInputs { mean_energy: n * g, spread: n * g, ground_energy: 0.0 }),
        ModelVariant::B => {
            let h = build_hamiltonian(spec)?;
            let e0 = h.ground_energy();
            if !e0.is_finite() {
                return Err(Error::NoConvergence { index: 0, iterations: 0 });
            }
            Ok(SpeedLimitInputs { mean_energy: 0.0, spread: n * g, ground_energy: e0 })
        }
        ModelVariant::C => Ok(SpeedLimitInputs {
            mean_energy: 0.0,
            spread: FRAC_PI_2 * g * n.powf(1.5),
            ground_energy: -FRAC_PI_2 * g * n * n,
        }),
    }
}

/// Survival probability and up-fraction for model C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelCObservables {
    pub p: f64,
    pub r: f64,
}

/// Each of the `spins` spins precesses independently at `(pi/2) G N`, so a
/// single spin stays up with probability `cos^2((pi/2) G N t)`.
pub fn model_c_observables(spins: usize, coupling: f64, t: f64) -> ModelCObservables {
    let n = spins as f64;
    let stay = (FRAC_PI_2 * coupling * n * t).cos().powi(2);
    ModelCObservables { p: stay.powf(n), r: stay }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: ModelVariant, n: usize) -> ModelSpec {
        ModelSpec::new(v, n, 1.0).unwrap()
    }

    #[test]
    fn model_b_n2() {
        let h = build_hamiltonian(&spec(ModelVariant::B, 2)).unwrap();
        assert_eq!(h.diag, vec![0.0, 0.0, 0.0]);
        assert_eq!(h.offdiag, vec![2.0, 2.0]);
    }

    #[test]
    fn model_a_n2_and_n1() {
        let h = build_hamiltonian(&spec(ModelVariant::A, 2)).unwrap();
        assert_eq!(h.diag, vec![2.0, 4.0, 2.0]);
        assert_eq!(h.offdiag, vec![2.0, 2.0]);
        let (w, _) = tridiag::eigh(&h.diag, &h.offdiag).unwrap();
        for (x, want) in w.iter().zip([0.0, 2.0, 6.0]) {
            assert!((x - want).abs() < 1e-13);
        }

        let h = build_hamiltonian(&spec(ModelVariant::A, 1)).unwrap();
        assert_eq!(h.diag, vec![1.0, 1.0]);
        assert_eq!(h.offdiag, vec![1.0]);
    }

    #[test]
    fn model_a_trace_identity() {
        for n in [1usize, 2, 7, 64, 255] {
            let h = build_hamiltonian(&spec(ModelVariant::A, n)).unwrap();
            let want = (n * (n + 1) * (n + 2)) as f64 / 3.0;
            let from_spectrum: f64 = (0..=n).map(|j| (j * (j + 1)) as f64).sum();
            assert_eq!(want, from_spectrum);
            assert!((h.trace() - want).abs() <= 1e-10 * want);
        }
    }

    #[test]
    fn coupling_scales_matrix() {
        let h1 = build_hamiltonian(&spec(ModelVariant::A, 5)).unwrap();
        let h3 = build_hamiltonian(&ModelSpec::new(ModelVariant::A, 5, 3.0).unwrap()).unwrap();
        for (a, b) in h1.diag.iter().zip(&h3.diag) {
            assert!((3.0 * a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn model_c_has_no_matrix() {
        assert_eq!(build_hamiltonian(&spec(ModelVariant::C, 4)), Err(Error::UnsupportedVariant(ModelVariant::C)));
    }

    #[test]
    fn spec_validation() {
        assert!(ModelSpec::new(ModelVariant::A, 0, 1.0).is_err());
        assert!(ModelSpec::new(ModelVariant::A, 3, 0.0).is_err());
        assert!(ModelSpec::new(ModelVariant::A, 3, f64::NAN).is_err());
        assert_eq!("b".parse::<ModelVariant>().unwrap(), ModelVariant::B);
        assert!("D".parse::<ModelVariant>().is_err());
    }

    #[test]
    fn initial_states() {
        let s = initial_state(1);
        assert_eq!(s.amplitudes, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let s = initial_state(4);
        assert_eq!(s.dim(), 5);
        assert_eq!(s.probabilities(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn energy_stats_match_matrix_moments() {
        for v in [ModelVariant::A, ModelVariant::B] {
            for n in [1usize, 4, 9, 30] {
                let s = spec(v, n);
                let h = build_hamiltonian(&s).unwrap();
                let hpsi = h.apply(&initial_state(n).amplitudes);
                let mean = hpsi[0].re;
                let second: f64 = hpsi.iter().map(|x| x.norm_sqr()).sum();
                let stats = energy_stats(&s).unwrap();
                assert!((stats.mean_energy - mean).abs() < 1e-12);
                assert!((stats.spread - (second - mean * mean).sqrt()).abs() < 1e-9);
                let (w, _) = tridiag::eigh(&h.diag, &h.offdiag).unwrap();
                assert!((stats.ground_energy - w[0]).abs() <= 1e-10 * h.norm_bound());
            }
        }
        let a4 = energy_stats(&spec(ModelVariant::A, 4)).unwrap();
        assert_eq!((a4.mean_energy, a4.ground_energy), (4.0, 0.0));
    }

    #[test]
    fn model_b_n1_ground_energy() {
        let stats = energy_stats(&spec(ModelVariant::B, 1)).unwrap();
        assert!((stats.ground_energy + 1.0).abs() < 1e-14);
    }

    #[test]
    fn model_c_stats_and_observables() {
        let stats = energy_stats(&spec(ModelVariant::C, 9)).unwrap();
        assert!((stats.spread - FRAC_PI_2 * 27.0).abs() < 1e-12);
        assert!((stats.ground_energy + FRAC_PI_2 * 81.0).abs() < 1e-12);

        let o = model_c_observables(5, 1.0, 0.0);
        assert_eq!((o.p, o.r), (1.0, 1.0));
        let o = model_c_observables(5, 2.0, 1.0 / 10.0);
        assert!(o.r < 1e-30);
        let o = model_c_observables(2, 1.0, 0.25);
        assert!((o.r - 0.5).abs() < 1e-15);
        assert!((o.p - 0.25).abs() < 1e-15);
    }
}
