//! Brute-force ground truth in the full `2^(2n)` register.
//!
//! Bit `i` of a basis index is spin `i`, set meaning up. Bits `0..n` form the
//! upper tier and bits `n..2n` the lower tier; the initial state has exactly
//! the upper bits set. Nothing here reuses the flip-basis machinery: the
//! Hamiltonian is assembled pair by pair, diagonalized densely with
//! `nalgebra`, and the entropy comes from an explicit partial trace.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::angmom::CgArgs;
use crate::evolution::{EvolutionTrace, TraceRow};
use crate::models::{ModelSpec, ModelVariant};
use crate::{Error, Result};

/// Largest tier size for which the full Hamiltonian is built.
pub const MAX_FULL_N: usize = 6;
/// Largest doubled quantum number accepted by the exact backend.
pub const MAX_EXACT_DOUBLED: i32 = 80;

#[derive(Debug, Clone)]
pub struct FullRegisterState {
    pub amplitudes: DVector<Complex64>,
    pub n: usize,
}

impl FullRegisterState {
    /// Upper tier up, lower tier down.
    pub fn initial(n: usize) -> Self {
        let mut amplitudes = DVector::zeros(1 << (2 * n));
        amplitudes[upper_mask(n)] = Complex64::new(1.0, 0.0);
        Self { amplitudes, n }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|<other|self>|^2`.
    pub fn overlap_sqr(&self, other: &Self) -> f64 {
        self.amplitudes.dotc(&other.amplitudes).norm_sqr()
    }

    /// `<Q2>`: the fraction of upper-tier spins that are up.
    pub fn upper_fraction(&self) -> f64 {
        let mask = upper_mask(self.n);
        self.amplitudes.iter().enumerate().map(|(s, a)| a.norm_sqr() * (s & mask).count_ones() as f64).sum::<f64>()
            / self.n as f64
    }

    /// Reduced density matrix of the lower tier, tracing out the upper bits.
    pub fn lower_tier_density(&self) -> DMatrix<Complex64> {
        let side = 1 << self.n;
        // Row = lower bits, column = upper bits.
        let m = DMatrix::from_fn(side, side, |lower, upper| self.amplitudes[(lower << self.n) | upper]);
        &m * m.adjoint()
    }

    /// Von Neumann entropy of the lower tier in nats.
    pub fn entanglement_entropy(&self) -> f64 {
        let rho = self.lower_tier_density();
        let eig = SymmetricEigen::new(rho);
        eig.eigenvalues.iter().filter(|&&p| p > 1e-300).map(|&p| -p * p.ln()).sum::<f64>().max(0.0)
    }
}

fn upper_mask(n: usize) -> usize {
    (1 << n) - 1
}

fn coupled(variant: ModelVariant, n: usize, i: usize, j: usize) -> bool {
    match variant {
        ModelVariant::A => true,
        ModelVariant::B => (i < n) != (j < n),
        ModelVariant::C => false,
    }
}

/// `G sum_{i<j coupled} (s+_i s-_j + s-_i s+_j)` in the computational basis.
///
/// For model A this is the symmetric Hamiltonian minus the constant `n G`
/// carried by the self-pair terms of `(J+J- + J-J+)/2`; it is traceless.
pub fn build_full_hamiltonian(spec: &ModelSpec) -> Result<DMatrix<f64>> {
    let n = spec.n;
    if spec.variant == ModelVariant::C {
        return Err(Error::UnsupportedVariant(ModelVariant::C));
    }
    if n > MAX_FULL_N {
        return Err(Error::TooLarge(format!("full register needs n <= {MAX_FULL_N}, got {n}")));
    }
    let spins = 2 * n;
    let dim = 1 << spins;
    let mut h = DMatrix::zeros(dim, dim);
    for s in 0..dim {
        for i in 0..spins {
            for j in i + 1..spins {
                if !coupled(spec.variant, n, i, j) {
                    continue;
                }
                // The exchange term swaps antiparallel neighbours with unit amplitude.
                if ((s >> i) & 1) != ((s >> j) & 1) {
                    h[(s ^ (1 << i) ^ (1 << j), s)] += spec.coupling;
                }
            }
        }
    }
    Ok(h)
}

/// Constant by which the pair Hamiltonian sits below the flip-basis one.
pub fn energy_offset(spec: &ModelSpec) -> f64 {
    match spec.variant {
        ModelVariant::A => spec.n as f64 * spec.coupling,
        _ => 0.0,
    }
}

/// `sqrt(<H^2> - <H>^2)` in the initial product state.
pub fn energy_spread(spec: &ModelSpec) -> Result<f64> {
    let h = build_full_hamiltonian(spec)?;
    let mut psi = DVector::zeros(h.nrows());
    psi[upper_mask(spec.n)] = 1.0;
    let hpsi = &h * &psi;
    let mean = psi.dot(&hpsi);
    Ok((hpsi.dot(&hpsi) - mean * mean).max(0.0).sqrt())
}

/// Dense eigen-decomposition propagator.
pub struct FullPropagator {
    n: usize,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
    weights: DVector<f64>,
}

impl FullPropagator {
    pub fn new(spec: &ModelSpec) -> Result<Self> {
        let h = build_full_hamiltonian(spec)?;
        let eigen = SymmetricEigen::new(h);
        let weights = eigen.eigenvectors.row(upper_mask(spec.n)).transpose();
        Ok(Self { n: spec.n, eigen, weights })
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigen.eigenvalues
    }

    pub fn state_at(&self, t: f64) -> FullRegisterState {
        let phased: DVector<Complex64> = DVector::from_iterator(
            self.weights.len(),
            self.eigen.eigenvalues.iter().zip(self.weights.iter()).map(|(&e, &w)| Complex64::from_polar(w, -e * t)),
        );
        let v = self.eigen.eigenvectors.map(|x| Complex64::new(x, 0.0));
        FullRegisterState { amplitudes: v * phased, n: self.n }
    }
}

/// Brute-force trace of `P`, `R`, `S_e`.
pub fn brute_force_trace(spec: &ModelSpec, t_max: f64, points: usize) -> Result<EvolutionTrace> {
    if spec.n > 5 {
        return Err(Error::TooLarge(format!("brute-force evolution needs n <= 5, got {}", spec.n)));
    }
    if points < 2 || t_max.is_nan() || t_max <= 0.0 {
        return Err(Error::InvalidModel("need t_max > 0 and at least 2 points".into()));
    }
    let prop = FullPropagator::new(spec)?;
    let psi0 = FullRegisterState::initial(spec.n);
    let rows = (0..points)
        .map(|i| {
            let t = t_max * i as f64 / (points - 1) as f64;
            let psi = prop.state_at(t);
            TraceRow {
                t,
                gnt: spec.scaled_time(t),
                p: psi.overlap_sqr(&psi0),
                r: psi.upper_fraction(),
                entropy: psi.entanglement_entropy(),
            }
        })
        .collect();
    Ok(EvolutionTrace { spec: *spec, rows })
}

/// Flip-basis state `k` embedded in the register: the symmetric (Dicke) state
/// of the upper tier with `k` spins down times the lower-tier Dicke state with
/// `k` spins up.
pub fn embed_flip_state(n: usize, k: usize) -> DVector<f64> {
    let side = 1usize << n;
    let upper: Vec<usize> = (0..side).filter(|s| (n as u32 - s.count_ones()) as usize == k).collect();
    let lower: Vec<usize> = (0..side).filter(|s| s.count_ones() as usize == k).collect();
    let amp = 1.0 / ((upper.len() * lower.len()) as f64).sqrt();
    let mut v = DVector::zeros(side * side);
    for &u in &upper {
        for &l in &lower {
            v[(l << n) | u] = amp;
        }
    }
    v
}

/// Exact `C^2` with the sign of `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCg {
    pub sign: i8,
    pub square: BigRational,
}

impl ExactCg {
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        f64::from(self.sign) * self.square.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

fn factorial(k: i32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Racah formula over exact rationals.
pub fn cg_exact_rational(args: &CgArgs) -> Result<ExactCg> {
    args.validate()?;
    if [args.j1, args.j2, args.j].iter().any(|&x| x > MAX_EXACT_DOUBLED) {
        return Err(Error::TooLarge(format!("exact backend needs doubled spins <= {MAX_EXACT_DOUBLED}")));
    }
    if !args.allowed() {
        return Ok(ExactCg { sign: 0, square: BigRational::zero() });
    }
    let CgArgs { j1, m1, j2, m2, j, m } = *args;
    let a = (j1 + j2 - j) / 2;
    let b = (j1 - j2 + j) / 2;
    let c = (-j1 + j2 + j) / 2;
    let big = (j1 + j2 + j) / 2 + 1;
    let prefactor = BigRational::new(
        BigInt::from(j + 1)
            * factorial(a)
            * factorial(b)
            * factorial(c)
            * factorial((j1 + m1) / 2)
            * factorial((j1 - m1) / 2)
            * factorial((j2 + m2) / 2)
            * factorial((j2 - m2) / 2)
            * factorial((j + m) / 2)
            * factorial((j - m) / 2),
        factorial(big),
    );
    let d5 = (j - j2 + m1) / 2;
    let d6 = (j - j1 - m2) / 2;
    let j1m = (j1 - m1) / 2;
    let j2p = (j2 + m2) / 2;
    let mut sum = BigRational::zero();
    for t in 0.max(-d5).max(-d6)..=a.min(j1m).min(j2p) {
        let denom = factorial(t)
            * factorial(a - t)
            * factorial(j1m - t)
            * factorial(j2p - t)
            * factorial(d5 + t)
            * factorial(d6 + t);
        let term = BigRational::new(if t % 2 == 0 { BigInt::one() } else { -BigInt::one() }, denom);
        sum += term;
    }
    let sign = if sum.is_zero() {
        0
    } else if sum.is_positive() {
        1
    } else {
        -1
    };
    Ok(ExactCg { sign, square: prefactor * &sum * &sum })
}

/// Clebsch-Gordan coefficients by the ladder construction: fix `|j j>` from
/// `J+ |j j> = 0` and the Condon-Shortley sign, then apply `J-` step by step.
///
/// Each single-spin state is rescaled as `|m) = |m> / sqrt((j+m)!/(j-m)!)`.
/// In that basis `J-` shifts `m` with unit weight and `J+` has integer
/// weights, so the whole construction runs in exact rationals and the square
/// roots only come back in the final normalization.
pub fn cg_exact_lowering(args: &CgArgs) -> Result<ExactCg> {
    args.validate()?;
    if [args.j1, args.j2, args.j].iter().any(|&x| x > MAX_EXACT_DOUBLED) {
        return Err(Error::TooLarge(format!("exact backend needs doubled spins <= {MAX_EXACT_DOUBLED}")));
    }
    if !args.allowed() {
        return Ok(ExactCg { sign: 0, square: BigRational::zero() });
    }
    let CgArgs { j1, m1, j2, j, m, .. } = *args;
    let idx = |mm1: i32| ((mm1 + j1) / 2) as usize;
    let int = |x: i32| BigRational::from_integer(BigInt::from(x));
    let mut x = vec![BigRational::zero(); (j1 + 1) as usize];

    // Highest weight, m2 = j - m1. Collecting the |mu1)|mu2) component of
    // J+ gives x(mu1) (j2-mu2+1)(j2+mu2) = -x(mu1-1) (j1-mu1+1)(j1+mu1).
    let lo = (-j1).max(j - j2);
    let hi = j1.min(j + j2);
    x[idx(lo)] = BigRational::one();
    for mu1 in (lo + 2..=hi).step_by(2) {
        let mu2 = j + 2 - mu1;
        let num = int((j1 - mu1 + 2) / 2) * int((j1 + mu1) / 2);
        let den = int((j2 - mu2 + 2) / 2) * int((j2 + mu2) / 2);
        x[idx(mu1)] = -(&x[idx(mu1 - 2)] * num) / den;
    }
    if x[idx(j1)].is_negative() {
        for v in &mut x {
            *v = -v.clone();
        }
    }

    let mut level = j;
    while level > m {
        let mut next = vec![BigRational::zero(); x.len()];
        for mu1 in (-j1..=j1).step_by(2) {
            let mu2 = level - 2 - mu1;
            if mu2.abs() > j2 {
                continue;
            }
            let mut acc = BigRational::zero();
            if mu1 + 2 <= j1 {
                acc += &x[idx(mu1 + 2)];
            }
            if mu2 + 2 <= j2 {
                acc += &x[idx(mu1)];
            }
            next[idx(mu1)] = acc;
        }
        x = next;
        level -= 2;
    }

    // Back to the standard basis: a^2 = x^2 (j1-m1)! (j2-m2)! / ((j1+m1)! (j2+m2)!).
    let weight = |mu1: i32| {
        let mu2 = m - mu1;
        BigRational::new(
            factorial((j1 - mu1) / 2) * factorial((j2 - mu2) / 2),
            factorial((j1 + mu1) / 2) * factorial((j2 + mu2) / 2),
        )
    };
    let mut norm = BigRational::zero();
    for mu1 in (-j1..=j1).step_by(2) {
        if (m - mu1).abs() <= j2 {
            norm += &x[idx(mu1)] * &x[idx(mu1)] * weight(mu1);
        }
    }
    let v = &x[idx(m1)];
    let sign = if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    };
    Ok(ExactCg { sign, square: v * v * weight(m1) / norm })
}

/// [`cg_exact_lowering`] rounded to `f64`.
pub fn cg_by_lowering(args: &CgArgs) -> Result<f64> {
    Ok(cg_exact_lowering(args)?.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: ModelVariant, n: usize) -> ModelSpec {
        ModelSpec::new(v, n, 1.0).unwrap()
    }

    #[test]
    fn two_spin_hamiltonians() {
        let hb = build_full_hamiltonian(&spec(ModelVariant::B, 1)).unwrap();
        // |up,down> = mask 0b01, |down,up> = 0b10
        assert_eq!(hb[(1, 2)], 1.0);
        assert_eq!(hb[(2, 1)], 1.0);
        assert_eq!(hb.iter().filter(|&&x| x != 0.0).count(), 2);
        let ha = build_full_hamiltonian(&spec(ModelVariant::A, 1)).unwrap();
        assert_eq!(ha, hb);
    }

    #[test]
    fn traceless_and_symmetric() {
        for v in [ModelVariant::A, ModelVariant::B] {
            for n in 1..=4 {
                let h = build_full_hamiltonian(&spec(v, n)).unwrap();
                assert_eq!(h.trace(), 0.0);
                assert_eq!(h, h.transpose());
            }
        }
        assert!(build_full_hamiltonian(&spec(ModelVariant::A, 7)).is_err());
        assert!(build_full_hamiltonian(&spec(ModelVariant::C, 2)).is_err());
    }

    #[test]
    fn swap_completes_for_two_spins() {
        let tr = brute_force_trace(&spec(ModelVariant::B, 1), std::f64::consts::FRAC_PI_2, 2).unwrap();
        let last = tr.rows[1];
        assert!(last.p.abs() < 1e-14 && last.r.abs() < 1e-14 && last.entropy.abs() < 1e-10);
        let first = tr.rows[0];
        assert!((first.p - 1.0).abs() < 1e-14 && (first.r - 1.0).abs() < 1e-14 && first.entropy.abs() < 1e-12);
    }

    #[test]
    fn exact_small_values() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(cg_exact_rational(&CgArgs::tier(1, 0, 0)).unwrap().square, half);
        assert_eq!(cg_exact_rational(&CgArgs::tier(2, 0, 1)).unwrap().square, half);
        // companions of the n = 2, k = 0 column
        let sixth = BigRational::new(BigInt::from(1), BigInt::from(6));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(cg_exact_rational(&CgArgs::tier(2, 0, 0)).unwrap().square, third);
        assert_eq!(cg_exact_rational(&CgArgs::tier(2, 0, 2)).unwrap().square, sixth);
        let total =
            (0..=4).fold(BigRational::zero(), |acc, j| acc + cg_exact_rational(&CgArgs::tier(4, 2, j)).unwrap().square);
        assert_eq!(total, BigRational::one());
        assert!(cg_exact_rational(&CgArgs::tier(82, 0, 0)).is_err());
    }

    #[test]
    fn lowering_matches_exact_for_small_spins() {
        for j1 in 0..=6i32 {
            for j2 in 0..=6 {
                for j in ((j1 - j2).abs()..=j1 + j2).step_by(2) {
                    for m in (-j..=j).step_by(2) {
                        for m1 in (-j1..=j1).step_by(2) {
                            let m2 = m - m1;
                            if m2.abs() > j2 {
                                continue;
                            }
                            let args = CgArgs::doubled(j1, m1, j2, m2, j, m);
                            let exact = cg_exact_rational(&args).unwrap().to_f64();
                            let ladder = cg_by_lowering(&args).unwrap();
                            assert!((exact - ladder).abs() < 1e-14, "{args:?}: {exact} vs {ladder}");
                            assert_eq!(cg_exact_lowering(&args).unwrap(), cg_exact_rational(&args).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dicke_embedding_is_normalized() {
        for n in 1..=4 {
            for k in 0..=n {
                assert!((embed_flip_state(n, k).norm() - 1.0).abs() < 1e-14);
            }
        }
    }
}
