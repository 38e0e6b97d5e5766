//! Threshold crossings, scaling diagnostics and the ground-state energy fit.
//!
//! Characteristic times are reported both as `t` and as the dimensionless
//! `G n t`, so any time is `1 / (G h(n))` with `h(n) = n / gnt`.

use crate::evolution::Dynamics;
use crate::models::{self, ModelSpec, ModelVariant};
use crate::{Error, Result};

/// Default crossing search horizon, in units of `G n t`.
pub const DEFAULT_HORIZON_GNT: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    /// Survival probability.
    P,
    /// Upper-tier up-fraction.
    R,
}

impl std::str::FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Self::P),
            "R" | "r" => Ok(Self::R),
            other => Err(Error::InvalidModel(format!("unknown observable {other:?}"))),
        }
    }
}

impl std::fmt::Display for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::P => "P",
            Self::R => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingResult {
    pub n: usize,
    pub observable: Observable,
    pub threshold: f64,
    pub t_star: f64,
    pub gnt_star: f64,
}

impl CrossingResult {
    /// `h(n)` in `t_star = 1 / (G h(n))`.
    pub fn rate_factor(&self) -> f64 {
        self.n as f64 / self.gnt_star
    }
}

fn read(dynamics: &Dynamics, observable: Observable, t: f64) -> f64 {
    let o = dynamics.observables(t);
    match observable {
        Observable::P => o.p,
        Observable::R => o.r,
    }
}

/// First downward crossing of `threshold` by `observable`.
///
/// The scan step is a quarter of the period of the fastest frequency in the
/// spectrum, so no dip can hide between samples; the bracket is then bisected
/// to machine precision with exact evaluations. `horizon_gnt` defaults to
/// [`DEFAULT_HORIZON_GNT`].
pub fn find_crossing(
    spec: &ModelSpec,
    observable: Observable,
    threshold: f64,
    horizon_gnt: Option<f64>,
) -> Result<CrossingResult> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Domain { name: "threshold", value: threshold });
    }
    let horizon = spec.time_from_scaled(horizon_gnt.unwrap_or(DEFAULT_HORIZON_GNT));
    let dynamics = Dynamics::new(spec)?;
    crossing_with(&dynamics, observable, threshold, horizon)
}

fn crossing_with(dynamics: &Dynamics, observable: Observable, threshold: f64, horizon: f64) -> Result<CrossingResult> {
    let spec = *dynamics.spec();
    let step = (std::f64::consts::PI / (4.0 * dynamics.bandwidth())).min(horizon / 64.0);
    let mut lo = 0.0;
    let mut minimum = read(dynamics, observable, 0.0);
    let mut hi = None;
    let mut i = 1usize;
    loop {
        let t = (i as f64 * step).min(horizon);
        let v = read(dynamics, observable, t);
        minimum = minimum.min(v);
        if v <= threshold {
            hi = Some(t);
            break;
        }
        if t >= horizon {
            break;
        }
        lo = t;
        i += 1;
    }
    let Some(mut hi) = hi else {
        return Err(Error::NoCrossing { threshold, horizon, minimum });
    };
    while hi - lo > 2.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if read(dynamics, observable, mid) > threshold {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Pick whichever end sits closer to the threshold.
    let t_star =
        if (read(dynamics, observable, lo) - threshold).abs() < (read(dynamics, observable, hi) - threshold).abs() {
            lo
        } else {
            hi
        };
    Ok(CrossingResult { n: spec.n, observable, threshold, t_star, gnt_star: spec.scaled_time(t_star) })
}

/// Crossings for several sizes of one model, sorted by `n`. Failures are kept
/// per entry.
pub fn sweep_crossings(
    variant: ModelVariant,
    coupling: f64,
    sizes: &[usize],
    observable: Observable,
    threshold: f64,
    horizon_gnt: Option<f64>,
) -> Vec<(usize, Result<CrossingResult>)> {
    let run = |&n: &usize| {
        let result = ModelSpec::new(variant, n, coupling)
            .and_then(|spec| find_crossing(&spec, observable, threshold, horizon_gnt));
        (n, result)
    };
    #[cfg(feature = "parallel")]
    let mut out: Vec<_> = {
        use rayon::prelude::*;
        sizes.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<_> = sizes.iter().map(run).collect();
    out.sort_by_key(|(n, _)| *n);
    out
}

/// Least-squares `E0(n) ~ a n + b n^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub max_rel_residual: f64,
}

impl QuadraticFit {
    pub fn eval(&self, n: f64) -> f64 {
        self.a * n + self.b * n * n
    }
}

/// Ordinary least squares on the basis `{n, n^2}`.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<QuadraticFit> {
    let distinct = {
        let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs.len()
    };
    if distinct < 3 {
        return Err(Error::Degenerate(format!("need at least 3 distinct n, got {distinct}")));
    }
    // Normal equations for columns x and x^2.
    let (mut s2, mut s3, mut s4, mut sy1, mut sy2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
        sy1 += x * y;
        sy2 += x * x * y;
    }
    let det = s2 * s4 - s3 * s3;
    let a = (sy1 * s4 - sy2 * s3) / det;
    let b = (s2 * sy2 - s3 * sy1) / det;
    let fit = QuadraticFit { a, b, max_rel_residual: 0.0 };
    let max_rel_residual = points
        .iter()
        .map(|&(x, y)| if y == 0.0 { (fit.eval(x) - y).abs() } else { ((fit.eval(x) - y) / y).abs() })
        .fold(0.0, f64::max);
    Ok(QuadraticFit { max_rel_residual, ..fit })
}

/// Model B ground-state energies (units of `G`) for the given tier sizes.
pub fn ground_energies(n_values: &[usize]) -> Result<Vec<(usize, f64)>> {
    let run = |&n: &usize| -> Result<(usize, f64)> {
        let spec = ModelSpec::new(ModelVariant::B, n, 1.0)?;
        Ok((n, models::energy_stats(&spec)?.ground_energy))
    };
    #[cfg(feature = "parallel")]
    let mut out: Vec<(usize, f64)> = {
        use rayon::prelude::*;
        n_values.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<(usize, f64)> = n_values.iter().map(run).collect::<Result<_>>()?;
    out.sort_by_key(|p| p.0);
    Ok(out)
}

/// Fits `E0(n) = a n + b n^2` to the computed model B ground energies.
pub fn fit_ground_state(n_values: &[usize]) -> Result<QuadraticFit> {
    let energies = ground_energies(n_values)?;
    let points: Vec<(f64, f64)> = energies.iter().map(|&(n, e)| (n as f64, e)).collect();
    fit_quadratic(&points)
}

/// Curvature `c2` of `R(t) = 1 - c2 t^2 + O(t^4)`.
///
/// Since `R = 1 - <k>/n` and the initial state has `k = 0`,
/// `d^2<k>/dt^2 (0) = 2 sum_k k |(H psi0)_k|^2`.
pub fn r_curvature(spec: &ModelSpec) -> Result<f64> {
    match Dynamics::new(spec)? {
        Dynamics::Spectral { propagator, .. } => {
            let hpsi = propagator.hamiltonian_on_initial();
            let sum: f64 = hpsi.iter().enumerate().map(|(k, a)| k as f64 * a.norm_sqr()).sum();
            Ok(sum / spec.n as f64)
        }
        Dynamics::Rotation { spec } => {
            let w = std::f64::consts::FRAC_PI_2 * spec.coupling * spec.n as f64;
            Ok(w * w)
        }
    }
}

/// Time at which the short-time quadratic `1 - c2 t^2` reaches `threshold`.
pub fn perturbative_reference(spec: &ModelSpec, threshold: f64) -> Result<f64> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Domain { name: "threshold", value: threshold });
    }
    let c2 = r_curvature(spec)?;
    if c2 <= 0.0 {
        return Err(Error::Degenerate("R(t) has zero curvature at t = 0".into()));
    }
    Ok(((1.0 - threshold) / c2).sqrt())
}

/// Perturbative reference time over the true `R` crossing time.
pub fn speedup_factor(spec: &ModelSpec, threshold: f64) -> Result<f64> {
    let reference = perturbative_reference(spec, threshold)?;
    let crossing = find_crossing(spec, Observable::R, threshold, None)?;
    Ok(reference / crossing.t_star)
}

/// Successive differences of `gnt_star` for crossings at doubling `n`.
/// Constant differences mean `gnt_star` grows like `log n`, i.e.
/// `t_star ~ log(n) / n`.
pub fn spacing_diagnostic(crossings: &[CrossingResult]) -> Result<Vec<f64>> {
    if crossings.len() < 3 {
        return Err(Error::Degenerate(format!("need at least 3 crossings, got {}", crossings.len())));
    }
    let mut sorted = crossings.to_vec();
    sorted.sort_by_key(|c| c.n);
    if let Some(w) = sorted.windows(2).find(|w| w[1].n != 2 * w[0].n) {
        return Err(Error::Degenerate(format!("sizes must double: {} then {}", w[0].n, w[1].n)));
    }
    Ok(sorted.windows(2).map(|w| w[1].gnt_star - w[0].gnt_star).collect())
}

/// Slope of `ln gnt_star` against `ln n` by least squares.
pub fn scaling_exponent(crossings: &[CrossingResult]) -> Result<f64> {
    if crossings.len() < 2 {
        return Err(Error::Degenerate("need at least 2 crossings".into()));
    }
    let pts: Vec<(f64, f64)> = crossings.iter().map(|c| ((c.n as f64).ln(), c.gnt_star.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: ModelVariant, n: usize) -> ModelSpec {
        ModelSpec::new(v, n, 1.0).unwrap()
    }

    #[test]
    fn model_c_crossing_is_quarter_period() {
        let c = find_crossing(&spec(ModelVariant::C, 2), Observable::R, 0.5, None).unwrap();
        assert!((c.t_star - 0.25).abs() < 1e-12, "{}", c.t_star);
    }

    #[test]
    fn crossing_value_matches_threshold() {
        for (v, obs, thr) in [
            (ModelVariant::A, Observable::P, 0.3),
            (ModelVariant::A, Observable::R, 0.7),
            (ModelVariant::B, Observable::P, 0.1),
            (ModelVariant::B, Observable::R, 0.4),
        ] {
            let s = spec(v, 24);
            let c = find_crossing(&s, obs, thr, None).unwrap();
            let d = Dynamics::new(&s).unwrap();
            assert!((read(&d, obs, c.t_star) - thr).abs() < 1e-9);
            // first crossing: nothing below threshold earlier
            for i in 0..200 {
                let t = c.t_star * i as f64 / 200.0;
                assert!(read(&d, obs, t) > thr - 1e-12);
            }
            assert!((c.rate_factor() * c.gnt_star - 24.0).abs() < 1e-9);
        }
    }

    #[test]
    fn no_crossing_reports_minimum() {
        // Model A's R stays near 1 for a long time at large n.
        let err = find_crossing(&spec(ModelVariant::A, 64), Observable::R, 0.2, Some(0.5)).unwrap_err();
        match err {
            Error::NoCrossing { minimum, .. } => assert!(minimum > 0.2 && minimum < 1.0),
            e => panic!("unexpected {e}"),
        }
        assert!(find_crossing(&spec(ModelVariant::A, 4), Observable::R, 1.0, None).is_err());
    }

    #[test]
    fn exact_quadratic_recovered() {
        let pts: Vec<(f64, f64)> = (4..=20).map(|n| (n as f64, -0.5 * (n * n) as f64)).collect();
        let fit = fit_quadratic(&pts).unwrap();
        assert!(fit.a.abs() < 1e-12 && (fit.b + 0.5).abs() < 1e-13);
        assert!(fit.max_rel_residual < 1e-12);
        let minimal = fit_ground_state(&[4, 5, 6]).unwrap();
        assert!(minimal.max_rel_residual.is_finite());
        assert!(fit_quadratic(&[(1.0, 1.0), (1.0, 2.0), (2.0, 3.0)]).is_err());
    }

    #[test]
    fn fit_is_least_squares_optimal() {
        let e = ground_energies(&(4..=40).collect::<Vec<_>>()).unwrap();
        let pts: Vec<(f64, f64)> = e.iter().map(|&(n, y)| (n as f64, y)).collect();
        let fit = fit_quadratic(&pts).unwrap();
        let ssr = |a: f64, b: f64| -> f64 { pts.iter().map(|&(x, y)| (a * x + b * x * x - y).powi(2)).sum() };
        let base = ssr(fit.a, fit.b);
        for (da, db) in [(1e-6, 0.0), (-1e-6, 0.0), (0.0, 1e-6), (0.0, -1e-6), (1e-6, -1e-6)] {
            assert!(ssr(fit.a + da, fit.b + db) >= base);
        }
    }

    #[test]
    fn model_b_curvature_is_n() {
        for n in [3usize, 8, 50] {
            let c2 = r_curvature(&spec(ModelVariant::B, n)).unwrap();
            assert!((c2 - n as f64).abs() < 1e-9 * n as f64);
            let t = perturbative_reference(&spec(ModelVariant::B, n), 0.5).unwrap();
            assert!((t - (0.5 / n as f64).sqrt()).abs() < 1e-12);
        }
        let t8 = perturbative_reference(&spec(ModelVariant::B, 8), 0.4).unwrap();
        let t16 = perturbative_reference(&spec(ModelVariant::B, 16), 0.4).unwrap();
        assert!((t16 / t8 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        // Model A shares the inter-tier hopping, hence the curvature.
        let a = r_curvature(&spec(ModelVariant::A, 8)).unwrap();
        assert!((a - 8.0).abs() < 1e-9);
    }

    #[test]
    fn curvature_matches_propagator_at_small_t() {
        let s = spec(ModelVariant::B, 20);
        let d = Dynamics::new(&s).unwrap();
        let c2 = r_curvature(&s).unwrap();
        let t = 1e-4;
        let measured = (1.0 - d.observables(t).r) / (t * t);
        assert!((measured - c2).abs() / c2 < 1e-5);
    }

    #[test]
    fn speedup_tends_to_one_near_unit_threshold() {
        for v in [ModelVariant::A, ModelVariant::B] {
            let f = speedup_factor(&spec(v, 16), 1.0 - 1e-6).unwrap();
            assert!((f - 1.0).abs() < 1e-3, "{v:?}: {f}");
        }
    }

    #[test]
    fn spacing_of_synthetic_logs() {
        let xs: Vec<CrossingResult> = [8usize, 16, 32, 64]
            .iter()
            .map(|&n| CrossingResult {
                n,
                observable: Observable::R,
                threshold: 0.4,
                t_star: 0.0,
                gnt_star: 0.7 * (n as f64).log2(),
            })
            .collect();
        let d = spacing_diagnostic(&xs).unwrap();
        assert!(d.iter().all(|x| (x - 0.7).abs() < 1e-12));
        assert!(spacing_diagnostic(&xs[..2]).is_err());
        let mut gap = xs.clone();
        gap[3].n = 100;
        assert!(spacing_diagnostic(&gap).is_err());
    }

    #[test]
    fn exponent_of_power_law() {
        let xs: Vec<CrossingResult> = [4usize, 16, 64]
            .iter()
            .map(|&n| CrossingResult {
                n,
                observable: Observable::R,
                threshold: 0.6,
                t_star: 0.0,
                gnt_star: 3.0 * (n as f64).sqrt(),
            })
            .collect();
        assert!((scaling_exponent(&xs).unwrap() - 0.5).abs() < 1e-12);
    }
}
