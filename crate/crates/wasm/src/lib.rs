//! wasm-bindgen surface for the static demo page in `www/`.

use spinspeed::analysis::{self, Observable};
use spinspeed::bounds::{self, BoundKind};
use spinspeed::evolution;
use spinspeed::models::{self, ModelSpec, ModelVariant};
use wasm_bindgen::prelude::*;

fn js_err(e: spinspeed::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn spec(model: &str, n: usize) -> Result<ModelSpec, JsError> {
    let variant: ModelVariant = model.parse().map_err(js_err)?;
    ModelSpec::new(variant, n, 1.0).map_err(js_err)
}

/// `P`, `R`, `S_e` sampled on a uniform Gnt grid, plus the curve that
/// saturates the dominant term of the speed limit.
#[wasm_bindgen]
pub struct Curves {
    gnt: Vec<f64>,
    p: Vec<f64>,
    r: Vec<f64>,
    entropy: Vec<f64>,
    saturation: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn gnt(&self) -> Vec<f64> {
        self.gnt.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn p(&self) -> Vec<f64> {
        self.p.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn r(&self) -> Vec<f64> {
        self.r.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn entropy(&self) -> Vec<f64> {
        self.entropy.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn saturation(&self) -> Vec<f64> {
        self.saturation.clone()
    }
}

#[wasm_bindgen]
pub fn evolve(model: &str, n: usize, gnt_max: f64, points: usize) -> Result<Curves, JsError> {
    let s = spec(model, n)?;
    if gnt_max.is_nan() || gnt_max <= 0.0 {
        return Err(JsError::new("Gnt range must be positive"));
    }
    let trace = evolution::trace(&s, s.time_from_scaled(gnt_max), points).map_err(js_err)?;
    let stats = models::energy_stats(&s).map_err(js_err)?;
    // epsilon = 0 picks the larger of the two bound times.
    let kind = bounds::speed_limit(&stats, 0.0).map_err(js_err)?.dominant;
    Ok(Curves {
        gnt: trace.rows.iter().map(|r| r.gnt).collect(),
        p: trace.rows.iter().map(|r| r.p).collect(),
        r: trace.rows.iter().map(|r| r.r).collect(),
        entropy: trace.rows.iter().map(|r| r.entropy).collect(),
        saturation: trace.rows.iter().map(|r| bounds::saturation_epsilon(&stats, kind, r.t)).collect(),
    })
}

#[wasm_bindgen]
pub struct SpeedLimit {
    pub mean_energy: f64,
    pub spread: f64,
    pub ground_energy: f64,
    pub tau_mean_energy: f64,
    pub tau_spread: f64,
    pub tau_limit: f64,
    /// First time `P` reaches epsilon, NaN if not within Gnt = 50.
    pub t_reached: f64,
    spread_dominates: bool,
}

#[wasm_bindgen]
impl SpeedLimit {
    #[wasm_bindgen(getter)]
    pub fn dominant(&self) -> String {
        if self.spread_dominates { BoundKind::Spread } else { BoundKind::MeanEnergy }.to_string()
    }
}

#[wasm_bindgen]
pub fn speed_limit(model: &str, n: usize, epsilon: f64) -> Result<SpeedLimit, JsError> {
    let s = spec(model, n)?;
    let stats = models::energy_stats(&s).map_err(js_err)?;
    let rep = bounds::speed_limit(&stats, epsilon).map_err(js_err)?;
    let t_reached = if epsilon > 0.0 {
        analysis::find_crossing(&s, Observable::P, epsilon, None).map_or(f64::NAN, |c| c.t_star)
    } else {
        f64::NAN
    };
    Ok(SpeedLimit {
        mean_energy: rep.mean_energy,
        spread: rep.spread,
        ground_energy: rep.ground_energy,
        tau_mean_energy: rep.tau_mean_energy,
        tau_spread: rep.tau_spread,
        tau_limit: rep.tau_limit,
        t_reached,
        spread_dominates: rep.dominant == BoundKind::Spread,
    })
}

/// Gnt at which `R` first falls to `threshold`, one entry per size; NaN where
/// no crossing is found.
#[wasm_bindgen]
pub fn crossing_scan(model: &str, sizes: Vec<u32>, threshold: f64) -> Result<Vec<f64>, JsError> {
    let variant: ModelVariant = model.parse().map_err(js_err)?;
    let sizes: Vec<usize> = sizes.into_iter().map(|n| n as usize).collect();
    let found = analysis::sweep_crossings(variant, 1.0, &sizes, Observable::R, threshold, None);
    // sweep_crossings sorts by n; report in the caller's order.
    Ok(sizes
        .iter()
        .map(|n| found.iter().find(|(m, _)| m == n).and_then(|(_, r)| r.as_ref().ok()).map_or(f64::NAN, |c| c.gnt_star))
        .collect())
}
