use std::fmt;

use spinspeed::analysis::{self, Observable};
use spinspeed::angmom::{self, CgArgs};
use spinspeed::bounds::{self, BoundKind};
use spinspeed::evolution;
use spinspeed::models::{self, ModelSpec, ModelVariant};
use spinspeed::{oracle, Error};

use crate::output::{emit, num, Report, Table};
use crate::svg::{self, Curve};
use crate::{BoundsArgs, EvolveArgs, FigureArgs, FitArgs, Format, OracleArgs, SweepArgs};

const DEFAULT_T_MAX_GNT: f64 = 6.0;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Mismatch(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io(_) => 1,
            Self::Config(_) => 2,
            Self::Numerical(_) => 3,
            Self::Mismatch(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(m) => write!(f, "invalid configuration: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
            Self::Mismatch(m) => write!(f, "oracle mismatch: {m}"),
            Self::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidQuantumNumbers(_)
            | Error::InvalidModel(_)
            | Error::UnsupportedVariant(_)
            | Error::Domain { .. }
            | Error::TooLarge(_) => Self::Config(e.to_string()),
            _ => Self::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(config(format!("{name} must be positive, got {v}")))
    }
}

fn points(p: usize) -> Result<usize> {
    if p >= 2 {
        Ok(p)
    } else {
        Err(config(format!("points must be at least 2, got {p}")))
    }
}

/// Absolute end time from either flag.
fn end_time(spec: &ModelSpec, t_max: Option<f64>, t_max_gnt: Option<f64>) -> Result<f64> {
    match (t_max, t_max_gnt) {
        (Some(t), _) => positive("t-max", t),
        (None, g) => Ok(spec.time_from_scaled(positive("t-max-gnt", g.unwrap_or(DEFAULT_T_MAX_GNT))?)),
    }
}

pub fn evolve(a: &EvolveArgs) -> Result<()> {
    let spec = ModelSpec::new(a.model.into(), a.n, positive("coupling", a.common.coupling)?)?;
    let t_max = end_time(&spec, a.t_max, a.t_max_gnt)?;
    let trace = evolution::trace(&spec, t_max, points(a.points)?)?;
    let text = match a.common.format.unwrap_or(Format::Table) {
        Format::Table => {
            let mut t = Table::new(&["t", "gnt", "P", "R", "S_e"]);
            for r in &trace.rows {
                t.row(&[num(r.t), num(r.gnt), num(r.p), num(r.r), num(r.entropy)]);
            }
            t.into_string()
        }
        Format::Report => {
            let last = trace.rows[trace.rows.len() - 1];
            let mut r = Report::default();
            r.put("model", spec.variant)
                .put("n", spec.n)
                .num("G", spec.coupling)
                .put("points", trace.rows.len())
                .num("t_max", last.t)
                .num("gnt_max", last.gnt)
                .num("P_final", last.p)
                .num("R_final", last.r)
                .num("S_e_final", last.entropy)
                .num("P_min", trace.rows.iter().map(|r| r.p).fold(f64::INFINITY, f64::min))
                .num("R_min", trace.rows.iter().map(|r| r.r).fold(f64::INFINITY, f64::min))
                .num("S_e_max", trace.rows.iter().map(|r| r.entropy).fold(0.0, f64::max));
            r.into_string()
        }
    };
    Ok(emit(a.common.out.as_deref(), &text)?)
}

pub fn bounds(a: &BoundsArgs) -> Result<()> {
    let spec = ModelSpec::new(a.model.into(), a.n, positive("coupling", a.common.coupling)?)?;
    let stats = models::energy_stats(&spec)?;
    let rep = bounds::speed_limit(&stats, a.epsilon)?;
    let keys = ["model", "n", "G", "E", "deltaE", "E0", "tau_ml", "tau_mt", "tau_limit", "dominant", "epsilon"];
    let values = [
        spec.variant.to_string(),
        spec.n.to_string(),
        num(spec.coupling),
        num(rep.mean_energy),
        num(rep.spread),
        num(rep.ground_energy),
        num(rep.tau_mean_energy),
        num(rep.tau_spread),
        num(rep.tau_limit),
        rep.dominant.to_string(),
        num(rep.epsilon),
    ];
    let text = match a.common.format.unwrap_or(Format::Report) {
        Format::Report => {
            let mut r = Report::default();
            for (k, v) in keys.iter().zip(&values) {
                r.put(k, v);
            }
            r.into_string()
        }
        Format::Table => {
            let mut t = Table::new(&keys);
            t.row(&values);
            t.into_string()
        }
    };
    Ok(emit(a.common.out.as_deref(), &text)?)
}

struct FigureDef {
    variant: ModelVariant,
    observable: Observable,
    sizes: &'static [usize],
    gnt_max: f64,
    /// Which term of the bound the dashed curve saturates.
    saturation: Option<BoundKind>,
    title: &'static str,
}

fn figure_def(which: u8) -> Result<FigureDef> {
    Ok(match which {
        1 => FigureDef {
            variant: ModelVariant::A,
            observable: Observable::P,
            sizes: &[64],
            gnt_max: 6.0,
            saturation: Some(BoundKind::MeanEnergy),
            title: "Model A: P and the saturating evolution",
        },
        2 => FigureDef {
            variant: ModelVariant::A,
            observable: Observable::R,
            sizes: &[8, 16, 32, 64, 128, 256],
            gnt_max: 14.0,
            saturation: None,
            title: "Model A: R",
        },
        3 => FigureDef {
            variant: ModelVariant::B,
            observable: Observable::P,
            sizes: &[64],
            gnt_max: 6.0,
            saturation: Some(BoundKind::Spread),
            title: "Model B: P and the saturating evolution",
        },
        4 => FigureDef {
            variant: ModelVariant::B,
            observable: Observable::R,
            sizes: &[8, 16, 32, 64, 128, 256, 512],
            gnt_max: 6.0,
            saturation: None,
            title: "Model B: R",
        },
        other => return Err(config(format!("figure must be 1, 2, 3 or 4, got {other}"))),
    })
}

pub fn figure(a: &FigureArgs) -> Result<()> {
    let def = figure_def(a.which)?;
    let g = positive("coupling", a.common.coupling)?;
    let sizes: Vec<usize> = if a.n.is_empty() { def.sizes.to_vec() } else { a.n.clone() };
    let pts = points(a.points)?;
    // x is Gnt unless an absolute end time was asked for.
    let (x_name, x_max, absolute) = match a.t_max {
        Some(t) => ("t", positive("t-max", t)?, true),
        None => ("gnt", positive("t-max-gnt", a.t_max_gnt.unwrap_or(def.gnt_max))?, false),
    };
    let x: Vec<f64> = (0..pts).map(|i| x_max * i as f64 / (pts - 1) as f64).collect();

    let mut columns: Vec<(String, Vec<f64>, bool)> = Vec::new();
    for &n in &sizes {
        let spec = ModelSpec::new(def.variant, n, g)?;
        let t_end = if absolute { x_max } else { spec.time_from_scaled(x_max) };
        let trace = evolution::trace(&spec, t_end, pts)?;
        let y = trace
            .rows
            .iter()
            .map(|r| match def.observable {
                Observable::P => r.p,
                Observable::R => r.r,
            })
            .collect();
        columns.push((format!("{}_n{n}", def.observable), y, false));
        if let Some(kind) = def.saturation {
            let stats = models::energy_stats(&spec)?;
            let sat = trace.rows.iter().map(|r| bounds::saturation_epsilon(&stats, kind, r.t)).collect();
            // In Gnt the saturating curve is the same for every n; keep one copy.
            if absolute || !columns.iter().any(|c| c.2) {
                let name = if absolute { format!("eps_sat_n{n}") } else { "eps_sat".to_string() };
                columns.push((name, sat, true));
            }
        }
    }

    let mut header = vec![x_name.to_string()];
    header.extend(columns.iter().map(|c| c.0.clone()));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = Table::new(&header_refs);
    for (i, &xv) in x.iter().enumerate() {
        let mut row = vec![num(xv)];
        row.extend(columns.iter().map(|c| num(c.1[i])));
        table.row(&row);
    }
    emit(a.common.out.as_deref(), &table.into_string())?;

    if let Some(path) = &a.svg {
        let curves: Vec<Curve> =
            columns.iter().map(|(label, y, dashed)| Curve { label: label.clone(), y, dashed: *dashed }).collect();
        let x_label = if absolute { "t" } else { "Gnt" };
        let y_label = if def.observable == Observable::P { "P" } else { "R" };
        std::fs::write(path, svg::render(def.title, x_label, y_label, &x, &curves))?;
    }
    Ok(())
}

pub fn sweep(a: &SweepArgs) -> Result<()> {
    let variant: ModelVariant = a.model.into();
    let g = positive("coupling", a.common.coupling)?;
    let observable: Observable = a.observable.into();
    let threshold = a.threshold.unwrap_or(if variant == ModelVariant::A { 0.6 } else { 0.4 });
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(config(format!("threshold must lie in (0, 1), got {threshold}")));
    }
    if let Some(h) = a.horizon_gnt {
        positive("horizon-gnt", h)?;
    }
    if let Some(&bad) = a.n.iter().find(|&&n| n == 0) {
        return Err(config(format!("sizes must be positive, got {bad}")));
    }
    let mut sizes = a.n.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let results = analysis::sweep_crossings(variant, g, &sizes, observable, threshold, a.horizon_gnt);
    let found: Vec<_> = results.iter().filter_map(|(_, r)| r.as_ref().ok().copied()).collect();

    let text = match a.common.format.unwrap_or(Format::Table) {
        Format::Table => {
            let mut t = Table::new(&["n", "t_star", "gnt_star", "rate_factor", "gnt_diff", "status"]);
            let mut prev: Option<f64> = None;
            for (n, r) in &results {
                match r {
                    Ok(c) => {
                        let diff = prev.map_or(String::new(), |p| num(c.gnt_star - p));
                        prev = Some(c.gnt_star);
                        t.row(&[
                            n.to_string(),
                            num(c.t_star),
                            num(c.gnt_star),
                            num(c.rate_factor()),
                            diff,
                            "ok".into(),
                        ]);
                    }
                    Err(e) => {
                        prev = None;
                        let msg = e.to_string().replace(',', ";");
                        t.row(&[n.to_string(), String::new(), String::new(), String::new(), String::new(), msg]);
                    }
                }
            }
            t.into_string()
        }
        Format::Report => {
            let mut r = Report::default();
            r.put("model", variant).put("observable", observable).num("threshold", threshold).num("G", g);
            for (n, res) in &results {
                match res {
                    Ok(c) => r.num(&format!("gnt_star.{n}"), c.gnt_star),
                    Err(e) => r.put(&format!("gnt_star.{n}"), format!("none ({e})")),
                };
            }
            if let Ok(d) = analysis::spacing_diagnostic(&found) {
                let hi = d.iter().copied().fold(f64::MIN, f64::max);
                let lo = d.iter().copied().fold(f64::MAX, f64::min);
                r.put("spacings", d.iter().map(|&x| num(x)).collect::<Vec<_>>().join(","));
                r.num("spacing_spread", (hi - lo) / hi);
            }
            if found.len() >= 2 {
                r.num("scaling_exponent", analysis::scaling_exponent(&found)?);
            }
            r.into_string()
        }
    };
    Ok(emit(a.common.out.as_deref(), &text)?)
}

pub fn fit_e0(a: &FitArgs) -> Result<()> {
    if a.n_min == 0 || a.n_max < a.n_min + 2 {
        return Err(config(format!("need 1 <= n-min and n-max >= n-min + 2, got {}..{}", a.n_min, a.n_max)));
    }
    let ns: Vec<usize> = (a.n_min..=a.n_max).collect();
    let energies = analysis::ground_energies(&ns)?;
    let points: Vec<(f64, f64)> = energies.iter().map(|&(n, e)| (n as f64, e)).collect();
    let fit = analysis::fit_quadratic(&points)?;
    let text = match a.common.format.unwrap_or(Format::Report) {
        Format::Report => {
            let mut r = Report::default();
            r.put("n_min", a.n_min)
                .put("n_max", a.n_max)
                .num("a", fit.a)
                .num("b", fit.b)
                .num("max_rel_residual", fit.max_rel_residual);
            r.into_string()
        }
        Format::Table => {
            let mut t = Table::new(&["n", "E0", "fit", "rel_residual"]);
            for &(n, e) in &energies {
                let f = fit.eval(n as f64);
                t.row(&[n.to_string(), num(e), num(f), num((f - e) / e)]);
            }
            t.into_string()
        }
    };
    Ok(emit(a.common.out.as_deref(), &text)?)
}

struct Checks {
    lines: Vec<String>,
    failed: usize,
}

impl Checks {
    fn record(&mut self, name: &str, worst: f64, tol: f64) {
        let ok = worst <= tol;
        if !ok {
            self.failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!("[{tag}] {name}: worst {worst:.3e} (tolerance {tol:.0e})"));
    }
}

pub fn oracle_check(a: &OracleArgs) -> Result<()> {
    if a.n_max == 0 || a.n_max > 5 {
        return Err(config(format!("n-max must be in 1..=5, got {}", a.n_max)));
    }
    let mut checks = Checks { lines: Vec::new(), failed: 0 };
    let sizes = 1..=a.n_max;

    let mut closure: f64 = 0.0;
    let mut traced: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut trace_zero: f64 = 0.0;
    for v in [ModelVariant::A, ModelVariant::B] {
        for n in sizes.clone() {
            let spec = ModelSpec::new(v, n, 1.0)?;
            let full = oracle::build_full_hamiltonian(&spec)?;
            trace_zero = trace_zero.max(full.trace().abs());
            for k in 0..=n {
                let image = &full * oracle::embed_flip_state(n, k);
                let mut residual = image.clone();
                for q in 0..=n {
                    let b = oracle::embed_flip_state(n, q);
                    residual -= &b * b.dot(&image);
                }
                closure = closure.max(residual.norm());
            }
            let brute = oracle::brute_force_trace(&spec, 3.0, 20)?;
            let fast = evolution::trace(&spec, 3.0, 20)?;
            for (x, y) in brute.rows.iter().zip(&fast.rows) {
                traced = traced.max((x.p - y.p).abs()).max((x.r - y.r).abs()).max((x.entropy - y.entropy).abs());
            }
            let stats = models::energy_stats(&spec)?;
            spread = spread.max((oracle::energy_spread(&spec)? - stats.spread).abs());
        }
    }
    checks.record("full Hamiltonian is traceless", trace_zero, 1e-12);
    checks.record("flip states closed under the full Hamiltonian", closure, 1e-12);
    checks.record("P, R, S_e match brute force at 20 times", traced, 1e-8);
    checks.record("energy spread matches brute force", spread, 1e-12);

    let mut exact_gap: f64 = 0.0;
    let mut float_gap: f64 = 0.0;
    for n in 1..=24u32 {
        for k in 0..=n {
            for j in 0..=n {
                let args = CgArgs::tier(n, k, j);
                let racah = oracle::cg_exact_rational(&args)?;
                let ladder = oracle::cg_exact_lowering(&args)?;
                if racah != ladder {
                    exact_gap = f64::INFINITY;
                }
                let want = racah.to_f64();
                let got = angmom::clebsch_gordan(&args)?;
                let rel = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
                float_gap = float_gap.max(rel);
            }
        }
    }
    checks.record("exact Racah equals exact ladder", exact_gap, 0.0);
    checks.record("float CG matches exact (relative)", float_gap, 1e-11);

    let mut text = checks.lines.join("\n");
    text.push('\n');
    emit(a.out.as_deref(), &text)?;
    if checks.failed > 0 {
        return Err(CliError::Mismatch(format!("{} check(s) failed", checks.failed)));
    }
    Ok(())
}
