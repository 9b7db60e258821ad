//! Deterministic CSV and JSON data files for plots and calculators.
//!
//! Every dimensionless number is written with 12 significant digits. CSV
//! files are UTF-8 with `#`-prefixed comment lines followed by exactly one
//! column-header line. Line 1 carries the crate version and is the only
//! line that differs between releases; it is dropped when `header` is
//! false. JSON documents are a single object with `meta` and `data` keys,
//! and `meta.version` obeys the same switch.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::measurement::SimulationReport;
use crate::numerics::Grid1D;
use crate::quasiprob::{eval_grid, DistributionLabel};
use crate::states::{occupation_number, wien_peak_occupation, BlackbodyMode, ThermalState, WienConvention};
use crate::weakvalues::{
    moment_weak_integral, negativity_probability, negativity_threshold, p2_weak_closed,
    ProbabilityMethod,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputOptions {
    pub format: Format,
    /// Emit the version line (`meta.version` in JSON).
    pub header: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions {
            format: Format::Csv,
            header: true,
        }
    }
}

/// 12 significant digits in scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// `x` rounded to 12 significant digits, for JSON output.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    fmt12(x).parse().expect("round-trips through its own formatting")
}

fn grid_json(g: &Grid1D) -> Value {
    json!({ "min": round12(g.min()), "max": round12(g.max()), "count": g.count() })
}

fn state_meta(state: &ThermalState, meta: &mut Map<String, Value>) {
    meta.insert("mean_n".into(), json!(round12(state.mean_n())));
    meta.insert("sigma2".into(), json!(round12(state.sigma2())));
}

/// Assemble a CSV document from `key=value` metadata, a column header and rows.
fn csv_document(
    opts: &OutputOptions,
    kind: &str,
    meta: &[(&str, String)],
    columns: &[&str],
    rows: impl Iterator<Item = Vec<String>>,
) -> String {
    let mut out = String::new();
    if opts.header {
        writeln!(out, "# thermoweak {VERSION}").unwrap();
    }
    let meta: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "# {kind} {}", meta.join(" ")).unwrap();
    writeln!(out, "{}", columns.join(",")).unwrap();
    for row in rows {
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    out
}

fn json_document(opts: &OutputOptions, kind: &str, mut meta: Map<String, Value>, data: Value) -> Result<String> {
    meta.insert("kind".into(), json!(kind));
    if opts.header {
        meta.insert("version".into(), json!(VERSION));
    }
    let mut out = serde_json::to_string(&json!({ "meta": meta, "data": data }))?;
    out.push('\n');
    Ok(out)
}

/// Dense Margenau-Hill grid. CSV columns `q,p,value`, row-major over `q`.
pub fn mh_grid(state: &ThermalState, qgrid: &Grid1D, pgrid: &Grid1D, opts: &OutputOptions) -> Result<String> {
    let field = eval_grid(state, qgrid, pgrid, DistributionLabel::MargenauHill);
    let (min, at) = field.min_real();
    match opts.format {
        Format::Csv => {
            let meta = vec![
                ("mean_n", fmt12(state.mean_n())),
                ("sigma2", fmt12(state.sigma2())),
                ("q_min", fmt12(qgrid.min())),
                ("q_max", fmt12(qgrid.max())),
                ("q_count", qgrid.count().to_string()),
                ("p_min", fmt12(pgrid.min())),
                ("p_max", fmt12(pgrid.max())),
                ("p_count", pgrid.count().to_string()),
                ("min", fmt12(min)),
                ("argmin_q", fmt12(at.q)),
                ("argmin_p", fmt12(at.p)),
            ];
            let ps = pgrid.to_vec();
            let rows = qgrid.points().enumerate().flat_map(|(i, q)| {
                let row = field.row(i).to_vec();
                ps.clone()
                    .into_iter()
                    .zip(row)
                    .map(move |(p, v)| vec![fmt12(q), fmt12(p), fmt12(v.re)])
            });
            Ok(csv_document(opts, "mh-grid", &meta, &["q", "p", "value"], rows))
        }
        Format::Json => {
            let mut meta = Map::new();
            state_meta(state, &mut meta);
            meta.insert("min".into(), json!(round12(min)));
            meta.insert("argmin".into(), json!({ "q": round12(at.q), "p": round12(at.p) }));
            let values: Vec<Vec<f64>> = (0..qgrid.count())
                .map(|i| field.row(i).iter().map(|v| round12(v.re)).collect())
                .collect();
            let data = json!({
                "label": field.label().as_str(),
                "qgrid": grid_json(qgrid),
                "pgrid": grid_json(pgrid),
                "values": values,
            });
            json_document(opts, "mh-grid", meta, data)
        }
    }
}

/// Which weak-value columns [`weakvalue_curve`] writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveMethod {
    Closed,
    Integral,
    Both,
}

/// `(p²)_w(q)` over `qgrid`. CSV columns `q`, then `closed` and/or
/// `integral`, then `negative` (1 where `|q|` exceeds the threshold).
pub fn weakvalue_curve(
    state: &ThermalState,
    qgrid: &Grid1D,
    method: CurveMethod,
    opts: &OutputOptions,
) -> Result<String> {
    let threshold = negativity_threshold(state);
    let qs = qgrid.to_vec();
    let closed: Vec<f64> = qs.iter().map(|&q| p2_weak_closed(state, q)).collect();
    let integral: Option<Vec<f64>> = match method {
        CurveMethod::Closed => None,
        _ => Some(
            qs.iter()
                .map(|&q| moment_weak_integral(state, 2, q))
                .collect::<Result<_>>()?,
        ),
    };
    let negative: Vec<bool> = qs.iter().map(|q| q.abs() > threshold).collect();
    let with_closed = method != CurveMethod::Integral;

    match opts.format {
        Format::Csv => {
            let meta = vec![
                ("mean_n", fmt12(state.mean_n())),
                ("sigma2", fmt12(state.sigma2())),
                ("threshold", fmt12(threshold)),
                ("q_min", fmt12(qgrid.min())),
                ("q_max", fmt12(qgrid.max())),
                ("q_count", qgrid.count().to_string()),
            ];
            let mut columns = vec!["q"];
            if with_closed {
                columns.push("closed");
            }
            if integral.is_some() {
                columns.push("integral");
            }
            columns.push("negative");
            let rows = (0..qs.len()).map(|i| {
                let mut row = vec![fmt12(qs[i])];
                if with_closed {
                    row.push(fmt12(closed[i]));
                }
                if let Some(v) = &integral {
                    row.push(fmt12(v[i]));
                }
                row.push(u8::from(negative[i]).to_string());
                row
            });
            Ok(csv_document(opts, "weakvalue-curve", &meta, &columns, rows))
        }
        Format::Json => {
            let mut meta = Map::new();
            state_meta(state, &mut meta);
            meta.insert("threshold".into(), json!(round12(threshold)));
            meta.insert("method".into(), json!(method));
            let mut data = Map::new();
            data.insert("qgrid".into(), grid_json(qgrid));
            data.insert("q".into(), json!(qs.iter().map(|&q| round12(q)).collect::<Vec<_>>()));
            if with_closed {
                data.insert("closed".into(), json!(closed.iter().map(|&v| round12(v)).collect::<Vec<_>>()));
            }
            if let Some(v) = &integral {
                data.insert("integral".into(), json!(v.iter().map(|&v| round12(v)).collect::<Vec<_>>()));
            }
            data.insert("negative".into(), json!(negative));
            json_document(opts, "weakvalue-curve", meta, Value::Object(data))
        }
    }
}

/// The `⟨n̂⟩` grid of [`negativity_curve`], validated.
pub fn negativity_grid(mean_n_min: f64, mean_n_max: f64, steps: usize) -> Result<Grid1D> {
    if !(mean_n_min >= 0.0 && mean_n_max > mean_n_min && mean_n_max.is_finite()) {
        return Err(Error::invalid(
            "mean_n range",
            format!("need 0 <= min < max, got [{mean_n_min}, {mean_n_max}]"),
        ));
    }
    Grid1D::new(mean_n_min, mean_n_max, steps)
}

/// Probability of a negative weak value against `⟨n̂⟩` on
/// `steps` evenly spaced points of `[mean_n_min, mean_n_max]`.
pub fn negativity_curve(mean_n_min: f64, mean_n_max: f64, steps: usize, opts: &OutputOptions) -> Result<String> {
    let grid = negativity_grid(mean_n_min, mean_n_max, steps)?;
    let rows: Vec<(f64, f64, f64, f64)> = grid
        .points()
        .map(|m| {
            let s = ThermalState::from_mean_n(m)?;
            Ok((
                m,
                s.sigma2(),
                negativity_threshold(&s),
                negativity_probability(&s, ProbabilityMethod::Closed),
            ))
        })
        .collect::<Result<_>>()?;
    match opts.format {
        Format::Csv => {
            let meta = vec![
                ("mean_n_min", fmt12(mean_n_min)),
                ("mean_n_max", fmt12(mean_n_max)),
                ("steps", steps.to_string()),
            ];
            let out = rows
                .iter()
                .map(|&(m, s2, t, p)| vec![fmt12(m), fmt12(s2), fmt12(t), fmt12(p)]);
            Ok(csv_document(
                opts,
                "negativity-prob",
                &meta,
                &["mean_n", "sigma2", "threshold", "probability"],
                out,
            ))
        }
        Format::Json => {
            let mut meta = Map::new();
            meta.insert("mean_n_min".into(), json!(round12(mean_n_min)));
            meta.insert("mean_n_max".into(), json!(round12(mean_n_max)));
            meta.insert("steps".into(), json!(steps));
            let col = |f: fn(&(f64, f64, f64, f64)) -> f64| rows.iter().map(|r| round12(f(r))).collect::<Vec<_>>();
            let data = json!({
                "mean_n": col(|r| r.0),
                "sigma2": col(|r| r.1),
                "threshold": col(|r| r.2),
                "probability": col(|r| r.3),
            });
            json_document(opts, "negativity-prob", meta, data)
        }
    }
}

/// What [`occupation`] reports on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OccupationQuery {
    Mode(BlackbodyMode),
    Wien(WienConvention),
}

/// One-record report of `⟨n̂⟩` and `σ²`.
pub fn occupation(query: OccupationQuery, opts: &OutputOptions) -> Result<String> {
    let (mean_n, underflow, x, source) = match query {
        OccupationQuery::Mode(mode) => {
            let occ = occupation_number(&mode);
            (occ.mean_n, occ.underflow, mode.reduced_energy(), "mode")
        }
        OccupationQuery::Wien(conv) => (
            wien_peak_occupation(conv),
            false,
            conv.reduced_energy(),
            match conv {
                WienConvention::WavelengthPeak => "wien-wavelength",
                WienConvention::FrequencyPeak => "wien-frequency",
            },
        ),
    };
    let sigma2 = ThermalState::from_mean_n(mean_n)?.sigma2();
    match opts.format {
        Format::Csv => {
            let row = vec![fmt12(x), fmt12(mean_n), fmt12(sigma2), u8::from(underflow).to_string()];
            Ok(csv_document(
                opts,
                "occupation",
                &[("source", source.to_string())],
                &["reduced_energy", "mean_n", "sigma2", "underflow"],
                std::iter::once(row),
            ))
        }
        Format::Json => {
            let mut meta = Map::new();
            meta.insert("source".into(), json!(source));
            if let OccupationQuery::Mode(mode) = query {
                meta.insert("angular_frequency".into(), json!(round12(mode.angular_frequency())));
                meta.insert("temperature".into(), json!(round12(mode.temperature())));
            }
            let data = json!({
                "reduced_energy": round12(x),
                "mean_n": round12(mean_n),
                "sigma2": round12(sigma2),
                "underflow": underflow,
            });
            json_document(opts, "occupation", meta, data)
        }
    }
}

/// Simulation reports, one row per coupling.
pub fn simulation(
    state: &ThermalState,
    pointer: &str,
    reports: &[SimulationReport],
    opts: &OutputOptions,
) -> Result<String> {
    match opts.format {
        Format::Csv => {
            let meta = vec![
                ("mean_n", fmt12(state.mean_n())),
                ("sigma2", fmt12(state.sigma2())),
                ("pointer", pointer.to_string()),
            ];
            let rows = reports.iter().map(|r| {
                vec![
                    fmt12(r.g_used),
                    fmt12(r.postselect_q),
                    fmt12(r.bin_halfwidth),
                    fmt12(r.estimated_weak_value),
                    fmt12(r.analytic_weak_value),
                    fmt12(r.residual),
                    fmt12(r.postselect_probability),
                ]
            });
            Ok(csv_document(
                opts,
                "simulate",
                &meta,
                &["g", "q", "bin_halfwidth", "estimated", "analytic", "residual", "postselect_probability"],
                rows,
            ))
        }
        Format::Json => {
            let mut meta = Map::new();
            state_meta(state, &mut meta);
            meta.insert("pointer".into(), json!(pointer));
            let data: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "g": round12(r.g_used),
                        "q": round12(r.postselect_q),
                        "bin_halfwidth": round12(r.bin_halfwidth),
                        "estimated": round12(r.estimated_weak_value),
                        "analytic": round12(r.analytic_weak_value),
                        "residual": round12(r.residual),
                        "postselect_probability": round12(r.postselect_probability),
                    })
                })
                .collect();
            json_document(opts, "simulate", meta, Value::Array(data))
        }
    }
}
