//! Time sweeps of the correlation measures, with CSV and JSON emitters.

use std::io::Write;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use trispin_core::{
    apply_channel, build_kraus, decoherence_mu, global_discord, tau3_lower_bound, NoiseParams,
    OptimizerConfig, Regime, Scenario,
};

use crate::fmt::fmt_sig;

/// Which measure columns a sweep populates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub tau3: bool,
    pub discord: bool,
}

impl Default for Measures {
    fn default() -> Self {
        Self {
            tau3: true,
            discord: true,
        }
    }
}

/// Full description of one sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub regime: Regime,
    /// Coupling strength (the upper-case rate).
    pub coupling: f64,
    /// Noise bandwidth (the lower-case rate); ignored for Markov.
    pub bandwidth: f64,
    pub t_max: f64,
    pub points: usize,
    pub measures: Measures,
    pub discord_config: OptimizerConfig,
    pub normalized: bool,
    /// Reserved for stochastic extensions; sweep output is deterministic.
    pub seed: u64,
}

/// One emitted time point. Field names match the CSV header.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub t: f64,
    #[serde(rename = "Gamma_t")]
    pub gamma_t: f64,
    pub mu: f64,
    pub tau3_ratio_numeric: Option<f64>,
    pub tau3_ratio_analytic: Option<f64>,
    pub discord_numeric: Option<f64>,
    pub discord_analytic: Option<f64>,
}

pub const CSV_HEADER: &str =
    "t,Gamma_t,mu,tau3_ratio_numeric,tau3_ratio_analytic,discord_numeric,discord_analytic";

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.points < 2 {
        bail!("a sweep needs at least 2 points, got {}", spec.points);
    }
    if spec.t_max <= 0.0 || spec.t_max.is_nan() {
        bail!("t-max must be positive, got {}", spec.t_max);
    }
    let params = NoiseParams::new(spec.coupling, spec.bandwidth, spec.regime)
        .context("invalid noise parameters")?;

    let initial = spec.scenario.initial_state();
    let tau3_initial = if spec.measures.tau3 {
        Some(tau3_lower_bound(&initial).context("entanglement bound of the initial state")?)
    } else {
        None
    };

    let rows: Result<Vec<SweepRow>> = (0..spec.points)
        .into_par_iter()
        .map(|i| {
            let t = spec.t_max * i as f64 / (spec.points - 1) as f64;
            let factor = decoherence_mu(t, &params)?;
            let mu = factor.mu();
            let evolved = apply_channel(&initial, &build_kraus(&factor))?;

            let (tau3_ratio_numeric, tau3_ratio_analytic) = match tau3_initial {
                Some(reference) => (
                    Some(tau3_lower_bound(&evolved)? / reference),
                    Some(spec.scenario.tau3_ratio(mu)?),
                ),
                None => (None, None),
            };

            let (discord_numeric, discord_analytic) = if spec.measures.discord {
                let (raw, _) = global_discord(&evolved, &spec.discord_config)?;
                let numeric = if spec.scenario == Scenario::W && spec.normalized {
                    raw / 1.5
                } else {
                    raw
                };
                (
                    Some(numeric),
                    Some(spec.scenario.discord(mu, spec.normalized)?),
                )
            } else {
                (None, None)
            };

            Ok(SweepRow {
                t,
                gamma_t: spec.coupling * t,
                mu,
                tau3_ratio_numeric,
                tau3_ratio_analytic,
                discord_numeric,
                discord_analytic,
            })
        })
        .map(|r: trispin_core::Result<SweepRow>| r.map_err(anyhow::Error::from))
        .collect();
    rows
}

fn field(value: Option<f64>) -> String {
    value.map(|v| fmt_sig(v, 12)).unwrap_or_default()
}

/// CSV with the exact fixed header, 12 significant digits and LF endings.
pub fn write_csv(rows: &[SweepRow], out: &mut dyn Write) -> Result<()> {
    out.write_all(CSV_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for row in rows {
        let line = format!(
            "{},{},{},{},{},{},{}\n",
            fmt_sig(row.t, 12),
            fmt_sig(row.gamma_t, 12),
            fmt_sig(row.mu, 12),
            field(row.tau3_ratio_numeric),
            field(row.tau3_ratio_analytic),
            field(row.discord_numeric),
            field(row.discord_analytic),
        );
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// JSON array of row objects with the same field names as the CSV columns.
pub fn write_json(rows: &[SweepRow], out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}
