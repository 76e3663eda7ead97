//! The six run modes. Each returns its files and a convergence summary; the
//! caller decides where they go.

use rayon::prelude::*;
use serde_json::{json, Value};
use usc_core::displaced_basis::{spectrum_at, well_overlap, SWEEP_N_MAX};
use usc_core::exact_diag::{compare_point, exact_spectrum_values, ComparisonPoint};
use usc_core::hf_qubit::{
    approx_potential, effective_potential, renormalized_frequencies, stability, PotentialBranch,
};
use usc_core::numerics::INDEX_CEILING;
use usc_core::{Error as CoreError, WellLabel};

use crate::config::{linspace, Format, Mode, RunConfig};
use crate::error::{CliError, Result};
use crate::format::fmt_num;
use crate::output::{csv_bytes, json_bytes, num, svg_plot, Artifact, Series};

#[derive(Clone, Debug, PartialEq)]
pub struct ModeOutput {
    pub artifacts: Vec<Artifact>,
    /// Mode-specific convergence metadata for the run record; `null` when
    /// nothing iterative ran.
    pub convergence: Value,
    pub converged: bool,
    /// Lines for standard output.
    pub summary: Vec<String>,
}

impl ModeOutput {
    fn plain(artifacts: Vec<Artifact>, summary: Vec<String>) -> Self {
        Self {
            artifacts,
            convergence: Value::Null,
            converged: true,
            summary,
        }
    }
}

pub fn run_mode(cfg: &RunConfig) -> Result<ModeOutput> {
    match cfg.mode() {
        Mode::Spectrum => spectrum(cfg),
        Mode::Compare => compare(cfg),
        Mode::Potentials => potentials(cfg),
        Mode::Stability => stability_report(cfg),
        Mode::Overlaps => overlaps(cfg),
        Mode::Exact => exact(cfg),
    }
}

fn spectrum(cfg: &RunConfig) -> Result<ModeOutput> {
    if cfg.n_max > SWEEP_N_MAX {
        return Err(CliError::Config(format!(
            "n_max {} exceeds {}",
            cfg.n_max, SWEEP_N_MAX
        )));
    }
    let grid = cfg.lambda_grid();
    let zp = cfg.zero_point();
    let levels = grid
        .par_iter()
        .map(|&x| Ok(spectrum_at(&cfg.params_at(x)?, cfg.n_max, zp)?))
        .collect::<Result<Vec<_>>>()?;

    let mut artifacts = Vec::new();
    if cfg.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = grid
            .iter()
            .zip(&levels)
            .flat_map(|(&x, ls)| {
                ls.iter().map(move |l| {
                    vec![
                        fmt_num(x),
                        l.n.to_string(),
                        l.branch.name().into(),
                        fmt_num(l.energy),
                    ]
                })
            })
            .collect();
        artifacts.push(Artifact::new(
            "spectrum.csv",
            csv_bytes(
                &["lambda_over_omega0", "n", "branch", "energy_over_omega0"],
                &rows,
            )?,
        ));
    }
    if cfg.wants(Format::Svg) {
        let per_point = levels.first().map_or(0, Vec::len);
        let series: Vec<Series> = (0..per_point)
            .map(|k| {
                let first = &levels[0][k];
                Series {
                    name: format!("n={} {}", first.n, first.branch.name()),
                    points: grid
                        .iter()
                        .zip(&levels)
                        .map(|(&x, ls)| (x, ls[k].energy))
                        .collect(),
                }
            })
            .collect();
        artifacts.push(Artifact::new(
            "spectrum.svg",
            svg_plot(
                "Displaced-basis spectrum",
                "lambda / hbar omega0",
                "E / hbar omega0",
                &series,
            ),
        ));
    }
    let summary = vec![format!(
        "grid points: {}, levels per point: {}",
        grid.len(),
        4 * (cfg.n_max + 1)
    )];
    Ok(ModeOutput::plain(artifacts, summary))
}

fn compare(cfg: &RunConfig) -> Result<ModeOutput> {
    let grid = cfg.lambda_grid();
    let base = cfg.base_params()?;
    let trunc = cfg.truncation();
    let zp = cfg.zero_point();
    let points: Vec<ComparisonPoint> = grid
        .par_iter()
        .map(|&x| {
            Ok(compare_point(
                &base,
                cfg.theta,
                x,
                cfg.n_levels,
                &trunc,
                zp,
            )?)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut artifacts = Vec::new();
    if cfg.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = points
            .iter()
            .flat_map(|pt| {
                pt.levels.iter().map(move |l| {
                    vec![
                        fmt_num(pt.lambda_over_omega0),
                        l.level.to_string(),
                        fmt_num(l.adiabatic),
                        fmt_num(l.exact),
                        fmt_num(l.abs_dev),
                    ]
                })
            })
            .collect();
        artifacts.push(Artifact::new(
            "compare.csv",
            csv_bytes(
                &[
                    "lambda_over_omega0",
                    "level",
                    "adiabatic",
                    "exact",
                    "abs_dev",
                ],
                &rows,
            )?,
        ));
    }
    if cfg.wants(Format::Svg) {
        let mut series = Vec::new();
        for level in 0..cfg.n_levels {
            for (kind, pick) in [("adiabatic", 0), ("exact", 1)] {
                series.push(Series {
                    name: format!("level {level} {kind}"),
                    points: points
                        .iter()
                        .map(|pt| {
                            let l = &pt.levels[level];
                            (
                                pt.lambda_over_omega0,
                                if pick == 0 { l.adiabatic } else { l.exact },
                            )
                        })
                        .collect(),
                });
            }
        }
        artifacts.push(Artifact::new(
            "compare.svg",
            svg_plot(
                "Displaced basis vs exact",
                "lambda / hbar omega0",
                "E / hbar omega0",
                &series,
            ),
        ));
    }

    let all_converged = points.iter().all(|p| p.converged);
    let max_n = points.iter().map(|p| p.n_trunc_used).max().unwrap_or(0);
    let (ground_dev, ground_at) = points
        .iter()
        .map(|p| (p.levels[0].abs_dev, p.lambda_over_omega0))
        .fold(
            (0.0, 0.0),
            |best, cur| if cur.0 > best.0 { cur } else { best },
        );
    let all_dev = points
        .iter()
        .flat_map(|p| p.levels.iter().map(|l| l.abs_dev))
        .fold(0.0, f64::max);
    let convergence = json!({
        "all_converged": all_converged,
        "max_n_trunc_used": max_n,
        "max_abs_dev_ground": num(ground_dev),
        "max_abs_dev_ground_at": num(ground_at),
        "max_abs_dev_all_levels": num(all_dev),
        "points": points.iter().map(|p| json!({
            "lambda_over_omega0": num(p.lambda_over_omega0),
            "converged": p.converged,
            "n_trunc_used": p.n_trunc_used,
            "max_shift": num(p.max_shift),
        })).collect::<Vec<_>>(),
    });
    let mut summary = vec![
        format!(
            "max ground-level deviation: {} at lambda = {}",
            fmt_num(ground_dev),
            fmt_num(ground_at)
        ),
        format!(
            "max deviation over {} levels: {}",
            cfg.n_levels,
            fmt_num(all_dev)
        ),
        format!("largest n_trunc used: {max_n}"),
    ];
    if !all_converged {
        let bad = points.iter().filter(|p| !p.converged).count();
        summary.push(format!(
            "converged=false at {bad} of {} grid points",
            points.len()
        ));
    }
    Ok(ModeOutput {
        artifacts,
        convergence,
        converged: all_converged,
        summary,
    })
}

fn potentials(cfg: &RunConfig) -> Result<ModeOutput> {
    let p = cfg.params_at(cfg.lambda_max)?;
    // x' = x sqrt(2 m omega0 / hbar) with m = omega0 = hbar = 1
    let xs = linspace(-cfg.x_max, cfg.x_max, cfg.x_steps);
    let branches = [
        PotentialBranch::Minus,
        PotentialBranch::Zero,
        PotentialBranch::Plus,
    ];
    let sample = |xp: f64, b: PotentialBranch| -> Result<(f64, Option<f64>)> {
        let x = xp / std::f64::consts::SQRT_2;
        let approx = match approx_potential(x, b, &p) {
            Ok(v) => Some(v),
            Err(CoreError::Unstable { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        Ok((effective_potential(x, b, &p), approx))
    };
    let table = xs
        .iter()
        .map(|&xp| {
            branches
                .iter()
                .map(|&b| sample(xp, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut artifacts = Vec::new();
    if cfg.wants(Format::Csv) {
        let mut rows = Vec::with_capacity(xs.len() * 3);
        for (&xp, vals) in xs.iter().zip(&table) {
            for (b, (exact, approx)) in branches.iter().zip(vals) {
                rows.push(vec![
                    fmt_num(xp),
                    b.name().into(),
                    fmt_num(*exact),
                    approx.map_or(String::new(), fmt_num),
                ]);
            }
        }
        artifacts.push(Artifact::new(
            "potentials.csv",
            csv_bytes(&["x", "branch", "V_exact", "V_approx"], &rows)?,
        ));
    }
    if cfg.wants(Format::Svg) {
        let mut series = Vec::new();
        for (k, b) in branches.iter().enumerate() {
            series.push(Series {
                name: format!("{} exact", b.name()),
                points: xs.iter().zip(&table).map(|(&x, v)| (x, v[k].0)).collect(),
            });
            if table.iter().all(|v| v[k].1.is_some()) {
                series.push(Series {
                    name: format!("{} approx", b.name()),
                    points: xs
                        .iter()
                        .zip(&table)
                        .map(|(&x, v)| (x, v[k].1.unwrap_or(f64::NAN)))
                        .collect(),
                });
            }
        }
        artifacts.push(Artifact::new(
            "potentials.svg",
            svg_plot("Oscillator potentials", "x'", "V / hbar omega0", &series),
        ));
    }
    let r = stability(&p);
    let summary = vec![format!(
        "lambda = {}: ratio {}, {}",
        fmt_num(cfg.lambda_max),
        fmt_num(r.ratio),
        if r.stable {
            "stable"
        } else {
            "double well (approximate minus potential omitted)"
        }
    )];
    Ok(ModeOutput::plain(artifacts, summary))
}

fn stability_report(cfg: &RunConfig) -> Result<ModeOutput> {
    let p = cfg.params_at(cfg.lambda_max)?;
    let r = stability(&p);
    let f = renormalized_frequencies(&p);
    let opt = |v: Option<f64>| v.map_or(Value::Null, num);
    let report = json!({
        "schema": 1,
        "lambda_over_omega0": num(cfg.lambda_max),
        "delta": num(p.delta()),
        "epsilon": num(p.epsilon()),
        "eq": num(p.eq()),
        "g": num(p.g()),
        "ratio": num(r.ratio),
        "stable": r.stable,
        "marginal": r.marginal,
        "omega_sq": {"minus": num(f.omega_minus_sq), "zero": num(f.omega_zero_sq), "plus": num(f.omega_plus_sq)},
        "minima": r.minima.iter().map(|&x| num(x)).collect::<Vec<_>>(),
        "minimum_values": r.minimum_values.iter().map(|&x| num(x)).collect::<Vec<_>>(),
        "barrier_height": opt(r.barrier_height),
        "asymmetry_shift": opt(r.barrier_location),
        "x0_closed_form": opt(r.x0_closed_form),
        "barrier_closed_form": opt(r.barrier_closed_form),
    });
    let mut summary = vec![format!(
        "ratio {}: {}",
        fmt_num(r.ratio),
        if r.stable { "stable" } else { "unstable" }
    )];
    if let Some(b) = r.barrier_height {
        summary.push(format!("barrier height {}", fmt_num(b)));
    }
    Ok(ModeOutput::plain(
        vec![Artifact::new("stability.json", json_bytes(&report))],
        summary,
    ))
}

fn overlaps(cfg: &RunConfig) -> Result<ModeOutput> {
    if cfg.n_max > INDEX_CEILING {
        return Err(CliError::Config(format!(
            "n_max {} exceeds {}",
            cfg.n_max, INDEX_CEILING
        )));
    }
    let p = cfg.params_at(cfg.lambda_max)?;
    let (wa, wb): (WellLabel, WellLabel) = (cfg.wells[0].into(), cfg.wells[1].into());
    let mut rows = Vec::new();
    for m in 0..=cfg.n_max {
        for n in 0..=cfg.n_max {
            let v = well_overlap(m, wa, n, wb, &p)?;
            rows.push(vec![
                m.to_string(),
                n.to_string(),
                wa.name().into(),
                wb.name().into(),
                fmt_num(v),
            ]);
        }
    }
    let mut artifacts = Vec::new();
    if cfg.wants(Format::Csv) {
        artifacts.push(Artifact::new(
            "overlaps.csv",
            csv_bytes(&["m", "n", "well_m", "well_n", "overlap"], &rows)?,
        ));
    }
    let summary = vec![format!(
        "<0_{}|0_{}> = {}",
        wa.name(),
        wb.name(),
        rows[0][4]
    )];
    Ok(ModeOutput::plain(artifacts, summary))
}

fn exact(cfg: &RunConfig) -> Result<ModeOutput> {
    let p = cfg.params_at(cfg.lambda_max)?;
    let s = exact_spectrum_values(&p, &cfg.truncation())?;
    let shown = &s.eigenvalues[..cfg.n_levels.min(s.eigenvalues.len())];
    let mut artifacts = Vec::new();
    if cfg.wants(Format::Csv) {
        let rows: Vec<Vec<String>> = shown
            .iter()
            .enumerate()
            .map(|(k, &e)| vec![k.to_string(), fmt_num(e)])
            .collect();
        artifacts.push(Artifact::new(
            "exact.csv",
            csv_bytes(&["level", "energy_over_omega0"], &rows)?,
        ));
    }
    let convergence = json!({
        "converged": s.converged,
        "n_trunc_used": s.n_trunc_used,
        "max_shift": num(s.max_shift),
        "dimension": s.dim(),
    });
    let mut summary = vec![format!(
        "n_trunc used: {}, max shift {}, ground {}",
        s.n_trunc_used,
        fmt_num(s.max_shift),
        fmt_num(shown[0])
    )];
    if !s.converged {
        summary.push("converged=false".into());
    }
    Ok(ModeOutput {
        artifacts,
        convergence,
        converged: s.converged,
        summary,
    })
}
