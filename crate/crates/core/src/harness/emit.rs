use std::fs::{self, File, OpenOptions};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::experiments::{Report, RateReport, CoverageReport};
use super::svg;
use crate::bounds::pac_failure_probability;
use crate::datagen::fmt_f64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmitFormat {
    Csv,
    Json,
    Svg,
}

impl EmitFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            EmitFormat::Csv => "csv",
            EmitFormat::Json => "json",
            EmitFormat::Svg => "svg",
        }
    }

    /// Parses a comma-separated list such as `csv,json,svg`.
    pub fn parse_list(s: &str) -> Result<Vec<EmitFormat>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let f: EmitFormat = part.parse()?;
            if !out.contains(&f) {
                out.push(f);
            }
        }
        if out.is_empty() {
            return Err(Error::Config("no output format given".into()));
        }
        Ok(out)
    }
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(EmitFormat::Csv),
            "json" => Ok(EmitFormat::Json),
            "svg" | "svg_plot" => Ok(EmitFormat::Svg),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

/// Exclusive marker file held for the duration of a run; removed on drop.
#[derive(Debug)]
pub struct RunLock {
    path: PathBuf,
}

impl RunLock {
    pub const FILE_NAME: &'static str = ".stabilab.lock";

    pub fn acquire(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(Self::FILE_NAME);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(Self { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                Err(Error::precondition(format!("{} is locked by another run ({})", dir.display(), path.display())))
            }
            Err(e) => Err(e.into()),
        }
    }
}

impl Drop for RunLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn opt_f(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn table(report: &Report) -> (Vec<&'static str>, Vec<Vec<String>>) {
    match report {
        Report::Coverage(r) => (
            vec![
                "n",
                "x",
                "threshold",
                "reps",
                "exceedances",
                "exceedance_rate",
                "failure_bound",
                "half_width",
                "vacuous",
                "max_ratio",
                "sound",
            ],
            r.rows
                .iter()
                .map(|w| {
                    vec![
                        w.n.to_string(),
                        fmt_f64(w.x),
                        fmt_f64(w.threshold),
                        w.reps.to_string(),
                        w.exceedances.to_string(),
                        fmt_f64(w.exceedance_rate),
                        fmt_f64(w.failure_bound),
                        fmt_f64(w.half_width),
                        w.vacuous.to_string(),
                        fmt_f64(w.max_ratio),
                        w.sound.to_string(),
                    ]
                })
                .collect(),
        ),
        Report::Rate(r) => (
            vec!["n", "median_deviation", "mean_deviation", "reps", "slope", "slope_ci_low", "slope_ci_high"],
            r.rows
                .iter()
                .map(|w| {
                    vec![
                        w.n.to_string(),
                        fmt_f64(w.median_deviation),
                        fmt_f64(w.mean_deviation),
                        w.reps.to_string(),
                        fmt_f64(r.slope),
                        fmt_f64(r.slope_ci.0),
                        fmt_f64(r.slope_ci.1),
                    ]
                })
                .collect(),
        ),
        Report::StabilitySweep(r) => (
            vec!["algo", "q", "n", "lambda_or_k", "s_q_hat", "std_error", "gamma_theory", "dominated"],
            r.rows
                .iter()
                .map(|w| {
                    vec![
                        w.algo.clone(),
                        fmt_f64(w.q),
                        w.n.to_string(),
                        fmt_f64(w.lambda_or_k),
                        opt_f(w.s_q_hat),
                        opt_f(w.std_error),
                        opt_f(w.gamma_theory),
                        w.dominated.map(|d| d.to_string()).unwrap_or_else(|| "skipped".into()),
                    ]
                })
                .collect(),
        ),
        Report::EfronStein(r) => (
            vec!["f", "n", "q", "lhs", "rhs", "lhs_se", "rhs_se", "pass"],
            r.rows
                .iter()
                .map(|w| {
                    vec![
                        w.f.clone(),
                        w.n.to_string(),
                        fmt_f64(w.q),
                        fmt_f64(w.lhs),
                        fmt_f64(w.rhs),
                        fmt_f64(w.lhs_se),
                        fmt_f64(w.rhs_se),
                        w.pass.to_string(),
                    ]
                })
                .collect(),
        ),
        Report::BoundsTable(r) => (
            vec!["bound_name", "b_x", "lambda", "eta", "n", "q_or_x", "value", "vacuous"],
            r.rows
                .iter()
                .map(|w| {
                    vec![
                        w.bound_name.clone(),
                        fmt_f64(w.b_x),
                        fmt_f64(w.lambda),
                        fmt_f64(w.eta),
                        opt(w.n),
                        opt_f(w.q_or_x),
                        fmt_f64(w.value),
                        w.vacuous.to_string(),
                    ]
                })
                .collect(),
        ),
    }
}

fn write_csv(report: &Report, path: &Path) -> Result<()> {
    let (header, rows) = table(report);
    let mut w = csv::Writer::from_writer(File::create(path)?);
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn rate_svg(r: &RateReport) -> String {
    let pts: Vec<(usize, f64)> = r.rows.iter().map(|w| (w.n, w.median_deviation)).collect();
    svg::rate_plot(&pts, r.slope, r.intercept)
}

fn coverage_svg(r: &CoverageReport) -> String {
    let mut ns: Vec<usize> = r.rows.iter().map(|w| w.n).collect();
    ns.dedup();
    let series: Vec<(usize, Vec<(f64, f64)>)> = ns
        .iter()
        .map(|&n| (n, r.rows.iter().filter(|w| w.n == n).map(|w| (w.x, w.exceedance_rate)).collect()))
        .collect();
    let mut xs: Vec<f64> = r.rows.iter().map(|w| w.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let reference: Vec<(f64, f64)> = xs.iter().map(|&x| (x, pac_failure_probability(x))).collect();
    svg::coverage_plot(&series, &reference)
}

/// Writes `<kind>_<base_seed>.<ext>` for each format and returns the paths.
///
/// Only coverage and rate reports have a figure; asking for SVG on any other
/// report writes nothing for that format.
pub fn emit_report(report: &Report, formats: &[EmitFormat], out_dir: &Path) -> Result<Vec<PathBuf>> {
    if report.is_empty() {
        return Err(Error::precondition("refusing to emit an empty report"));
    }
    fs::create_dir_all(out_dir)?;
    let stem = format!("{}_{}", report.kind().as_str(), report.base_seed());
    let mut written = Vec::new();
    for &format in formats {
        let path = out_dir.join(format!("{stem}.{}", format.extension()));
        match format {
            EmitFormat::Csv => write_csv(report, &path)?,
            EmitFormat::Json => {
                let mut text = serde_json::to_string_pretty(report)?;
                text.push('\n');
                fs::write(&path, text)?;
            }
            EmitFormat::Svg => {
                let text = match report {
                    Report::Rate(r) => rate_svg(r),
                    Report::Coverage(r) => coverage_svg(r),
                    _ => {
                        log::info!("no figure for {} reports", report.kind().as_str());
                        continue;
                    }
                };
                fs::write(&path, text)?;
            }
        }
        written.push(path);
    }
    Ok(written)
}
