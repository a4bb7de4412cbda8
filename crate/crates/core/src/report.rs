//! η-sweeps and their JSON / markdown renderings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_report_from_fr, lognorm_bound_over_c};
use crate::error::{Error, Result};
use crate::figures::emit_figures;
use crate::ingest::{load_series, LoadedSeries, SeriesFile};
use crate::signal::{dft, mean_center, strong_regime_limit, NormSet, Signal};
use crate::spanner::{greedy_span, verify_span};
use crate::spectrum::large_spectrum;

/// Headline numbers for one series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub dataset: String,
    pub n: usize,
    pub mean_centered: bool,
    pub fr: f64,
    pub strong_regime_limit: f64,
    pub strong_regime: bool,
    pub norms: NormSet,
    pub spectrum_norms: NormSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub eta: f64,
    pub threshold: f64,
    pub gamma_size: usize,
    pub lambda_size: usize,
    /// Greedy construction spans Γ and the independent check agrees.
    pub spanned: bool,
    pub bound_simple_over_c: Option<f64>,
    pub bound_general_over_cprime: f64,
    pub bound_lognorm_over_c: Option<f64>,
    /// Generators in greedy order.
    pub lambda: Vec<usize>,
    /// Γ in ascending index order.
    pub gamma: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub dataset: String,
    pub n: usize,
    pub fr: f64,
    pub strong_regime: bool,
    pub mean_centered: bool,
    pub rows: Vec<SweepRow>,
}

pub fn analyze_signal(
    dataset: &str,
    signal: &Signal,
    mean_centered: bool,
) -> Result<AnalyzeReport> {
    if signal.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let spectrum = dft(signal);
    let spectrum_norms = spectrum.norms();
    let fr = spectrum_norms.l1 / spectrum_norms.l2;
    let n = signal.len();
    Ok(AnalyzeReport {
        dataset: dataset.to_string(),
        n,
        mean_centered,
        fr,
        strong_regime_limit: strong_regime_limit(n),
        strong_regime: crate::bounds::regime_check(fr, n),
        norms: signal.norms(),
        spectrum_norms,
    })
}

/// One row per η, ascending. Rows are computed in parallel.
pub fn sweep_signal(
    dataset: &str,
    signal: &Signal,
    etas: &[f64],
    mean_centered: bool,
) -> Result<SweepReport> {
    if etas.is_empty() {
        return Err(Error::InvalidParameter("empty eta list".to_string()));
    }
    if let Some(&eta) = etas.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(Error::AtEta {
            eta,
            source: Box::new(Error::InvalidEta(eta)),
        });
    }
    if signal.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let mut etas = etas.to_vec();
    etas.sort_by(f64::total_cmp);

    let spectrum = dft(signal);
    let norms = spectrum.norms();
    let fr = norms.l1 / norms.l2;
    let n = signal.len();

    let rows = etas
        .par_iter()
        .map(|&eta| {
            sweep_row(signal, &spectrum, fr, eta).map_err(|e| Error::AtEta {
                eta,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepReport {
        dataset: dataset.to_string(),
        n,
        fr,
        strong_regime: crate::bounds::regime_check(fr, n),
        mean_centered,
        rows,
    })
}

fn sweep_row(signal: &Signal, spectrum: &Signal, fr: f64, eta: f64) -> Result<SweepRow> {
    let n = signal.len();
    let gamma = large_spectrum(signal, eta)?;
    let span = greedy_span(&gamma, n)?;
    let verified = verify_span(&span, &gamma)?;
    let bounds = bound_report_from_fr(fr, n, eta)?;
    Ok(SweepRow {
        eta,
        threshold: gamma.threshold_value(),
        gamma_size: gamma.len(),
        lambda_size: span.lambda.len(),
        spanned: span.all_spanned && verified,
        bound_simple_over_c: bounds.bound_simple_over_c,
        bound_general_over_cprime: bounds.bound_general_over_cprime,
        bound_lognorm_over_c: lognorm_bound_over_c(spectrum, eta),
        lambda: span.lambda,
        gamma: gamma.sorted_indices(),
    })
}

/// Loads `input`, optionally mean-centres it, and returns the series with
/// the signal actually analysed.
pub fn load_for_analysis(
    input: &SeriesFile,
    mean_center_flag: bool,
) -> Result<(LoadedSeries, Signal)> {
    let loaded = load_series(input)?;
    let signal = if mean_center_flag {
        mean_center(&loaded.signal)
    } else {
        loaded.signal.clone()
    };
    Ok((loaded, signal))
}

pub fn dataset_label(input: &SeriesFile, loaded: &LoadedSeries) -> String {
    let stem = input
        .path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    format!("{stem}:{}", loaded.column)
}

pub fn run_analyze(input: &SeriesFile, mean_center_flag: bool) -> Result<AnalyzeReport> {
    let (loaded, signal) = load_for_analysis(input, mean_center_flag)?;
    analyze_signal(&dataset_label(input, &loaded), &signal, mean_center_flag)
}

pub fn run_sweep(
    input: &SeriesFile,
    etas: &[f64],
    mean_center_flag: bool,
) -> Result<(SweepReport, Signal)> {
    let (loaded, signal) = load_for_analysis(input, mean_center_flag)?;
    let report = sweep_signal(
        &dataset_label(input, &loaded),
        &signal,
        etas,
        mean_center_flag,
    )?;
    Ok((report, signal))
}

pub fn to_json(report: &impl Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |b| format!("{b:.4}"))
}

pub fn sweep_markdown(report: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {}", report.dataset);
    let _ = writeln!(s);
    let _ = writeln!(s, "- N = {}", report.n);
    let _ = writeln!(
        s,
        "- mean-centered: {}",
        if report.mean_centered { "yes" } else { "no" }
    );
    let _ = writeln!(s, "- FR = {:.4}", report.fr);
    let _ = writeln!(
        s,
        "- sqrt(N)/e = {:.4} ({} regime)",
        strong_regime_limit(report.n),
        if report.strong_regime {
            "strong"
        } else {
            "weak"
        }
    );
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "| eta | \\|Gamma\\| | \\|Lambda\\| | Spanned | Bound/C | Bound/C' | Lambda |"
    );
    let _ = writeln!(s, "|---:|---:|---:|:---:|---:|---:|:---|");
    for r in &report.rows {
        let lambda: Vec<String> = r.lambda.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {:.4} | {} |",
            r.eta,
            r.gamma_size,
            r.lambda_size,
            if r.spanned { "yes" } else { "NO" },
            opt(r.bound_simple_over_c),
            r.bound_general_over_cprime,
            lambda.join(", ")
        );
    }
    s
}

pub fn analyze_text(report: &AnalyzeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dataset          {}", report.dataset);
    let _ = writeln!(s, "N                {}", report.n);
    let _ = writeln!(s, "mean_centered    {}", report.mean_centered);
    let _ = writeln!(s, "FR               {:.6}", report.fr);
    let _ = writeln!(s, "sqrt(N)/e        {:.6}", report.strong_regime_limit);
    let _ = writeln!(
        s,
        "regime           {}",
        if report.strong_regime {
            "strong"
        } else {
            "weak"
        }
    );
    for (name, n) in [("f", &report.norms), ("f_hat", &report.spectrum_norms)] {
        let _ = writeln!(s, "{name:<6} l1       {:.6}", n.l1);
        let _ = writeln!(s, "{name:<6} l2       {:.6}", n.l2);
        let _ = writeln!(s, "{name:<6} l2_mu    {:.6}", n.l2_mu);
        let _ = writeln!(s, "{name:<6} lp_log   {}", opt(n.lp_log));
    }
    s
}

/// Writes `report.json`, `report.md` and the figure files into `out_dir`.
pub fn write_sweep_outputs(
    report: &SweepReport,
    signal: &Signal,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let json = out_dir.join("report.json");
    fs::write(&json, to_json(report)?)?;
    let md = out_dir.join("report.md");
    fs::write(&md, sweep_markdown(report))?;
    let mut files = vec![json, md];
    files.extend(emit_figures(report, signal, out_dir)?);
    Ok(files)
}
