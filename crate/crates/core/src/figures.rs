//! Static SVG figures with CSV sidecars holding the plotted points.
//!
//! Two figures per sweep: the raw series, and one panel per η with the
//! elements of Γ marked as red dots. Output is byte-deterministic.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::SweepReport;
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    SeriesPlot,
    GammaDots,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Panel {
    pub eta: f64,
    pub highlighted: Vec<usize>,
}

/// Points behind one figure. `y` holds the real part of the signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureData {
    pub kind: FigureKind,
    pub x: Vec<usize>,
    pub y: Vec<f64>,
    pub panels: Vec<Panel>,
}

pub fn figure_data(report: &SweepReport, signal: &Signal) -> Result<[FigureData; 2]> {
    let n = signal.len();
    if report.n != n {
        return Err(Error::ModulusMismatch {
            span: report.n,
            spectrum: n,
        });
    }
    let x: Vec<usize> = (0..n).collect();
    let y: Vec<f64> = signal.values().iter().map(|z| z.re).collect();
    let panels = report
        .rows
        .iter()
        .map(|r| Panel {
            eta: r.eta,
            highlighted: r.gamma.iter().copied().filter(|&i| i < n).collect(),
        })
        .collect();
    Ok([
        FigureData {
            kind: FigureKind::SeriesPlot,
            x: x.clone(),
            y: y.clone(),
            panels: Vec::new(),
        },
        FigureData {
            kind: FigureKind::GammaDots,
            x,
            y,
            panels,
        },
    ])
}

const WIDTH: f64 = 900.0;
const PANEL_HEIGHT: f64 = 220.0;
const MARGIN: f64 = 40.0;

struct Frame {
    top: f64,
    n: usize,
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, i: usize) -> f64 {
        let span = (self.n.max(2) - 1) as f64;
        MARGIN + (WIDTH - 2.0 * MARGIN) * i as f64 / span
    }

    fn y(&self, v: f64) -> f64 {
        let h = PANEL_HEIGHT - 2.0 * MARGIN;
        self.top + MARGIN + h * (self.hi - v) / (self.hi - self.lo)
    }
}

fn value_range(y: &[f64]) -> (f64, f64) {
    let lo = y.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn panel(svg: &mut String, data: &FigureData, top: f64, title: &str, dots: Option<&[usize]>) {
    let (lo, hi) = value_range(&data.y);
    let f = Frame {
        top,
        n: data.x.len(),
        lo,
        hi,
    };
    let _ = writeln!(
        svg,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#888"/>"##,
        MARGIN,
        top + MARGIN,
        WIDTH - 2.0 * MARGIN,
        PANEL_HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12">{}</text>"##,
        MARGIN,
        top + MARGIN - 8.0,
        title
    );
    let _ = writeln!(
        svg,
        r##"<text x="4" y="{:.2}" font-family="monospace" font-size="10">{:.3}</text><text x="4" y="{:.2}" font-family="monospace" font-size="10">{:.3}</text>"##,
        f.y(hi) + 4.0,
        hi,
        f.y(lo),
        lo
    );
    let mut points = String::new();
    for (&i, &v) in data.x.iter().zip(&data.y) {
        let _ = write!(points, "{:.2},{:.2} ", f.x(i), f.y(v));
    }
    let _ = writeln!(
        svg,
        r##"<polyline fill="none" stroke="{}" stroke-width="1" points="{}"/>"##,
        if dots.is_some() { "#aaa" } else { "#1f4e99" },
        points.trim_end()
    );
    for &i in dots.unwrap_or(&[]) {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="red"/>"##,
            f.x(i),
            f.y(data.y[i])
        );
    }
}

pub fn render_svg(data: &FigureData, title: &str) -> String {
    let panels = data.panels.len().max(1);
    let height = PANEL_HEIGHT * panels as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"##
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="white"/>"##);
    match data.kind {
        FigureKind::SeriesPlot => panel(&mut svg, data, 0.0, title, None),
        FigureKind::GammaDots => {
            for (k, p) in data.panels.iter().enumerate() {
                let label = format!(
                    "{title}  eta = {}  |Gamma| = {}",
                    p.eta,
                    p.highlighted.len()
                );
                panel(
                    &mut svg,
                    data,
                    PANEL_HEIGHT * k as f64,
                    &label,
                    Some(&p.highlighted),
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Writes `series.svg`, `series.csv`, `gamma.svg` and `gamma_points.csv`.
pub fn emit_figures(report: &SweepReport, signal: &Signal, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let [series, gamma] = figure_data(report, signal)?;
    fs::create_dir_all(out_dir)?;
    let title = xml_escape(&report.dataset);

    let mut series_csv = String::from("index,value\n");
    for (i, v) in series.x.iter().zip(&series.y) {
        let _ = writeln!(series_csv, "{i},{v}");
    }
    let mut gamma_csv = String::from("eta,index,value\n");
    for p in &gamma.panels {
        for &i in &p.highlighted {
            let _ = writeln!(gamma_csv, "{},{i},{}", p.eta, gamma.y[i]);
        }
    }

    let files = [
        ("series.svg", render_svg(&series, &title)),
        ("series.csv", series_csv),
        ("gamma.svg", render_svg(&gamma, &title)),
        ("gamma_points.csv", gamma_csv),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (name, body) in files {
        let path = out_dir.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::sweep_signal;

    #[test]
    fn one_panel_per_eta_and_empty_rows_are_fine() {
        let f = Signal::from_real(&[1.0, 4.0, 2.0, 9.0, 1.0]).unwrap();
        // η = 5 is above every sample's level, leaving Γ empty.
        let r = sweep_signal("t", &f, &[0.5, 1.0, 5.0], false).unwrap();
        assert_eq!(r.rows[2].gamma_size, 0);
        let [series, gamma] = figure_data(&r, &f).unwrap();
        assert!(series.panels.is_empty());
        assert_eq!(gamma.panels.len(), 3);
        let svg = render_svg(&gamma, "t");
        assert_eq!(svg.matches("<polyline").count(), 3);
        let dots: usize = r.rows.iter().map(|row| row.gamma_size).sum();
        assert_eq!(svg.matches("<circle").count(), dots);
    }

    #[test]
    fn mismatched_signal_is_rejected() {
        let f = Signal::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let r = sweep_signal("t", &f, &[1.0], false).unwrap();
        let g = Signal::from_real(&[1.0, 2.0]).unwrap();
        assert!(figure_data(&r, &g).is_err());
    }

    #[test]
    fn constant_series_renders() {
        let f = Signal::from_real(&[2.0; 4]).unwrap();
        let r = sweep_signal("flat", &f, &[1.0], false).unwrap();
        let [series, _] = figure_data(&r, &f).unwrap();
        let svg = render_svg(&series, "flat");
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
