//! Static SVG scatter plots of solution metrics.

use std::fs;
use std::path::{Path, PathBuf};

use plotters::prelude::*;

use crate::error::{HarnessError, Result};

/// What a scatter plot needs from one solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotPoint {
    pub node_steps: f64,
    pub power_mw: f64,
    pub localized: f64,
}

impl PlotPoint {
    /// From a metrics row in CSV column order; localized counts use
    /// participants (anchors included).
    pub fn from_metrics(m: &[f64; 6]) -> Self {
        PlotPoint { node_steps: m[1], power_mw: m[2], localized: m[4] }
    }
}

#[derive(Clone, Copy)]
enum Axis {
    Time,
    Power,
    Localized,
}

impl Axis {
    fn value(self, p: &PlotPoint) -> f64 {
        match self {
            Axis::Time => p.node_steps,
            Axis::Power => p.power_mw,
            Axis::Localized => p.localized,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Axis::Time => "time (node-steps)",
            Axis::Power => "power (mW)",
            Axis::Localized => "localized nodes",
        }
    }

    fn slug(self) -> &'static str {
        match self {
            Axis::Time => "time",
            Axis::Power => "power",
            Axis::Localized => "localized",
        }
    }
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let pad = ((hi - lo) * 0.05).max(1e-6 + hi.abs() * 0.01);
    (lo - pad, hi + pad)
}

/// Blue for few localized nodes through red for many.
fn shade(localized: f64, (lo, hi): (f64, f64)) -> HSLColor {
    let t = if hi > lo { (localized - lo) / (hi - lo) } else { 1.0 };
    HSLColor(0.66 * (1.0 - t.clamp(0.0, 1.0)), 0.85, 0.45)
}

fn scatter(path: &Path, title: &str, points: &[PlotPoint], x: Axis, y: Axis) -> Result<()> {
    let plot_err = |e: &dyn std::fmt::Display| HarnessError::Plot { path: path.to_path_buf(), message: e.to_string() };
    let root = SVGBackend::new(path, (800, 600)).into_drawing_area();
    root.fill(&WHITE).map_err(|e| plot_err(&e))?;
    let xs = span(points.iter().map(|p| x.value(p)));
    let ys = span(points.iter().map(|p| y.value(p)));
    let colors = (
        points.iter().map(|p| p.localized).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.localized).fold(f64::NEG_INFINITY, f64::max),
    );
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 22))
        .margin(15)
        .x_label_area_size(45)
        .y_label_area_size(65)
        .build_cartesian_2d(xs.0..xs.1, ys.0..ys.1)
        .map_err(|e| plot_err(&e))?;
    chart.configure_mesh().x_desc(x.label()).y_desc(y.label()).draw().map_err(|e| plot_err(&e))?;
    chart
        .draw_series(
            points.iter().map(|p| Circle::new((x.value(p), y.value(p)), 4, shade(p.localized, colors).filled())),
        )
        .map_err(|e| plot_err(&e))?;
    root.present().map_err(|e| plot_err(&e))?;
    Ok(())
}

/// Writes `<stem>_<y>_vs_<x>.svg` for each metric pairing, points coloured
/// by localized count. An empty input writes nothing and warns on stderr.
pub fn emit_plots(points: &[PlotPoint], dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    if points.is_empty() {
        eprintln!("warning: no solutions to plot for {stem}");
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let pairs = [(Axis::Time, Axis::Power), (Axis::Power, Axis::Localized), (Axis::Time, Axis::Localized)];
    let mut written = Vec::new();
    for (x, y) in pairs {
        let path = dir.join(format!("{stem}_{}_vs_{}.svg", y.slug(), x.slug()));
        let title = format!("{stem}: {} vs {} ({} solutions)", y.slug(), x.slug(), points.len());
        scatter(&path, &title, points, x, y)?;
        written.push(path);
    }
    Ok(written)
}
