//! Deterministic CSV emission: fixed 17-significant-digit formatting, no
//! timestamps, `nan` for undefined rate entries.

use crate::error::LabError;
use crate::runner::{ConvergeOutcome, ErrorField, RunOutcome};
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use swlab_core::{Grid1D, SwState};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_rate(r: Option<f64>) -> String {
    match r {
        Some(v) => fmt_real(v),
        None => "nan".to_string(),
    }
}

/// Compact time tag for file names ("0.5", "1", "2.5").
pub fn time_tag(t: f64) -> String {
    format!("{t}")
}

fn create(path: &Path) -> Result<BufWriter<File>, LabError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_solution_csv(
    path: &Path,
    grid: &Grid1D,
    field: &[SwState],
) -> Result<(), LabError> {
    let mut w = create(path)?;
    writeln!(w, "x,h,q")?;
    for (k, v) in field.iter().enumerate() {
        writeln!(
            w,
            "{},{},{}",
            fmt_real(grid.center(k)),
            fmt_real(v.h),
            fmt_real(v.q)
        )?;
    }
    Ok(())
}

pub fn write_error_csv(path: &Path, err: &ErrorField) -> Result<(), LabError> {
    let mut w = create(path)?;
    writeln!(w, "x,log10_rel_err")?;
    for (x, e) in err.xs.iter().zip(&err.log10_rel) {
        writeln!(w, "{},{}", fmt_real(*x), fmt_real(*e))?;
    }
    Ok(())
}

pub fn write_rates_pointwise_csv(
    path: &Path,
    xs: &[f64],
    r: &[Option<f64>],
    r_ave: &[Option<f64>],
    sub_stride: usize,
) -> Result<(), LabError> {
    let mut w = create(path)?;
    writeln!(w, "x,r,r_ave,r_sub,r_ave_sub")?;
    for (j, x) in xs.iter().enumerate() {
        let sub = j % sub_stride == 0;
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_real(*x),
            fmt_rate(r[j]),
            fmt_rate(r_ave[j]),
            fmt_rate(if sub { r[j] } else { None }),
            fmt_rate(if sub { r_ave[j] } else { None }),
        )?;
    }
    Ok(())
}

pub fn write_rates_integral_csv(
    path: &Path,
    xs: &[f64],
    r_int: &[Option<f64>],
    sub_stride: usize,
) -> Result<(), LabError> {
    let mut w = create(path)?;
    writeln!(w, "x,r_int,r_int_sub")?;
    for (j, x) in xs.iter().enumerate() {
        let sub = j % sub_stride == 0;
        writeln!(
            w,
            "{},{},{}",
            fmt_real(*x),
            fmt_rate(r_int[j]),
            fmt_rate(if sub { r_int[j] } else { None }),
        )?;
    }
    Ok(())
}

/// Rows of the W^-1,1 summary: (N, ||I^N - I^2N|| or ||I^N - I^exact||, rate).
pub fn write_w11_csv(
    path: &Path,
    rows: &[(usize, f64, Option<f64>)],
) -> Result<(), LabError> {
    let mut w = create(path)?;
    writeln!(w, "N,err_L1,rate")?;
    for (n, err, rate) in rows {
        writeln!(w, "{},{},{}", n, fmt_real(*err), fmt_rate(*rate))?;
    }
    Ok(())
}

pub fn write_rough_csv(
    path: &Path,
    grid: &Grid1D,
    eps: &[f64],
    core: &[usize],
) -> Result<(), LabError> {
    let mut w = create(path)?;
    writeln!(w, "x,eps,in_core")?;
    for (k, e) in eps.iter().enumerate() {
        let in_core = core.binary_search(&k).is_ok();
        writeln!(
            w,
            "{},{},{}",
            fmt_real(grid.center(k)),
            fmt_real(*e),
            in_core as u8
        )?;
    }
    Ok(())
}

/// Writes every artifact of a single run into `dir`.
pub fn write_run(
    dir: &Path,
    out: &RunOutcome,
    errors: Option<&[(f64, ErrorField)]>,
) -> Result<Vec<PathBuf>, LabError> {
    let mut written = Vec::new();
    for (t, field) in &out.snapshots {
        let p = dir.join(format!("solution_t{}.csv", time_tag(*t)));
        write_solution_csv(&p, &out.grid, field)?;
        written.push(p);
    }
    if let Some(errs) = errors {
        for (t, e) in errs {
            let p = dir.join(format!("error_t{}.csv", time_tag(*t)));
            write_error_csv(&p, e)?;
            written.push(p);
        }
    }
    if let (Some(rough), Some(eps)) = (&out.final_rough, &out.final_eps) {
        let p = dir.join("rough.csv");
        write_rough_csv(&p, &out.grid, eps, &rough.core)?;
        written.push(p);
    }
    write_plot_script(dir)?;
    Ok(written)
}

/// Writes the rate CSVs and the W^-1,1 summary of a convergence study.
pub fn write_converge(dir: &Path, out: &ConvergeOutcome) -> Result<Vec<PathBuf>, LabError> {
    let mut written = Vec::new();
    for tr in &out.per_time {
        let tag = time_tag(tr.t);
        let p = dir.join(format!("rates_pointwise_t{tag}.csv"));
        write_rates_pointwise_csv(
            &p,
            &tr.xs,
            &tr.report.pointwise,
            &tr.report.averaged,
            tr.sub_stride,
        )?;
        written.push(p);
        let p = dir.join(format!("rates_integral_t{tag}.csv"));
        write_rates_integral_csv(&p, &tr.xs, &tr.report.integral, tr.sub_stride)?;
        written.push(p);
        let p = dir.join(format!("w11_t{tag}.csv"));
        write_w11_csv(
            &p,
            &[
                (out.n, tr.report.w11_errors[0], tr.report.w11_rate),
                (2 * out.n, tr.report.w11_errors[1], None),
            ],
        )?;
        written.push(p);
    }
    write_plot_script(dir)?;
    Ok(written)
}

/// Companion plotting script; reads the CSVs next to it, no dependency in
/// the lab itself.
pub fn write_plot_script(dir: &Path) -> Result<(), LabError> {
    let path = dir.join("plot.py");
    let mut w = create(&path)?;
    w.write_all(PLOT_SCRIPT.as_bytes())?;
    Ok(())
}

const PLOT_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Plot the CSV artifacts in this directory (solutions, error fields,
convergence rates). Requires matplotlib."""
import csv
import glob
import math
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read_csv(path):
    with open(path) as f:
        rows = list(csv.reader(f))
    header, data = rows[0], rows[1:]
    cols = {name: [] for name in header}
    for row in data:
        for name, cell in zip(header, row):
            cols[name].append(float("nan") if cell == "nan" else float(cell))
    return cols


def finite(xs, ys):
    pts = [(x, y) for x, y in zip(xs, ys) if not math.isnan(y)]
    return [p[0] for p in pts], [p[1] for p in pts]


def plot_family(pattern, ycols, ylabel, outfile, style="-"):
    paths = sorted(glob.glob(os.path.join(HERE, pattern)))
    if not paths:
        return
    fig, ax = plt.subplots(figsize=(7, 4))
    for path in paths:
        cols = read_csv(path)
        tag = os.path.basename(path).rsplit(".", 1)[0]
        for ycol in ycols:
            if ycol in cols:
                xs, ys = finite(cols["x"], cols[ycol])
                ax.plot(xs, ys, style, ms=3, lw=1, label=f"{tag}:{ycol}")
    ax.set_xlabel("x")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, outfile), dpi=150)
    plt.close(fig)


plot_family("solution_t*.csv", ["h"], "water depth h", "solutions.png")
plot_family("error_t*.csv", ["log10_rel_err"], "log10 relative error", "errors.png")
plot_family("rates_pointwise_t*.csv", ["r_ave"], "averaged pointwise rate", "rates_ave.png")
plot_family("rates_pointwise_t*.csv", ["r_sub"], "pointwise rate (subsampled)", "rates_sub.png", "o")
plot_family("rates_integral_t*.csv", ["r_int_sub"], "integral rate (subsampled)", "rates_int.png", "o")
plot_family("rough.csv", ["eps"], "detector eps", "rough.png")
print("wrote plots into", HERE)
"#;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting_is_deterministic_and_lossless() {
        let x = 1.0 / 3.0;
        let s = fmt_real(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(fmt_real(f64::NAN), "nan");
        assert_eq!(time_tag(2.5), "2.5");
        assert_eq!(time_tag(1.0), "1");
    }
}
