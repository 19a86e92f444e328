//! Command implementations behind the `capax` binary: single-point
//! evaluation, the Figure-style sweep with CSV + plot-script output, the
//! lemma verification run, and oracle pinning. Kept as a library so the
//! acceptance suite can drive the same code paths the binary uses.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use capax_core::bounds::{bounds_report, BoundsReport};
use capax_core::capacity::{capacity_exact_tol, Branch, IntervalPair};
use capax_core::lemmas::{ke_crossovers, run_all, LemmaReport};
use capax_core::oracle::leja_capacity_estimate;

/// Shared run configuration, built from the global CLI flags.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    /// Theta-series truncation override, in [1e-16, 1e-8].
    pub tolerance: f64,
    /// Seed for the optional randomized sweeps.
    pub seed: u64,
    /// rayon thread-pool size; `None` keeps the default.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-16,
            seed: 0,
            threads: None,
        }
    }
}

impl RunConfig {
    /// Validates the tolerance range.
    pub fn validate(&self) -> Result<(), String> {
        if !(1e-16..=1e-8).contains(&self.tolerance) {
            return Err(format!(
                "tolerance must lie in [1e-16, 1e-8], got {}",
                self.tolerance
            ));
        }
        Ok(())
    }
}

/// Full 17-significant-digit rendering so CSV values survive round-trips.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

/// One evaluation record: the pair, its chart, the capacity and every
/// bound. Field order is the CSV column order.
#[derive(Debug, Clone, Serialize)]
pub struct CapRecord {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
    pub lambda: f64,
    pub cap: f64,
    /// "direct" or "reflected": which capacity formula branch ran.
    pub branch: &'static str,
    /// Whether bounds were computed on the mirrored pair.
    pub reflected: bool,
    pub lb_symmetric: Option<f64>,
    pub lb_pommerenke: f64,
    pub lb_elementary: f64,
    pub lb_solynin: f64,
    pub lb_solynin_delta: f64,
    pub ub_reflection: Option<f64>,
    pub ub_unit: f64,
    pub ub_gillis: f64,
    pub ub_main: f64,
    pub ub_elementary: f64,
}

impl CapRecord {
    pub const CSV_HEADER: &'static str = "alpha,beta,k,lambda,cap,branch,reflected,lb_symmetric,lb_pommerenke,lb_elementary,lb_solynin,lb_solynin_delta,ub_reflection,ub_unit,ub_gillis,ub_main,ub_elementary";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt17(self.alpha),
            fmt17(self.beta),
            fmt17(self.k),
            fmt17(self.lambda),
            fmt17(self.cap),
            self.branch,
            self.reflected,
            fmt_opt(self.lb_symmetric),
            fmt17(self.lb_pommerenke),
            fmt17(self.lb_elementary),
            fmt17(self.lb_solynin),
            fmt17(self.lb_solynin_delta),
            fmt_opt(self.ub_reflection),
            fmt17(self.ub_unit),
            fmt17(self.ub_gillis),
            fmt17(self.ub_main),
            fmt17(self.ub_elementary),
        )
    }
}

/// Evaluates one pair: capacity, chart and all bounds.
pub fn cap_record(alpha: f64, beta: f64, config: &RunConfig) -> capax_core::Result<CapRecord> {
    let ip = IntervalPair::new(alpha, beta)?;
    let result = capacity_exact_tol(ip, config.tolerance);
    let report = bounds_report(ip);
    Ok(CapRecord {
        alpha,
        beta,
        k: result.param.modulus.k(),
        lambda: result.param.lambda,
        cap: result.cap,
        branch: match result.branch_used {
            Branch::Direct => "direct",
            Branch::Reflected => "reflected",
        },
        reflected: report.reflected,
        lb_symmetric: report.lb_symmetric,
        lb_pommerenke: report.lb_pommerenke,
        lb_elementary: report.lb_elementary,
        lb_solynin: report.lb_solynin,
        lb_solynin_delta: report.lb_solynin_delta,
        ub_reflection: report.ub_reflection,
        ub_unit: report.ub_unit,
        ub_gillis: report.ub_gillis,
        ub_main: report.ub_main,
        ub_elementary: report.ub_elementary,
    })
}

/// Sweep request: one CSV per alpha, a beta grid per file.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub alphas: Vec<f64>,
    pub beta_count: usize,
    pub margin: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            alphas: vec![-0.7, -0.4, -0.1, 0.1, 0.4, 0.7],
            beta_count: 200,
            margin: 1e-6,
        }
    }
}

impl SweepSpec {
    /// The beta grid for one alpha: from |alpha| (symmetric edge) for
    /// negative alpha, from alpha + margin otherwise, up to 1 - margin,
    /// strictly increasing.
    pub fn beta_grid(&self, alpha: f64) -> Vec<f64> {
        let start = if alpha < 0.0 { -alpha } else { alpha + self.margin };
        let end = 1.0 - self.margin;
        let n = self.beta_count.max(2);
        (0..n)
            .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
            .collect()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.alphas.is_empty() {
            return Err("at least one alpha is required".into());
        }
        for &a in &self.alphas {
            if !(-1.0 < a && a < 1.0) {
                return Err(format!("alpha must lie in (-1, 1), got {a}"));
            }
        }
        if self.beta_count < 2 {
            return Err("points must be >= 2".into());
        }
        if !(self.margin > 0.0 && self.margin < 0.5) {
            return Err(format!("margin must lie in (0, 0.5), got {}", self.margin));
        }
        Ok(())
    }
}

/// One sweep row: beta plus the capacity and bounds at (alpha, beta).
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub beta: f64,
    pub cap: f64,
    pub bounds: BoundsReport<f64>,
}

/// Computes all rows of one panel, ordered by increasing beta.
pub fn sweep_rows(alpha: f64, spec: &SweepSpec, config: &RunConfig) -> capax_core::Result<Vec<SweepRow>> {
    spec.beta_grid(alpha)
        .into_iter()
        .map(|beta| {
            let ip = IntervalPair::new(alpha, beta)?;
            Ok(SweepRow {
                beta,
                cap: capacity_exact_tol(ip, config.tolerance).cap,
                bounds: bounds_report(ip),
            })
        })
        .collect()
}

/// Sweep CSV header (fixed schema; optional bounds render as empty cells).
pub const SWEEP_CSV_HEADER: &str = "beta,cap,lb_symmetric,lb_pommerenke,lb_elementary,lb_solynin,ub_reflection,ub_gillis,ub_main,ub_elementary";

/// Renders one panel as CSV.
pub fn render_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 200);
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let b = &row.bounds;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt17(row.beta),
            fmt17(row.cap),
            fmt_opt(b.lb_symmetric),
            fmt17(b.lb_pommerenke),
            fmt17(b.lb_elementary),
            fmt17(b.lb_solynin),
            fmt_opt(b.ub_reflection),
            fmt17(b.ub_gillis),
            fmt17(b.ub_main),
            fmt17(b.ub_elementary),
        )
        .expect("string writes cannot fail");
    }
    out
}

/// File name of one panel CSV.
pub fn sweep_file_name(alpha: f64) -> String {
    format!("alpha_{alpha:+.2}.csv")
}

/// Writes a file atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let mut tmp_name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

/// Runs the sweep and writes one CSV per alpha plus a plot script.
/// Returns the written CSV paths in alpha order.
pub fn run_sweep(spec: &SweepSpec, out_dir: &Path, config: &RunConfig) -> Result<Vec<PathBuf>, String> {
    spec.validate()?;
    fs::create_dir_all(out_dir).map_err(|e| format!("cannot create {}: {e}", out_dir.display()))?;
    let mut written = Vec::with_capacity(spec.alphas.len());
    for &alpha in &spec.alphas {
        let rows = sweep_rows(alpha, spec, config).map_err(|e| e.to_string())?;
        let path = out_dir.join(sweep_file_name(alpha));
        write_atomic(&path, &render_sweep_csv(&rows))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        written.push(path);
    }
    let script = plot_script(&spec.alphas);
    let script_path = out_dir.join("plot.py");
    write_atomic(&script_path, &script)
        .map_err(|e| format!("cannot write {}: {e}", script_path.display()))?;
    Ok(written)
}

/// Emits a small matplotlib script that draws capacity and the two
/// featured upper bounds for every panel. Generated, not executed.
fn plot_script(alphas: &[f64]) -> String {
    let mut files = String::new();
    for &a in alphas {
        let _ = writeln!(files, "    ({a}, \"{}\"),", sweep_file_name(a));
    }
    format!(
        r#"#!/usr/bin/env python3
"""Plot capacity vs beta with the main and Gillis upper bounds."""
import csv
import matplotlib.pyplot as plt

PANELS = [
{files}]

fig, axes = plt.subplots(2, 3, figsize=(12, 7), sharey=False)
for ax, (alpha, fname) in zip(axes.flat, PANELS):
    beta, cap, ub_main, ub_gillis = [], [], [], []
    with open(fname) as fh:
        for row in csv.DictReader(fh):
            beta.append(float(row["beta"]))
            cap.append(float(row["cap"]))
            ub_main.append(float(row["ub_main"]))
            ub_gillis.append(float(row["ub_gillis"]))
    ax.plot(beta, cap, "-", label="capacity")
    ax.plot(beta, ub_main, "--", label="main upper bound")
    ax.plot(beta, ub_gillis, ":", label="Gillis upper bound")
    ax.set_title(f"alpha = {{alpha}}")
    ax.set_xlabel("beta")
axes.flat[0].legend()
fig.tight_layout()
fig.savefig("sweep.png", dpi=150)
print("wrote sweep.png")
"#
    )
}

/// One line of verify output.
#[derive(Debug, Clone)]
pub struct VerifyLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Full verification outcome.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub lines: Vec<VerifyLine>,
    pub crossovers: [f64; 3],
    pub all_pass: bool,
}

/// Runs the seven lemma checks (plus the optional randomized bracketing
/// sweep) and formats one line per check. `inject_fault` flips the
/// outcome of that lemma (1-based), for harness testing.
pub fn run_verify(
    grid: usize,
    bracket_samples: usize,
    config: &RunConfig,
    inject_fault: Option<usize>,
) -> VerifyOutcome {
    let reports: Vec<LemmaReport> = run_all(grid.max(16));
    let crossovers = ke_crossovers();
    let mut lines = Vec::with_capacity(reports.len() + 1);
    for (i, report) in reports.iter().enumerate() {
        let mut pass = report.pass;
        if inject_fault == Some(i + 1) {
            pass = !pass;
        }
        let mut detail = format!(
            "max violation {:.3e} at (k, x) = ({:.6}, {:.6})",
            report.max_violation, report.worst_at.0, report.worst_at.1
        );
        if i == 3 {
            let _ = write!(
                detail,
                "; crossovers K1/K2 at k = {:.4}, K3/K4 at k = {:.4}, K4/K5 at k = {:.4}",
                crossovers[0], crossovers[1], crossovers[2]
            );
        }
        lines.push(VerifyLine {
            name: report.name.to_string(),
            pass,
            detail,
        });
    }

    if bracket_samples > 0 {
        lines.push(bracket_line(bracket_samples, config));
    }

    let all_pass = lines.iter().all(|l| l.pass);
    VerifyOutcome {
        lines,
        crossovers,
        all_pass,
    }
}

/// Seeded random-pair bracketing check: max(lower) <= cap <= min(upper).
fn bracket_line(samples: usize, config: &RunConfig) -> VerifyLine {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = (f64::NAN, f64::NAN);
    for _ in 0..samples {
        let alpha = rng.gen_range(-0.95..0.93);
        let beta = alpha + (0.97 - alpha) * rng.gen_range(0.01..0.99);
        let ip = IntervalPair::new(alpha, beta).expect("sampled pair is valid");
        let cap = capacity_exact_tol(ip, config.tolerance).cap;
        let report = bounds_report(ip);
        let violation = (report.max_lower() - cap).max(cap - report.min_upper());
        if violation > worst {
            worst = violation;
            worst_at = (alpha, beta);
        }
    }
    VerifyLine {
        name: format!("bracketing ({samples} random pairs, seed {})", config.seed),
        pass: worst <= 1e-12,
        detail: format!(
            "max violation {:.3e} at (alpha, beta) = ({:.6}, {:.6})",
            worst, worst_at.0, worst_at.1
        ),
    }
}

/// Golden record produced by `pin`.
#[derive(Debug, Clone, Serialize)]
pub struct PinRecord {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub estimate: f64,
    pub cap_exact: f64,
    pub relative_gap: f64,
}

/// Runs the transfinite-diameter oracle against the exact value.
pub fn pin_record(alpha: f64, beta: f64, n: usize, config: &RunConfig) -> capax_core::Result<PinRecord> {
    if n < 100 {
        return Err(capax_core::Error::CountTooSmall { min: 100, got: n });
    }
    let ip = IntervalPair::new(alpha, beta)?;
    let estimate = leja_capacity_estimate(ip, n)?;
    let cap_exact = capacity_exact_tol(ip, config.tolerance).cap;
    Ok(PinRecord {
        alpha,
        beta,
        n,
        estimate,
        cap_exact,
        relative_gap: (estimate - cap_exact) / cap_exact,
    })
}
