//! Configuration files and the artifacts written by the command-line tool.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::analysis::{BasinGrid, BasinOptions, BasinSpec, CascadeScan, ScanOptions};
use crate::cap::{AbsorptionMode, ConfigError, EngineConfig, Failure, ProofResult};
use crate::dynamics::{Point2, VectorFieldParams};
use crate::interval::{Interval, Rect};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Config { path: PathBuf, source: ConfigParseError },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ReportError + '_ {
    move |source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConfigParseError {
    /// 1-based; 0 when the problem is not tied to a single line.
    pub line: usize,
    pub message: String,
}

/// Window and resolution of the stability-region table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityGrid {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub nre: usize,
    pub nim: usize,
    pub boundary_samples: usize,
}

impl Default for StabilityGrid {
    fn default() -> Self {
        StabilityGrid {
            re_range: (-3.0, 1.0),
            im_range: (-2.0, 2.0),
            nre: 81,
            nim: 81,
            boundary_samples: 360,
        }
    }
}

/// Everything a configuration file can set.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub engine: EngineConfig,
    /// Decimal text of the step size, kept so the file round-trips.
    pub h_text: String,
    pub tiny_width: f64,
    pub basin: BasinSpec,
    pub basin_opts: BasinOptions,
    pub phase_start: (f64, f64),
    pub phase_steps: usize,
    /// `None` starts the cobweb at the critical point of `g`.
    pub cobweb_x0: Option<f64>,
    pub cobweb_steps: usize,
    pub scan_range: (f64, f64),
    pub scan_steps: usize,
    pub scan_opts: ScanOptions,
    pub stability: StabilityGrid,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            engine: EngineConfig::default(),
            h_text: "0.1".into(),
            tiny_width: 1e-6,
            basin: BasinSpec::default(),
            basin_opts: BasinOptions::default(),
            phase_start: (1.0, 1.0),
            phase_steps: 100,
            cobweb_x0: None,
            cobweb_steps: 40,
            scan_range: (10.0, 300.0),
            scan_steps: 2901,
            scan_opts: ScanOptions::default(),
            stability: StabilityGrid::default(),
        }
    }
}

impl RunConfig {
    /// Point parameters for the non-rigorous analyses.
    pub fn vector_params(&self) -> VectorFieldParams {
        VectorFieldParams {
            lambda_stiff: self.engine.lambda_stiff,
            h: self.h_text.parse().unwrap_or_else(|_| self.engine.h.mid()),
        }
    }
}

/// Shortest round-trip text for `x`, in exponent form outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !a.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn parse_f64(v: &str) -> Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("`{v}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{v}` is not finite"))
    }
}

fn parse_positive(v: &str) -> Result<f64, String> {
    let x = parse_f64(v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn parse_usize(v: &str) -> Result<usize, String> {
    v.parse().map_err(|_| format!("`{v}` is not a non-negative integer"))
}

fn parse_count(v: &str) -> Result<usize, String> {
    match parse_usize(v)? {
        0 => Err("must be at least 1".into()),
        n => Ok(n),
    }
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("`{v}` is not true or false")),
    }
}

fn set_key(cfg: &mut RunConfig, key: &str, v: &str) -> Result<(), String> {
    let e = &mut cfg.engine;
    match key {
        "h" => {
            let iv = Interval::from_decimal(v).map_err(|err| err.to_string())?;
            if !(iv.lo() > 0.0) {
                return Err(format!("must be positive, got {v}"));
            }
            e.h = iv;
            cfg.h_text = v.to_string();
        }
        "lambda" => e.lambda_stiff = parse_positive(v)?,
        "x1_diam_threshold" => e.x1_diam_threshold = parse_positive(v)?,
        "x2_diam_threshold" => e.x2_diam_threshold = parse_positive(v)?,
        "snap_threshold" => e.snap_threshold = parse_positive(v)?,
        "sink_epsilon" => e.sink_epsilon = parse_positive(v)?,
        "sink_points" => {
            let parts: Vec<&str> = v.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(format!("expected 4 comma-separated values, got {}", parts.len()));
            }
            for (slot, p) in e.sink_points.iter_mut().zip(parts) {
                *slot = parse_f64(p)?;
            }
        }
        "max_steps" => e.max_steps = parse_count(v)?,
        "absorption_mode" => e.absorption_mode = v.parse::<AbsorptionMode>()?,
        "snap_enabled" => e.snap_enabled = parse_bool(v)?,
        "max_cloud_boxes" => e.max_cloud_boxes = parse_count(v)?,
        "tiny_width" => cfg.tiny_width = parse_positive(v)?,
        "basin_x1_min" => cfg.basin.x1_range.0 = parse_f64(v)?,
        "basin_x1_max" => cfg.basin.x1_range.1 = parse_f64(v)?,
        "basin_x2_min" => cfg.basin.x2_range.0 = parse_f64(v)?,
        "basin_x2_max" => cfg.basin.x2_range.1 = parse_f64(v)?,
        "basin_nx" => cfg.basin.nx = parse_usize(v)?,
        "basin_ny" => cfg.basin.ny = parse_usize(v)?,
        "basin_capture_radius" => cfg.basin_opts.capture_radius = parse_positive(v)?,
        "basin_confirm_steps" => cfg.basin_opts.confirm_steps = parse_count(v)?,
        "basin_origin_radius" => cfg.basin_opts.origin_radius = parse_positive(v)?,
        "basin_escape_radius" => cfg.basin_opts.escape_radius = parse_positive(v)?,
        "basin_max_iter" => cfg.basin_opts.max_iter = parse_count(v)?,
        "phase_x1" => cfg.phase_start.0 = parse_f64(v)?,
        "phase_x2" => cfg.phase_start.1 = parse_f64(v)?,
        "phase_steps" => cfg.phase_steps = parse_count(v)?,
        "cobweb_x0" => {
            cfg.cobweb_x0 = match v {
                "critical" => None,
                _ => Some(parse_f64(v)?),
            }
        }
        "cobweb_steps" => cfg.cobweb_steps = parse_count(v)?,
        "scan_lambda_min" => cfg.scan_range.0 = parse_f64(v)?,
        "scan_lambda_max" => cfg.scan_range.1 = parse_f64(v)?,
        "scan_steps" => cfg.scan_steps = parse_usize(v)?,
        "scan_transient" => cfg.scan_opts.transient = parse_usize(v)?,
        "scan_record" => cfg.scan_opts.record = parse_count(v)?,
        "scan_period_tolerance" => cfg.scan_opts.period_tolerance = parse_positive(v)?,
        "scan_max_period" => cfg.scan_opts.max_period = parse_count(v)?,
        "scan_refine_transient" => cfg.scan_opts.refine_transient = parse_usize(v)?,
        "scan_refine_tolerance" => cfg.scan_opts.refine_tolerance = parse_positive(v)?,
        "stability_re_min" => cfg.stability.re_range.0 = parse_f64(v)?,
        "stability_re_max" => cfg.stability.re_range.1 = parse_f64(v)?,
        "stability_im_min" => cfg.stability.im_range.0 = parse_f64(v)?,
        "stability_im_max" => cfg.stability.im_range.1 = parse_f64(v)?,
        "stability_nre" => cfg.stability.nre = parse_count(v)?,
        "stability_nim" => cfg.stability.nim = parse_count(v)?,
        "stability_boundary_samples" => cfg.stability.boundary_samples = parse_count(v)?,
        _ => return Err(format!("unknown key `{key}`")),
    }
    Ok(())
}

fn config_error_key(e: &ConfigError) -> &'static str {
    match e {
        ConfigError::NonPositive(name) => name,
        ConfigError::SinkOutOfRange(_) => "sink_points",
        ConfigError::NoSteps => "max_steps",
    }
}

/// Parse `key = value` lines; `#` starts a comment. Absent keys keep their
/// defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigParseError> {
    let mut cfg = RunConfig::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ConfigParseError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(err(format!("expected `key = value`, got `{content}`")));
        }
        if let Some(first) = seen.insert(key.to_string(), line) {
            return Err(err(format!("duplicate key `{key}` (first set on line {first})")));
        }
        set_key(&mut cfg, key, value).map_err(|m| err(format!("{key}: {m}")))?;
    }
    cfg.engine.validate().map_err(|e| ConfigParseError {
        line: seen.get(config_error_key(&e)).copied().unwrap_or(0),
        message: e.to_string(),
    })?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig, ReportError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_config(&text).map_err(|source| ReportError::Config {
        path: path.to_path_buf(),
        source,
    })
}

/// Every key with its current value, in a form [`parse_config`] reads back.
pub fn emit_config(cfg: &RunConfig) -> String {
    let e = &cfg.engine;
    let sinks: Vec<String> = e.sink_points.iter().map(|&s| fmt_f64(s)).collect();
    let cobweb = cfg.cobweb_x0.map_or("critical".to_string(), fmt_f64);
    let entries: Vec<(&str, String)> = vec![
        ("h", cfg.h_text.clone()),
        ("lambda", fmt_f64(e.lambda_stiff)),
        ("x1_diam_threshold", fmt_f64(e.x1_diam_threshold)),
        ("x2_diam_threshold", fmt_f64(e.x2_diam_threshold)),
        ("snap_threshold", fmt_f64(e.snap_threshold)),
        ("sink_epsilon", fmt_f64(e.sink_epsilon)),
        ("sink_points", sinks.join(", ")),
        ("max_steps", e.max_steps.to_string()),
        ("absorption_mode", e.absorption_mode.to_string()),
        ("snap_enabled", e.snap_enabled.to_string()),
        ("max_cloud_boxes", e.max_cloud_boxes.to_string()),
        ("tiny_width", fmt_f64(cfg.tiny_width)),
        ("basin_x1_min", fmt_f64(cfg.basin.x1_range.0)),
        ("basin_x1_max", fmt_f64(cfg.basin.x1_range.1)),
        ("basin_x2_min", fmt_f64(cfg.basin.x2_range.0)),
        ("basin_x2_max", fmt_f64(cfg.basin.x2_range.1)),
        ("basin_nx", cfg.basin.nx.to_string()),
        ("basin_ny", cfg.basin.ny.to_string()),
        ("basin_capture_radius", fmt_f64(cfg.basin_opts.capture_radius)),
        ("basin_confirm_steps", cfg.basin_opts.confirm_steps.to_string()),
        ("basin_origin_radius", fmt_f64(cfg.basin_opts.origin_radius)),
        ("basin_escape_radius", fmt_f64(cfg.basin_opts.escape_radius)),
        ("basin_max_iter", cfg.basin_opts.max_iter.to_string()),
        ("phase_x1", fmt_f64(cfg.phase_start.0)),
        ("phase_x2", fmt_f64(cfg.phase_start.1)),
        ("phase_steps", cfg.phase_steps.to_string()),
        ("cobweb_x0", cobweb),
        ("cobweb_steps", cfg.cobweb_steps.to_string()),
        ("scan_lambda_min", fmt_f64(cfg.scan_range.0)),
        ("scan_lambda_max", fmt_f64(cfg.scan_range.1)),
        ("scan_steps", cfg.scan_steps.to_string()),
        ("scan_transient", cfg.scan_opts.transient.to_string()),
        ("scan_record", cfg.scan_opts.record.to_string()),
        ("scan_period_tolerance", fmt_f64(cfg.scan_opts.period_tolerance)),
        ("scan_max_period", cfg.scan_opts.max_period.to_string()),
        ("scan_refine_transient", cfg.scan_opts.refine_transient.to_string()),
        ("scan_refine_tolerance", fmt_f64(cfg.scan_opts.refine_tolerance)),
        ("stability_re_min", fmt_f64(cfg.stability.re_range.0)),
        ("stability_re_max", fmt_f64(cfg.stability.re_range.1)),
        ("stability_im_min", fmt_f64(cfg.stability.im_range.0)),
        ("stability_im_max", fmt_f64(cfg.stability.im_range.1)),
        ("stability_nre", cfg.stability.nre.to_string()),
        ("stability_nim", cfg.stability.nim.to_string()),
        ("stability_boundary_samples", cfg.stability.boundary_samples.to_string()),
    ];
    let mut out = String::new();
    for (k, v) in entries {
        let _ = writeln!(out, "{k} = {v}");
    }
    out
}

fn failure_note(f: Option<&Failure>) -> String {
    match f {
        Some(Failure::StepLimit { steps, remaining }) => {
            format!("{remaining} boxes remain after {steps} steps")
        }
        Some(Failure::Explosion { step, .. }) => format!("combinatorial explosion at step {step}"),
        Some(Failure::Unbounded { step, .. }) => format!("enclosure lost at step {step}"),
        None => "unknown failure".into(),
    }
}

fn push_rows(out: &mut Vec<String>, r: &ProofResult) {
    for s in &r.history {
        let label = if s.step == 1 { r.label.as_str() } else { "" };
        out.push(format!(
            "    {label} & {} & {} & {} & {} \\\\",
            s.step, s.active, s.absorbed, s.snapped
        ));
    }
}

fn push_banner(out: &mut Vec<String>, style: &str, text: &str) {
    out.push(format!("    \\multicolumn{{5}}{{c}}{{\\{style}{{{text}}}}} \\\\"));
}

/// The table of cloud statistics, one row per step. Either run may be empty,
/// in which case its section is left out.
pub fn emit_latex_table(run1: &[ProofResult], run2: &[ProofResult]) -> String {
    let mut out: Vec<String> = vec![
        r"\begin{table}[ht]".into(),
        r"  \centering".into(),
        r"  \begin{tabular*}{\textwidth}{@{\extracolsep{\fill}} l r r r r @{}}".into(),
        r"    \toprule".into(),
        r"    \textbf{Initial Set} & \textbf{Step} & \textbf{Active Boxes} & \textbf{Absorbed} & \textbf{Snapped} \\".into(),
        r"    \midrule".into(),
    ];
    if !run1.is_empty() {
        push_banner(&mut out, "textbf", "Run 1: Invariance of Sink Neighborhoods");
        out.push(r"    \midrule".into());
        for r in run1 {
            push_rows(&mut out, r);
        }
        out.push(r"    \midrule".into());
        match run1.iter().find(|r| !r.success) {
            None => push_banner(&mut out, "textit", "Success: All sink neighborhoods fully invariant."),
            Some(r) => push_banner(
                &mut out,
                "textit",
                &format!("Failure: {} not invariant ({}).", r.label, failure_note(r.failure.as_ref())),
            ),
        }
        if !run2.is_empty() {
            out.push(r"    \midrule".into());
        }
    }
    if !run2.is_empty() {
        push_banner(&mut out, "textbf", "Run 2: Trajectory of (1,1)");
        out.push(r"    \midrule".into());
        for r in run2 {
            push_rows(&mut out, r);
        }
        out.push(r"    \midrule".into());
        match run2.iter().find(|r| !r.success) {
            None => push_banner(&mut out, "textit", "Success: Cloud fully absorbed."),
            Some(r) => push_banner(
                &mut out,
                "textit",
                &format!("Failure: cloud not absorbed ({}).", failure_note(r.failure.as_ref())),
            ),
        }
    }
    out.extend([
        r"    \bottomrule".to_string(),
        r"  \end{tabular*}".into(),
        r"  \vspace{0.5em}".into(),
        r"  \caption{Dynamics of the interval cloud during the computer-assisted proof. The cloud is fully absorbed by the period-4 sink.}".into(),
        r"  \label{tab:cap_output}".into(),
        r"\end{table}".into(),
    ]);
    out.join("\n")
}

fn csv_bytes<F>(header: &[&str], fill: F) -> Result<Vec<u8>, ReportError>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<(), csv::Error>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    fill(&mut w)?;
    w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))
}

pub fn proof_history_csv(results: &[ProofResult]) -> Result<Vec<u8>, ReportError> {
    csv_bytes(&["run_label", "step", "active", "absorbed", "snapped"], |w| {
        for r in results {
            for s in &r.history {
                w.write_record([
                    r.label.clone(),
                    s.step.to_string(),
                    s.active.to_string(),
                    s.absorbed.to_string(),
                    s.snapped.to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

/// Binary PGM, top row at the largest `x2`.
pub fn basin_pgm(grid: &BasinGrid) -> Vec<u8> {
    let (nx, ny) = (grid.spec.nx, grid.spec.ny);
    let mut out = format!("P5\n{nx} {ny}\n255\n").into_bytes();
    for j in (0..ny).rev() {
        out.extend((0..nx).map(|i| grid.get(i, j).gray()));
    }
    out
}

pub fn basin_csv(grid: &BasinGrid) -> Result<Vec<u8>, ReportError> {
    csv_bytes(&["x1", "x2", "class"], |w| {
        for j in 0..grid.spec.ny {
            for i in 0..grid.spec.nx {
                let c = grid.spec.cell_center(i, j);
                w.write_record([fmt_f64(c.x1), fmt_f64(c.x2), grid.get(i, j).as_str().to_string()])?;
            }
        }
        Ok(())
    })
}

pub fn phase_csv(points: &[Point2]) -> Result<Vec<u8>, ReportError> {
    csv_bytes(&["step", "x1", "x2"], |w| {
        for (k, p) in points.iter().enumerate() {
            w.write_record([k.to_string(), fmt_f64(p.x1), fmt_f64(p.x2)])?;
        }
        Ok(())
    })
}

pub fn cobweb_csv(vertices: &[(f64, f64)]) -> Result<Vec<u8>, ReportError> {
    csv_bytes(&["vertex", "x", "y"], |w| {
        for (k, &(x, y)) in vertices.iter().enumerate() {
            w.write_record([k.to_string(), fmt_f64(x), fmt_f64(y)])?;
        }
        Ok(())
    })
}

pub fn bifurcation_csv(scan: &CascadeScan) -> Result<Vec<u8>, ReportError> {
    csv_bytes(&["lambda", "orbit_value"], |w| {
        for (l, samples) in scan.lambda_values.iter().zip(&scan.attractor_samples) {
            for v in samples {
                w.write_record([fmt_f64(*l), fmt_f64(*v)])?;
            }
        }
        Ok(())
    })
}

/// `R(z) = 1 + z + z²/2` for complex `z`.
pub fn stability_r_complex(z: Complex64) -> Complex64 {
    1.0 + z * (1.0 + z / 2.0)
}

/// Points of `|R(z)| = 1`: `z = -1 ± sqrt(2 e^{iθ} - 1)` for `n` angles.
pub fn stability_boundary(n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        let w = (2.0 * Complex64::from_polar(1.0, theta) - 1.0).sqrt();
        out.push(-1.0 + w);
        out.push(-1.0 - w);
    }
    out
}

fn axis_value(range: (f64, f64), n: usize, k: usize) -> f64 {
    if n == 1 {
        range.0
    } else {
        range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64
    }
}

pub fn stability_csv(grid: &StabilityGrid) -> Result<Vec<u8>, ReportError> {
    csv_bytes(&["kind", "re", "im", "abs_r"], |w| {
        for j in 0..grid.nim {
            let im = axis_value(grid.im_range, grid.nim, j);
            for i in 0..grid.nre {
                let re = axis_value(grid.re_range, grid.nre, i);
                let r = stability_r_complex(Complex64::new(re, im)).norm();
                w.write_record(["grid".to_string(), fmt_f64(re), fmt_f64(im), fmt_f64(r)])?;
            }
        }
        for z in stability_boundary(grid.boundary_samples) {
            let r = stability_r_complex(z).norm();
            w.write_record(["boundary".to_string(), fmt_f64(z.re), fmt_f64(z.im), fmt_f64(r)])?;
        }
        Ok(())
    })
}

/// `n` points drawn uniformly from `b`, reproducible from `seed`.
pub fn sample_box(b: &Rect, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            (
                rng.gen_range(b.x1.lo()..=b.x1.hi()),
                rng.gen_range(b.x2.lo()..=b.x2.hi()),
            )
        })
        .collect()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub path: PathBuf,
    pub format: &'static str,
    pub sha256: String,
}

/// Collects written files for the run manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub config: String,
    pub outputs: Vec<OutputRecord>,
    pub wall_time: f64,
}

impl RunManifest {
    pub fn new(command: String, cfg: &RunConfig) -> Self {
        RunManifest {
            command,
            config: emit_config(cfg),
            outputs: Vec::new(),
            wall_time: 0.0,
        }
    }

    /// Write `bytes` to `dir/name` and record its hash.
    pub fn write(&mut self, dir: &Path, name: &str, format: &'static str, bytes: &[u8]) -> Result<PathBuf, ReportError> {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).map_err(io_err(&path))?;
        f.write_all(bytes).map_err(io_err(&path))?;
        self.outputs.push(OutputRecord {
            path: path.clone(),
            format,
            sha256: sha256_hex(bytes),
        });
        Ok(path)
    }

    pub fn render(&self) -> String {
        let mut out = format!("command = {}\n\n[config]\n{}\n[outputs]\n", self.command, self.config);
        for o in &self.outputs {
            let name = o.path.file_name().map_or_else(|| o.path.display().to_string(), |n| n.to_string_lossy().into_owned());
            let _ = writeln!(out, "{name} {} sha256:{}", o.format, o.sha256);
        }
        let _ = writeln!(out, "\nwall_time = {:.3}", self.wall_time);
        out
    }

    pub fn save(&self, dir: &Path) -> Result<PathBuf, ReportError> {
        let path = dir.join("manifest.txt");
        fs::write(&path, self.render()).map_err(io_err(&path))?;
        Ok(path)
    }
}
