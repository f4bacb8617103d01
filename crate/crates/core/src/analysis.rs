//! Plain floating-point exploration of the discrete dynamics.
//!
//! Nothing in this module is rigorous. It locates the attracting cycle of the
//! restricted map, rasterises the basin of the period-4 sink, produces phase
//! and cobweb data and scans the stiffness parameter for the period-doubling
//! cascade.

use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{heun_map, restricted_map_g, restricted_poly, Point2, VectorFieldParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("no stable cycle found for lambda = {lambda} after {iterations} iterations")]
    NoStableCycle { lambda: f64, iterations: usize },
    #[error("restricted map has no critical point for lambda = {lambda}")]
    NoCriticalPoint { lambda: f64 },
    #[error("cycle of period {period} is not attracting (multiplier {multiplier})")]
    Unstable { period: usize, multiplier: f64 },
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;

/// Bisection on a sign change of `f` in `[lo, hi]` down to `tol` (or until
/// the midpoint is no longer representable strictly inside).
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let f_lo_positive = f(lo) > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == f_lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The interior maximum of the restricted map: the first positive root of
/// `g'`.
pub fn critical_point_of_g(params: &VectorFieldParams) -> Result<f64> {
    let d1 = restricted_poly(params).derivative();
    let step = 0.01;
    let mut x = 0.0;
    if d1.eval(x) <= 0.0 {
        return Err(AnalysisError::NoCriticalPoint {
            lambda: params.lambda_stiff,
        });
    }
    while x < 1e4 {
        let next = x + step;
        if d1.eval(next) <= 0.0 {
            return Ok(bisect(|t| d1.eval(t), x, next, 1e-12));
        }
        x = next;
    }
    Err(AnalysisError::NoCriticalPoint {
        lambda: params.lambda_stiff,
    })
}

/// The positive root `r*` of the restricted map; `[0, r*]` is invariant.
pub fn positive_root_of_g(params: &VectorFieldParams) -> Result<f64> {
    let c = critical_point_of_g(params)?;
    let g = |x| restricted_map_g(x, params);
    let mut hi = c.max(20.0);
    while g(hi) >= 0.0 {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(AnalysisError::InvalidInput("restricted map has no positive root".into()));
        }
    }
    Ok(bisect(g, c, hi, 1e-12))
}

/// Smallest `p <= max_period` such that the window repeats with period `p`
/// to within `tol`.
pub fn detect_period(window: &[f64], max_period: usize, tol: f64) -> Option<usize> {
    (1..=max_period.min(window.len() / 2)).find(|&p| {
        window
            .iter()
            .zip(&window[p..])
            .all(|(a, b)| (a - b).abs() < tol)
    })
}

/// Attracting periodic orbit of the restricted map, in cycle order.
#[derive(Debug, Clone, PartialEq)]
pub struct SinkOrbit {
    pub points: Vec<f64>,
    /// `max |g^p(x_i) - x_i|`.
    pub residual: f64,
    /// `∏ g'(x_i)`.
    pub multiplier: f64,
}

impl SinkOrbit {
    pub fn period(&self) -> usize {
        self.points.len()
    }
}

fn iterate_g(x: f64, n: usize, params: &VectorFieldParams) -> f64 {
    (0..n).fold(x, |y, _| restricted_map_g(y, params))
}

/// Newton on `g^p(x) - x`, falling back to bisection whenever a step leaves
/// the current bracket.
fn polish_cycle_point(x0: f64, period: usize, params: &VectorFieldParams) -> f64 {
    let d1 = restricted_poly(params).derivative();
    let residual = |x: f64| iterate_g(x, period, params) - x;
    let slope = |x: f64| {
        let mut y = x;
        let mut prod = 1.0;
        for _ in 0..period {
            prod *= d1.eval(y);
            y = restricted_map_g(y, params);
        }
        prod - 1.0
    };
    let delta = 1e-6 * (1.0 + x0.abs());
    let (mut lo, mut hi) = (x0 - delta, x0 + delta);
    let bracketed = residual(lo).signum() != residual(hi).signum();
    let mut x = x0;
    for _ in 0..100 {
        let r = residual(x);
        if r == 0.0 {
            break;
        }
        if bracketed {
            if r.signum() == residual(lo).signum() {
                lo = x;
            } else {
                hi = x;
            }
        }
        let mut next = x - r / slope(x);
        if bracketed && !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == x {
            break;
        }
        x = next;
    }
    x
}

pub const SINK_TRANSIENT: usize = 500;
pub const SINK_MAX_ITER: usize = 10_000;

/// Follow the critical orbit to its attracting cycle and polish each point.
///
/// The cycle starts at the point nearest the critical point.
pub fn find_sink_orbit(params: &VectorFieldParams) -> Result<SinkOrbit> {
    let lambda = params.lambda_stiff;
    let c = critical_point_of_g(params)?;
    let g = |x| restricted_map_g(x, params);
    let mut x = iterate_g(c, SINK_TRANSIENT, params);
    let mut iterations = SINK_TRANSIENT;
    let period = loop {
        if !x.is_finite() || x.abs() > 1e6 || iterations >= SINK_MAX_ITER {
            return Err(AnalysisError::NoStableCycle { lambda, iterations });
        }
        let window: Vec<f64> = std::iter::successors(Some(x), |&y| Some(g(y)))
            .take(256)
            .collect();
        if let Some(p) = detect_period(&window, 64, 1e-9) {
            break p;
        }
        x = g(window[255]);
        iterations += 256;
    };
    let cycle: Vec<f64> = std::iter::successors(Some(x), |&y| Some(g(y)))
        .take(period)
        .collect();
    let start = cycle
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - c).abs().total_cmp(&(b.1 - c).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let points: Vec<f64> = (0..period)
        .map(|k| polish_cycle_point(cycle[(start + k) % period], period, params))
        .collect();
    let d1 = restricted_poly(params).derivative();
    let multiplier = points.iter().map(|&p| d1.eval(p)).product::<f64>();
    let residual = points
        .iter()
        .map(|&p| (iterate_g(p, period, params) - p).abs())
        .fold(0.0, f64::max);
    if multiplier.abs() >= 1.0 {
        return Err(AnalysisError::Unstable { period, multiplier });
    }
    Ok(SinkOrbit {
        points,
        residual,
        multiplier,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasinClass {
    Sink,
    Origin,
    Escaped,
    Undecided,
}

impl BasinClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasinClass::Sink => "sink",
            BasinClass::Origin => "origin",
            BasinClass::Escaped => "escaped",
            BasinClass::Undecided => "undecided",
        }
    }

    /// Grey level used in PGM output.
    pub fn gray(&self) -> u8 {
        match self {
            BasinClass::Sink => 255,
            BasinClass::Origin => 128,
            BasinClass::Escaped => 64,
            BasinClass::Undecided => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasinOptions {
    /// ℓ∞ radius of the capture ball around each orbit point `(0, p_i)`.
    pub capture_radius: f64,
    /// Consecutive steps inside the capture balls needed to classify a sink.
    pub confirm_steps: usize,
    pub origin_radius: f64,
    pub escape_radius: f64,
    pub max_iter: usize,
}

impl Default for BasinOptions {
    fn default() -> Self {
        BasinOptions {
            capture_radius: 0.1,
            confirm_steps: 8,
            origin_radius: 1e-6,
            escape_radius: 1e3,
            max_iter: 2000,
        }
    }
}

/// Ranges and resolution of a basin raster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasinSpec {
    pub x1_range: (f64, f64),
    pub x2_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl Default for BasinSpec {
    fn default() -> Self {
        BasinSpec {
            x1_range: (0.0, 9.0),
            x2_range: (0.0, 9.0),
            nx: 300,
            ny: 300,
        }
    }
}

impl BasinSpec {
    /// Centre of cell `(i, j)`; `j` counts upward in `x2`.
    pub fn cell_center(&self, i: usize, j: usize) -> Point2 {
        let dx = (self.x1_range.1 - self.x1_range.0) / self.nx as f64;
        let dy = (self.x2_range.1 - self.x2_range.0) / self.ny as f64;
        Point2::new(
            self.x1_range.0 + (i as f64 + 0.5) * dx,
            self.x2_range.0 + (j as f64 + 0.5) * dy,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasinGrid {
    pub spec: BasinSpec,
    /// Row-major, `cells[j * nx + i]`, `j = 0` at the bottom.
    pub cells: Vec<BasinClass>,
}

impl BasinGrid {
    pub fn get(&self, i: usize, j: usize) -> BasinClass {
        self.cells[j * self.spec.nx + i]
    }
}

fn in_capture(p: Point2, sink: &SinkOrbit, radius: f64) -> bool {
    p.x1.abs() < radius && sink.points.iter().any(|&s| (p.x2 - s).abs() < radius)
}

pub fn classify_point(
    p0: Point2,
    params: &VectorFieldParams,
    sink: &SinkOrbit,
    opts: &BasinOptions,
) -> BasinClass {
    let mut p = p0;
    let mut inside = 0;
    for _ in 0..opts.max_iter {
        p = heun_map(p, params);
        if !p.is_finite() || p.sup_norm() > opts.escape_radius {
            return BasinClass::Escaped;
        }
        if p.sup_norm() < opts.origin_radius {
            return BasinClass::Origin;
        }
        if in_capture(p, sink, opts.capture_radius) {
            inside += 1;
            if inside >= opts.confirm_steps {
                return BasinClass::Sink;
            }
        } else {
            inside = 0;
        }
    }
    BasinClass::Undecided
}

pub fn basin_raster(
    spec: &BasinSpec,
    params: &VectorFieldParams,
    sink: &SinkOrbit,
    opts: &BasinOptions,
) -> Result<BasinGrid> {
    if spec.nx < 2 || spec.ny < 2 {
        return Err(AnalysisError::InvalidInput(
            "basin resolution must be at least 2 per axis".into(),
        ));
    }
    if !(spec.x1_range.0 < spec.x1_range.1 && spec.x2_range.0 < spec.x2_range.1) {
        return Err(AnalysisError::InvalidInput("empty basin range".into()));
    }
    let cells = (0..spec.nx * spec.ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % spec.nx, k / spec.nx);
            classify_point(spec.cell_center(i, j), params, sink, opts)
        })
        .collect();
    Ok(BasinGrid { spec: *spec, cells })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<Point2>,
    /// The orbit overflowed and was truncated.
    pub escaped: bool,
}

/// `p0, F(p0), ..., F^n(p0)`, truncated at the first non-finite point.
pub fn phase_trajectory(p0: Point2, n: usize, params: &VectorFieldParams) -> Trajectory {
    let mut points = Vec::with_capacity(n + 1);
    points.push(p0);
    let mut p = p0;
    for _ in 0..n {
        p = heun_map(p, params);
        if !p.is_finite() {
            return Trajectory {
                points,
                escaped: true,
            };
        }
        points.push(p);
    }
    Trajectory {
        points,
        escaped: false,
    }
}

/// Cobweb polyline `(x0,x0) → (x0,x1) → (x1,x1) → (x1,x2) → ...` for `n`
/// iterations of the restricted map.
pub fn cobweb_data(x0: f64, n: usize, params: &VectorFieldParams) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(2 * n + 1);
    let mut x = x0;
    out.push((x, x));
    for _ in 0..n {
        let next = restricted_map_g(x, params);
        out.push((x, next));
        out.push((next, next));
        x = next;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub transient: usize,
    pub record: usize,
    pub period_tolerance: f64,
    pub max_period: usize,
    /// Transient used while bisecting for a doubling parameter.
    pub refine_transient: usize,
    /// Width of the final bracket around each doubling parameter.
    pub refine_tolerance: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            transient: 1000,
            record: 256,
            period_tolerance: 1e-6,
            max_period: 64,
            refine_transient: 100_000,
            refine_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CascadeScan {
    pub lambda_values: Vec<f64>,
    /// Post-transient orbit of the critical point, one list per λ.
    pub attractor_samples: Vec<Vec<f64>>,
    pub periods: Vec<Option<usize>>,
    pub doubling_lambdas: Vec<f64>,
    /// `(λ_n - λ_{n-1}) / (λ_{n+1} - λ_n)`.
    pub delta_estimates: Vec<f64>,
}

/// Orbit of the critical point of `g_λ` after `transient` steps, or `None`
/// if it escapes.
pub fn attractor_window(lambda: f64, base: &VectorFieldParams, transient: usize, record: usize) -> Option<Vec<f64>> {
    let params = VectorFieldParams {
        lambda_stiff: lambda,
        ..*base
    };
    let mut x = critical_point_of_g(&params).ok()?;
    for _ in 0..transient {
        x = restricted_map_g(x, &params);
        if !x.is_finite() || x.abs() > 1e6 {
            return None;
        }
    }
    let mut window = Vec::with_capacity(record);
    for _ in 0..record {
        window.push(x);
        x = restricted_map_g(x, &params);
        if !x.is_finite() || x.abs() > 1e6 {
            return None;
        }
    }
    Some(window)
}

/// Attractor period of `g_λ` from the critical point, `None` for escaping,
/// chaotic or long-period orbits.
pub fn period_at(lambda: f64, base: &VectorFieldParams, transient: usize, opts: &ScanOptions) -> Option<usize> {
    let window = attractor_window(lambda, base, transient, opts.record)?;
    detect_period(&window, opts.max_period, opts.period_tolerance)
}

/// Parameter where the attractor period changes from `p` (at `lo`) to `2p`
/// (at `hi`).
fn refine_doubling(mut lo: f64, mut hi: f64, p: usize, base: &VectorFieldParams, opts: &ScanOptions) -> f64 {
    while hi - lo > opts.refine_tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if period_at(mid, base, opts.refine_transient, opts) == Some(p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locate every doubling between `(lo, p_lo)` and `(hi, p_hi)` where
/// `p_hi = p_lo * 2^k`.
fn locate_doublings(
    lo: f64,
    p_lo: usize,
    hi: f64,
    p_hi: usize,
    base: &VectorFieldParams,
    opts: &ScanOptions,
    depth: usize,
    out: &mut Vec<f64>,
) {
    if p_hi == 2 * p_lo {
        out.push(refine_doubling(lo, hi, p_lo, base, opts));
        return;
    }
    if depth == 0 {
        return;
    }
    let mid = 0.5 * (lo + hi);
    match period_at(mid, base, opts.refine_transient, opts) {
        Some(pm) if pm >= p_lo && pm <= p_hi && is_doubling_chain(p_lo, pm) && is_doubling_chain(pm, p_hi) => {
            if pm > p_lo {
                locate_doublings(lo, p_lo, mid, pm, base, opts, depth - 1, out);
            }
            if p_hi > pm {
                locate_doublings(mid, pm, hi, p_hi, base, opts, depth - 1, out);
            }
        }
        _ => {}
    }
}

/// Starting from period `p` at `lo`, repeatedly find where the period stops
/// being `p` below `hi` and confirm that `2p` follows.
fn extend_cascade(mut lo: f64, mut p: usize, hi: f64, base: &VectorFieldParams, opts: &ScanOptions, out: &mut Vec<f64>) {
    while 2 * p <= opts.max_period {
        if period_at(hi, base, opts.refine_transient, opts) == Some(p) {
            return;
        }
        let edge = refine_doubling(lo, hi, p, base, opts);
        let confirmed = [1e-8, 1e-7, 1e-6, 1e-5]
            .iter()
            .map(|d| edge + d * (hi - lo))
            .find(|&l| l < hi && period_at(l, base, opts.refine_transient, opts) == Some(2 * p));
        let Some(above) = confirmed else { return };
        out.push(edge);
        lo = above;
        p *= 2;
    }
}

fn is_doubling_chain(p: usize, q: usize) -> bool {
    q.is_multiple_of(p) && (q / p).is_power_of_two()
}

/// Sweep λ over `[lambda_lo, lambda_hi]` in `steps` evenly spaced values and
/// locate the period doublings of the main cascade.
pub fn bifurcation_scan(
    lambda_lo: f64,
    lambda_hi: f64,
    steps: usize,
    base: &VectorFieldParams,
    opts: &ScanOptions,
) -> Result<CascadeScan> {
    if !(lambda_lo < lambda_hi) || steps < 2 {
        return Err(AnalysisError::InvalidInput(
            "scan needs lambda_lo < lambda_hi and at least 2 steps".into(),
        ));
    }
    let lambda_values: Vec<f64> = (0..steps)
        .map(|i| lambda_lo + (lambda_hi - lambda_lo) * i as f64 / (steps - 1) as f64)
        .collect();
    let attractor_samples: Vec<Vec<f64>> = lambda_values
        .par_iter()
        .map(|&l| attractor_window(l, base, opts.transient, opts.record).unwrap_or_default())
        .collect();
    let periods: Vec<Option<usize>> = attractor_samples
        .iter()
        .map(|w| detect_period(w, opts.max_period, opts.period_tolerance))
        .collect();

    // Follow the main cascade: 1 → 2 → 4 → ..., skipping undecided values,
    // until a period appears that is not a doubling of the current one.
    let mut brackets = Vec::new();
    let mut current: Option<(usize, usize)> = None;
    for (k, &p) in periods.iter().enumerate() {
        let Some(p) = p else { continue };
        match current {
            None if p == 1 => current = Some((k, 1)),
            None => {}
            Some((_, q)) if p == q => current = Some((k, q)),
            Some((k_prev, q)) if p > q && is_doubling_chain(q, p) => {
                brackets.push((lambda_values[k_prev], q, lambda_values[k], p));
                current = Some((k, p));
            }
            Some(_) => break,
        }
    }
    let mut doubling_lambdas: Vec<f64> = brackets
        .par_iter()
        .map(|&(a, pa, b, pb)| {
            let mut found = Vec::new();
            locate_doublings(a, pa, b, pb, base, opts, 16, &mut found);
            found
        })
        .flatten()
        .collect();
    // Doublings finer than the grid spacing, between the last grid value
    // still on the cascade and its successor.
    if let Some((k, p)) = current {
        if k + 1 < lambda_values.len() {
            extend_cascade(lambda_values[k], p, lambda_values[k + 1], base, opts, &mut doubling_lambdas);
        }
    }
    doubling_lambdas.sort_by(f64::total_cmp);
    doubling_lambdas.dedup();
    let delta_estimates = doubling_lambdas
        .windows(3)
        .map(|w| (w[1] - w[0]) / (w[2] - w[1]))
        .collect();
    Ok(CascadeScan {
        lambda_values,
        attractor_samples,
        periods,
        doubling_lambdas,
        delta_estimates,
    })
}
