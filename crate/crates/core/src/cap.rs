//! Set-oriented computer-assisted proof.
//!
//! A cloud of boxes is pushed through the interval enclosure of the Heun map.
//! After each image is computed it is tested for absorption into a sink
//! neighbourhood, optionally snapped onto the invariant `x2` axis, and then
//! bisected back below the width thresholds. Pieces are deduplicated by their
//! exact endpoints. The proof succeeds once the cloud is empty.

use std::fmt;

use rayon::prelude::*;

use crate::dynamics::{heun_map_iv, IntervalParams};
use crate::interval::{sub_down, sub_up, Interval, IntervalError, Rect, RectKey};

/// Period-4 orbit of the restricted map, in cycle order.
pub const SINK_POINTS: [f64; 4] = [
    4.613677692731402,
    7.214907799688287,
    3.9654987245283035,
    6.9704245174643379,
];

/// Upper end of the invariant interval `[0, r*]` of the restricted map.
pub const INVARIANT_BOUND: f64 = 8.31177;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbsorptionMode {
    /// `max(|x1.lo|, |mid(x2) - s|) < ε`, exactly the listing's test.
    PaperFaithful,
    /// The whole image lies in the open ℓ∞ ball of radius ε about `(0, s)`.
    StrictContainment,
}

impl AbsorptionMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            AbsorptionMode::PaperFaithful => "paper_faithful",
            AbsorptionMode::StrictContainment => "strict_containment",
        }
    }
}

impl fmt::Display for AbsorptionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AbsorptionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper_faithful" => Ok(AbsorptionMode::PaperFaithful),
            "strict_containment" => Ok(AbsorptionMode::StrictContainment),
            other => Err(format!(
                "unknown absorption mode `{other}` (expected paper_faithful or strict_containment)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub h: Interval,
    pub lambda_stiff: f64,
    pub x1_diam_threshold: f64,
    pub x2_diam_threshold: f64,
    pub snap_threshold: f64,
    pub sink_epsilon: f64,
    pub sink_points: [f64; 4],
    pub max_steps: usize,
    pub absorption_mode: AbsorptionMode,
    pub snap_enabled: bool,
    /// Abort with a combinatorial-explosion failure above this many boxes.
    pub max_cloud_boxes: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            h: Interval::from_decimal("0.1").expect("literal"),
            lambda_stiff: 30.0,
            x1_diam_threshold: 0.1,
            x2_diam_threshold: 0.1,
            snap_threshold: 0.4,
            sink_epsilon: 1.3,
            sink_points: SINK_POINTS,
            max_steps: 250,
            absorption_mode: AbsorptionMode::PaperFaithful,
            snap_enabled: true,
            max_cloud_boxes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("`{0}` must be positive")]
    NonPositive(&'static str),
    #[error("sink point {0} lies outside (0, {INVARIANT_BOUND})")]
    SinkOutOfRange(f64),
    #[error("max_steps must be at least 1")]
    NoSteps,
}

impl EngineConfig {
    /// Defaults with the listing's absorption test (same as `default()`).
    pub fn paper_faithful() -> Self {
        EngineConfig {
            absorption_mode: AbsorptionMode::PaperFaithful,
            ..Default::default()
        }
    }

    /// Defaults with rigorous ball containment.
    pub fn strict() -> Self {
        EngineConfig {
            absorption_mode: AbsorptionMode::StrictContainment,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("h", self.h.lo()),
            ("lambda", self.lambda_stiff),
            ("x1_diam_threshold", self.x1_diam_threshold),
            ("x2_diam_threshold", self.x2_diam_threshold),
            ("snap_threshold", self.snap_threshold),
            ("sink_epsilon", self.sink_epsilon),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ConfigError::NonPositive(name));
            }
        }
        for &s in &self.sink_points {
            if !(s > 0.0 && s < INVARIANT_BOUND) {
                return Err(ConfigError::SinkOutOfRange(s));
            }
        }
        if self.max_steps == 0 {
            return Err(ConfigError::NoSteps);
        }
        if self.max_cloud_boxes == 0 {
            return Err(ConfigError::NonPositive("max_cloud_boxes"));
        }
        Ok(())
    }

    pub fn interval_params(&self) -> IntervalParams {
        IntervalParams {
            h: self.h,
            lambda_stiff: Interval::point(self.lambda_stiff).expect("validated stiffness"),
        }
    }
}

/// Deduplicated set of boxes, kept sorted by [`RectKey`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Cloud {
    boxes: Vec<Rect>,
}

impl Cloud {
    /// A cloud holding `b` as given, without splitting it.
    pub fn initial(b: Rect) -> Self {
        Cloud { boxes: vec![b] }
    }

    pub fn from_boxes(mut boxes: Vec<Rect>) -> Self {
        boxes.sort_unstable_by_key(|b| b.key());
        boxes.dedup_by_key(|b| b.key());
        Cloud { boxes }
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[Rect] {
        &self.boxes
    }

    pub fn keys(&self) -> impl Iterator<Item = RectKey> + '_ {
        self.boxes.iter().map(|b| b.key())
    }

    pub fn contains_point(&self, p: (f64, f64)) -> bool {
        self.boxes.iter().any(|b| b.contains(p))
    }

    pub fn hull(&self) -> Option<Rect> {
        let (first, rest) = self.boxes.split_first()?;
        Some(rest.iter().fold(*first, |h, b| h.hull(b)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepStats {
    pub step: usize,
    /// Boxes in the cloud after this step.
    pub active: usize,
    pub absorbed: usize,
    pub snapped: usize,
    /// Boxes that entered the step.
    pub incoming: usize,
    /// Images that survived absorption; `incoming == absorbed + kept`.
    pub kept: usize,
    /// Pieces produced by splitting, before deduplication.
    pub pieces: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    StepLimit { steps: usize, remaining: usize },
    Explosion { step: usize, boxes: usize },
    Unbounded { step: usize, error: IntervalError },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::StepLimit { steps, remaining } => {
                write!(f, "{remaining} boxes remain after {steps} steps")
            }
            Failure::Explosion { step, boxes } => {
                write!(f, "combinatorial explosion: {boxes} boxes at step {step}")
            }
            Failure::Unbounded { step, error } => {
                write!(f, "enclosure lost at step {step}: {error}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofResult {
    pub label: String,
    pub success: bool,
    pub history: Vec<StepStats>,
    pub peak_active: usize,
    pub failure: Option<Failure>,
}

impl ProofResult {
    pub fn steps(&self) -> usize {
        self.history.len()
    }

    pub fn total_snapped(&self) -> usize {
        self.history.iter().map(|s| s.snapped).sum()
    }
}

/// Is the sink point `s` within ε of the image under the configured test?
fn near_sink(b: &Rect, s: f64, cfg: &EngineConfig) -> bool {
    let eps = cfg.sink_epsilon;
    match cfg.absorption_mode {
        AbsorptionMode::PaperFaithful => {
            let x1_val = b.x1.lo();
            let x2_val = b.x2.mid();
            x1_val.abs().max((x2_val - s).abs()) < eps
        }
        AbsorptionMode::StrictContainment => {
            // every endpoint difference is rounded away from the ball centre
            b.x1.lo() > -eps
                && b.x1.hi() < eps
                && sub_down(b.x2.lo(), s) > -eps
                && sub_up(b.x2.hi(), s) < eps
        }
    }
}

pub fn absorb_check(b: &Rect, cfg: &EngineConfig) -> bool {
    cfg.sink_points.iter().any(|&s| near_sink(b, s, cfg))
}

/// Project a box that has come close to the `x2` axis onto it.
///
/// Returns the (possibly replaced) box and whether a snap happened.
pub fn snap_to_axis(b: Rect, cfg: &EngineConfig) -> (Rect, bool) {
    let (lo, hi) = (b.x1.lo(), b.x1.hi());
    if 0.0 < hi && hi < cfg.snap_threshold {
        if lo >= 0.0 {
            return (Rect::new(Interval::ZERO, b.x2), true);
        }
        log::debug!("not snapping {b:?}: x1 extent crosses the axis");
    }
    (b, false)
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepError {
    Unbounded(IntervalError),
    Explosion(usize),
}

/// Image of one box after the absorption and snap stages; `None` when the
/// image was absorbed.
fn advance_box(b: &Rect, cfg: &EngineConfig, params: &IntervalParams) -> Result<Option<(Rect, bool)>, IntervalError> {
    let image = heun_map_iv(b, params)?;
    if absorb_check(&image, cfg) {
        return Ok(None);
    }
    Ok(Some(if cfg.snap_enabled {
        snap_to_axis(image, cfg)
    } else {
        (image, false)
    }))
}

/// Advance the cloud by one application of the map.
///
/// Boxes are processed in parallel on the current rayon pool; the result and
/// the counters do not depend on the processing order. The number of pieces
/// is computed before any splitting so an exploding step fails without
/// materialising the pieces.
pub fn step_cloud(cloud: &Cloud, cfg: &EngineConfig, step: usize) -> Result<(Cloud, StepStats), StepError> {
    let params = cfg.interval_params();
    let (t1, t2) = (cfg.x1_diam_threshold, cfg.x2_diam_threshold);
    let images: Vec<Option<(Rect, bool)>> = cloud
        .boxes
        .par_iter()
        .map(|b| advance_box(b, cfg, &params))
        .collect::<Result<_, _>>()
        .map_err(StepError::Unbounded)?;

    let survivors: Vec<Rect> = images.iter().flatten().map(|&(r, _)| r).collect();
    let absorbed = images.len() - survivors.len();
    let snapped = images.iter().flatten().filter(|(_, s)| *s).count();
    let n_pieces = survivors
        .iter()
        .map(|r| r.split_count(t1, t2))
        .fold(0usize, usize::saturating_add);
    if n_pieces > cfg.max_cloud_boxes {
        return Err(StepError::Explosion(n_pieces));
    }
    let pieces: Vec<Rect> = survivors
        .par_iter()
        .flat_map_iter(|r| r.split(t1, t2))
        .collect();
    let n_pieces = pieces.len();
    let next = Cloud::from_boxes(pieces);
    let stats = StepStats {
        step,
        active: next.len(),
        absorbed,
        snapped,
        incoming: cloud.len(),
        kept: survivors.len(),
        pieces: n_pieces,
    };
    Ok((next, stats))
}

/// Iterate [`step_cloud`] from `b0` until the cloud empties or the step
/// budget runs out. `observe` sees the cloud after every step.
pub fn prove_absorption_with<F>(b0: Rect, cfg: &EngineConfig, label: &str, mut observe: F) -> ProofResult
where
    F: FnMut(&StepStats, &Cloud),
{
    let mut cloud = Cloud::initial(b0);
    let mut history = Vec::new();
    let mut peak = 0;
    let finish = |history, peak, failure: Option<Failure>| ProofResult {
        label: label.to_string(),
        success: failure.is_none(),
        history,
        peak_active: peak,
        failure,
    };
    for step in 1..=cfg.max_steps {
        match step_cloud(&cloud, cfg, step) {
            Ok((next, stats)) => {
                observe(&stats, &next);
                peak = peak.max(stats.active);
                history.push(stats);
                cloud = next;
                if cloud.is_empty() {
                    return finish(history, peak, None);
                }
            }
            Err(StepError::Unbounded(error)) => {
                return finish(history, peak, Some(Failure::Unbounded { step, error }));
            }
            Err(StepError::Explosion(boxes)) => {
                return finish(history, peak, Some(Failure::Explosion { step, boxes }));
            }
        }
    }
    let remaining = cloud.len();
    finish(
        history,
        peak,
        Some(Failure::StepLimit {
            steps: cfg.max_steps,
            remaining,
        }),
    )
}

pub fn prove_absorption(b0: Rect, cfg: &EngineConfig, label: &str) -> ProofResult {
    prove_absorption_with(b0, cfg, label, |_, _| {})
}

/// `[0, ε] × [s - ε, s + ε]`, built as `[0,0] × [s,s] + [0,ε] × [-ε,ε]`.
pub fn sink_neighbourhood(s: f64, eps: f64) -> Result<Rect, IntervalError> {
    let offset = Rect::from_bounds(0.0, eps, -eps, eps)?;
    Ok(Rect::new(
        Interval::ZERO.add(&offset.x1)?,
        Interval::point(s)?.add(&offset.x2)?,
    ))
}

/// Outcome of the invariance runs, one proof per sink point.
#[derive(Debug, Clone, PartialEq)]
pub struct SinkInvariance {
    pub results: Vec<ProofResult>,
}

impl SinkInvariance {
    pub fn success(&self) -> bool {
        self.results.iter().all(|r| r.success)
    }

    /// Zero-based index of the first sink whose neighbourhood failed.
    pub fn failed_sink(&self) -> Option<usize> {
        self.results.iter().position(|r| !r.success)
    }
}

pub fn run_sink_invariance(cfg: &EngineConfig) -> Result<SinkInvariance, IntervalError> {
    let mut results = Vec::with_capacity(cfg.sink_points.len());
    for (i, &s) in cfg.sink_points.iter().enumerate() {
        let b0 = sink_neighbourhood(s, cfg.sink_epsilon)?;
        results.push(prove_absorption(b0, cfg, &format!("Sink Point {}", i + 1)));
    }
    Ok(SinkInvariance { results })
}

pub const TRAJECTORY_LABEL: &str = "Box around $(1,1)$";

/// `[0.78, 1.22]^2`, with the decimal endpoints rounded outward.
pub fn trajectory_box() -> Rect {
    let lo = Interval::from_decimal("0.78").expect("literal").lo();
    let hi = Interval::from_decimal("1.22").expect("literal").hi();
    Rect::from_bounds(lo, hi, lo, hi).expect("ordered literals")
}

/// Square of width `width` centred on `(1, 1)`.
pub fn tiny_box(width: f64) -> Rect {
    let half = width / 2.0;
    let lo = 1.0 - half;
    let hi = 1.0 + half;
    Rect::from_bounds(lo, hi, lo, hi).expect("finite width")
}

pub fn run_trajectory_proof(cfg: &EngineConfig) -> ProofResult {
    prove_absorption(trajectory_box(), cfg, TRAJECTORY_LABEL)
}

/// Largest ℓ∞ distance from any point of the cloud to the nearest orbit
/// point `(0, s)`; the measured counterpart of the neighbourhood radius.
pub fn cloud_orbit_distance(cloud: &Cloud, sink_points: &[f64]) -> Option<f64> {
    cloud
        .boxes()
        .iter()
        .map(|b| {
            sink_points
                .iter()
                .map(|&s| {
                    let dx = b.x1.mag();
                    let dy = sub_up(b.x2.hi(), s).max(sub_up(s, b.x2.lo()));
                    dx.max(dy)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(f64::max)
}

/// Does the point lie in the open ℓ∞ ball of radius ε about some `(0, s)`?
pub fn in_sink_ball(p: (f64, f64), cfg: &EngineConfig) -> bool {
    let eps = cfg.sink_epsilon;
    cfg.sink_points
        .iter()
        .any(|&s| p.0.abs() < eps && (p.1 - s).abs() < eps)
}

/// Shadowing check: every sampled orbit must stay inside the cloud at each
/// step of the proof until it is absorbed into a sink ball.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowReport {
    pub proof: ProofResult,
    pub checked: usize,
    pub violations: Vec<(usize, usize)>,
}

/// Uniform-grid lookup over a cloud for repeated point queries.
struct PointIndex<'a> {
    boxes: &'a [Rect],
    origin: (f64, f64),
    cell: (f64, f64),
    dims: (usize, usize),
    buckets: Vec<Vec<u32>>,
    oversized: Vec<u32>,
}

impl<'a> PointIndex<'a> {
    const MAX_SPAN: usize = 16;

    fn new(cloud: &'a Cloud) -> Self {
        let boxes = cloud.boxes();
        let hull = cloud.hull().unwrap_or_else(|| Rect::point(0.0, 0.0).expect("origin"));
        let side = ((boxes.len() as f64).sqrt().ceil() as usize).clamp(1, 2048);
        let origin = (hull.x1.lo(), hull.x2.lo());
        let cell = (
            (hull.x1.width() / side as f64).max(f64::MIN_POSITIVE),
            (hull.x2.width() / side as f64).max(f64::MIN_POSITIVE),
        );
        let mut index = PointIndex {
            boxes,
            origin,
            cell,
            dims: (side, side),
            buckets: vec![Vec::new(); side * side],
            oversized: Vec::new(),
        };
        for (k, b) in boxes.iter().enumerate() {
            let (i0, i1) = (index.col(b.x1.lo()), index.col(b.x1.hi()));
            let (j0, j1) = (index.row(b.x2.lo()), index.row(b.x2.hi()));
            if (i1 - i0 + 1) * (j1 - j0 + 1) > Self::MAX_SPAN {
                index.oversized.push(k as u32);
                continue;
            }
            for j in j0..=j1 {
                for i in i0..=i1 {
                    index.buckets[j * side + i].push(k as u32);
                }
            }
        }
        index
    }

    fn col(&self, x: f64) -> usize {
        (((x - self.origin.0) / self.cell.0).floor().max(0.0) as usize).min(self.dims.0 - 1)
    }

    fn row(&self, y: f64) -> usize {
        (((y - self.origin.1) / self.cell.1).floor().max(0.0) as usize).min(self.dims.1 - 1)
    }

    fn contains(&self, p: (f64, f64)) -> bool {
        if self.boxes.is_empty() || !p.0.is_finite() || !p.1.is_finite() {
            return false;
        }
        // neighbouring cells too, so rounding in col/row cannot miss a box
        let (i, j) = (self.col(p.0), self.row(p.1));
        let hit = |k: &u32| self.boxes[*k as usize].contains(p);
        for jj in j.saturating_sub(1)..=(j + 1).min(self.dims.1 - 1) {
            for ii in i.saturating_sub(1)..=(i + 1).min(self.dims.0 - 1) {
                if self.buckets[jj * self.dims.0 + ii].iter().any(hit) {
                    return true;
                }
            }
        }
        self.oversized.iter().any(hit)
    }
}

pub fn shadow_check(b0: Rect, cfg: &EngineConfig, samples: &[(f64, f64)]) -> ShadowReport {
    use crate::dynamics::{heun_map, Point2, VectorFieldParams};
    let params = VectorFieldParams {
        lambda_stiff: cfg.lambda_stiff,
        h: cfg.h.mid(),
    };
    // `None` once the orbit has been absorbed
    let mut orbit: Vec<Option<Point2>> = samples.iter().map(|&(a, b)| Some(Point2::new(a, b))).collect();
    let mut violations = Vec::new();
    let mut checked = 0;
    let proof = prove_absorption_with(b0, cfg, "shadow", |stats, cloud| {
        let index = PointIndex::new(cloud);
        for (i, slot) in orbit.iter_mut().enumerate() {
            let Some(p) = slot else { continue };
            *p = heun_map(*p, &params);
            checked += 1;
            let q = (p.x1, p.x2);
            if index.contains(q) {
                continue;
            }
            // outside the cloud the point must be in a ball; its box was
            // absorbed there, so later iterates are no longer tracked
            if !in_sink_ball(q, cfg) {
                violations.push((stats.step, i));
            }
            *slot = None;
        }
    });
    ShadowReport {
        proof,
        checked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(a: f64, b: f64, c: f64, d: f64) -> Rect {
        Rect::from_bounds(a, b, c, d).unwrap()
    }

    #[test]
    fn absorption_examples() {
        for cfg in [EngineConfig::strict(), EngineConfig::paper_faithful()] {
            assert!(absorb_check(&rect(0.0, 0.05, 4.60, 4.65), &cfg));
            assert!(!absorb_check(&rect(0.0, 0.05, 0.0, 0.05), &cfg));
        }
    }

    #[test]
    fn strict_absorption_rejects_the_boundary() {
        let cfg = EngineConfig {
            sink_points: [4.0, 4.0, 4.0, 4.0],
            sink_epsilon: 1.0,
            ..EngineConfig::strict()
        };
        assert!(absorb_check(&rect(0.0, 0.5, 3.5, 4.5), &cfg));
        // touches the ball boundary x2 = s + ε
        assert!(!absorb_check(&rect(0.0, 0.5, 3.5, 5.0), &cfg));
        assert!(!absorb_check(&rect(0.0, 1.0, 3.5, 4.5), &cfg));
        assert!(!absorb_check(&rect(-1.0, 0.0, 3.5, 4.5), &cfg));
    }

    #[test]
    fn paper_faithful_uses_lower_x1_and_midpoint() {
        let cfg = EngineConfig::paper_faithful();
        // huge x2 extent, but its midpoint is at the sink
        let b = rect(0.0, 5.0, 0.0, 2.0 * SINK_POINTS[0]);
        assert!(absorb_check(&b, &cfg));
        assert!(!absorb_check(&b, &EngineConfig::strict()));
    }

    #[test]
    fn snap_examples() {
        let cfg = EngineConfig::default();
        let (b, s) = snap_to_axis(rect(0.01, 0.3, 5.0, 5.1), &cfg);
        assert!(s);
        assert_eq!(b, rect(0.0, 0.0, 5.0, 5.1));
        let axis = rect(0.0, 0.0, 5.0, 5.1);
        assert_eq!(snap_to_axis(axis, &cfg), (axis, false));
        let far = rect(0.2, 0.5, 5.0, 5.1);
        assert_eq!(snap_to_axis(far, &cfg), (far, false));
        let straddle = rect(-0.01, 0.2, 5.0, 5.1);
        assert_eq!(snap_to_axis(straddle, &cfg), (straddle, false));
    }

    #[test]
    fn box_in_sink_ball_is_absorbed_immediately() {
        let cfg = EngineConfig::default();
        let s = SINK_POINTS[0];
        let cloud = Cloud::initial(rect(0.0, 0.01, s - 0.01, s + 0.01));
        let (next, stats) = step_cloud(&cloud, &cfg, 1).unwrap();
        assert!(next.is_empty());
        assert_eq!(stats.absorbed, 1);
    }

    #[test]
    fn origin_is_never_absorbed() {
        let cfg = EngineConfig {
            max_steps: 20,
            ..Default::default()
        };
        let r = prove_absorption(Rect::point(0.0, 0.0).unwrap(), &cfg, "origin");
        assert!(!r.success);
        assert!(r.history.iter().all(|s| s.active == 1 && s.absorbed == 0));
        assert!(matches!(r.failure, Some(Failure::StepLimit { steps: 20, remaining: 1 })));
    }

    #[test]
    fn degenerate_box_at_sink_point() {
        for cfg in [EngineConfig::strict(), EngineConfig::paper_faithful()] {
            let s = SINK_POINTS[2];
            let r = prove_absorption(Rect::point(0.0, s).unwrap(), &cfg, "sink");
            assert!(r.success);
            assert_eq!(r.steps(), 1);
        }
    }

    #[test]
    fn sink_neighbourhood_matches_listing_construction() {
        let b = sink_neighbourhood(SINK_POINTS[0], 1.3).unwrap();
        assert_eq!(b.x1, Interval::new(0.0, 1.3).unwrap());
        assert!(b.x2.lo() <= SINK_POINTS[0] - 1.3 && b.x2.hi() >= SINK_POINTS[0] + 1.3);
    }

    #[test]
    fn trajectory_box_encloses_decimals() {
        let b = trajectory_box();
        assert!(b.x1.lo() <= 0.78 && b.x1.hi() >= 1.22);
        assert_eq!(b.x1, b.x2);
    }

    #[test]
    fn config_validation() {
        assert!(EngineConfig::default().validate().is_ok());
        let bad = EngineConfig {
            sink_epsilon: -1.0,
            ..Default::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::NonPositive("sink_epsilon")));
        let bad = EngineConfig {
            sink_points: [1.0, 2.0, 3.0, 9.0],
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = EngineConfig {
            max_steps: 0,
            ..Default::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::NoSteps));
    }

    #[test]
    fn explosion_cap_fails_the_proof() {
        let cfg = EngineConfig {
            max_cloud_boxes: 10,
            ..EngineConfig::paper_faithful()
        };
        let r = run_trajectory_proof(&cfg);
        assert!(!r.success);
        assert!(matches!(r.failure, Some(Failure::Explosion { step: 1, .. })));
    }
}
