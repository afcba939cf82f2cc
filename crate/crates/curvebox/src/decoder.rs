//! Curve-box reconstruction: from labels back to dense contour polygons.
//!
//! Reconstruction inverts the encoder's normalization. Each curve is sampled
//! on a uniform grid over x ∈ [−0.5, 0.5] (both endpoints included, so the
//! first sample can be pinned exactly onto the start truncation point), then
//! scaled by the chord length, translated onto the start truncation point,
//! and rotated about it by the chord angle.

use crate::encoder::CurveBoxLabel;
use crate::error::{Error, Result};
use crate::geometry::{chord_angle, euclidean_distance, rotation_apply, Point2, TextPolygon};

/// Sampling density for reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReconstructionConfig {
    samples: usize,
}

impl ReconstructionConfig {
    /// `samples` points per edge over x ∈ [−0.5, 0.5]; at least 2. For
    /// faithful curves it should also exceed the mask's free parameter count
    /// and the encoder's per-edge sample count.
    pub fn new(samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::InvalidConfig(format!(
                "reconstruction needs at least 2 samples per edge, got {samples}"
            )));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        Self { samples: 100 }
    }
}

/// A rebuilt contour plus a pathology flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub polygon: TextPolygon,
    /// Set when the rebuilt contour crosses itself (possible for extreme
    /// coefficients); the polygon is still returned.
    pub self_intersecting: bool,
}

/// The uniform abscissa grid shared by both edges.
pub fn sample_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| -0.5 + i as f64 / (n - 1) as f64)
        .collect()
}

/// Dense normalized curve points for both edges: x on the uniform grid, y
/// from the fitted polynomials.
pub fn sample_normalized(
    label: &CurveBoxLabel,
    cfg: &ReconstructionConfig,
) -> (Vec<Point2>, Vec<Point2>) {
    let xs = sample_grid(cfg.samples);
    let top = xs
        .iter()
        .map(|&x| Point2::new(x, label.theta_top().eval(x)))
        .collect();
    let bottom = xs
        .iter()
        .map(|&x| Point2::new(x, label.theta_bottom().eval(x)))
        .collect();
    (top, bottom)
}

/// Maps normalized curve points back to pixel space:
///
/// 1. scale all points by the chord length;
/// 2. translate so the first sampled point lands exactly on `tp_s`;
/// 3. rotate about `tp_s` by the chord angle.
pub fn denormalize(points: &[Point2], tp_s: Point2, tp_e: Point2) -> Result<Vec<Point2>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let theta = chord_angle(tp_s, tp_e)?;
    let d = euclidean_distance(tp_s, tp_e);

    let first = Point2::new(points[0].x * d, points[0].y * d);
    let shift = Point2::new(tp_s.x - first.x, tp_s.y - first.y);

    Ok(points
        .iter()
        .map(|&p| {
            let scaled = Point2::new(p.x * d + shift.x, p.y * d + shift.y);
            let centered = Point2::new(scaled.x - tp_s.x, scaled.y - tp_s.y);
            let rotated = rotation_apply(theta, centered);
            Point2::new(rotated.x + tp_s.x, rotated.y + tp_s.y)
        })
        .collect())
}

/// Rebuilds one contour: top curve left-to-right, then bottom curve
/// right-to-left, closed. The result has `2·samples` vertices.
pub fn reconstruct_curve_box(
    label: &CurveBoxLabel,
    cfg: &ReconstructionConfig,
) -> Result<Reconstruction> {
    let (top_n, bottom_n) = sample_normalized(label, cfg);
    let t = label.truncation();
    let top = denormalize(&top_n, t.tp_s_t, t.tp_e_t)?;
    let mut bottom = denormalize(&bottom_n, t.tp_s_b, t.tp_e_b)?;
    bottom.reverse();

    let mut points = top;
    points.extend(bottom);
    let polygon = TextPolygon::new(points)?;
    let self_intersecting = !polygon.is_simple();
    Ok(Reconstruction {
        polygon,
        self_intersecting,
    })
}

/// Rebuilds many labels; element `i` of the output corresponds to label `i`,
/// and failures are reported per index without aborting the batch. The
/// results are identical to mapping [`reconstruct_curve_box`] over the slice.
pub fn reconstruct_batch(
    labels: &[CurveBoxLabel],
    cfg: &ReconstructionConfig,
) -> Vec<Result<Reconstruction>> {
    labels
        .iter()
        .map(|label| reconstruct_curve_box(label, cfg))
        .collect()
}
