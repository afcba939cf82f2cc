//! Ground-truth label generation: split an annotation polygon into its two
//! long edges, pick the four truncation points, map each edge into its
//! normalized frame, and fit the masked polynomial.
//!
//! The normalized frame is what makes the representation useful: the edge
//! chord is rotated onto the X-axis, the middle sample is moved to the
//! origin, and everything is divided by the chord length, so the fitted
//! coefficients depend only on edge shape, never on where the text sits, how
//! it is rotated, or how large it is.

use serde::{Deserialize, Serialize};

use crate::curvefit::{fit_poly, CurveParams, ParamMask};
use crate::error::{Error, Result};
use crate::geometry::{
    chord_angle, euclidean_distance, resample_polyline, rotation_apply, Point2, TextPolygon,
};

/// Default number of samples per edge used when encoding. Matches the
/// 14-point annotation style of curved-text datasets (7 per edge).
pub const DEFAULT_POINTS_PER_EDGE: usize = 7;

/// The two long edges of a text instance, both ordered in reading direction.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePair {
    top: Vec<Point2>,
    bottom: Vec<Point2>,
}

impl EdgePair {
    pub fn new(top: Vec<Point2>, bottom: Vec<Point2>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::MalformedAnnotation(format!(
                "edges must have equal point counts, got {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        if top.len() < 2 {
            return Err(Error::MalformedAnnotation(
                "edges need at least 2 points each".into(),
            ));
        }
        Ok(Self { top, bottom })
    }

    pub fn top(&self) -> &[Point2] {
        &self.top
    }

    pub fn bottom(&self) -> &[Point2] {
        &self.bottom
    }

    pub fn points_per_edge(&self) -> usize {
        self.top.len()
    }
}

/// The four pixel-space endpoints that bound the two edge curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPoints {
    /// Start of the top edge.
    pub tp_s_t: Point2,
    /// End of the top edge.
    pub tp_e_t: Point2,
    /// Start of the bottom edge.
    pub tp_s_b: Point2,
    /// End of the bottom edge.
    pub tp_e_b: Point2,
}

impl TruncationPoints {
    /// Chord coordinate pairs as ((start, end) top, (start, end) bottom).
    pub fn chords(&self) -> ((Point2, Point2), (Point2, Point2)) {
        ((self.tp_s_t, self.tp_e_t), (self.tp_s_b, self.tp_e_b))
    }

    /// The eight scalar components in channel order
    /// (s_t.x, s_t.y, s_b.x, s_b.y, e_t.x, e_t.y, e_b.x, e_b.y).
    ///
    /// Start points come first because the supervision maps anchor them at
    /// the centerline start pixel; end points follow at the end pixel.
    pub fn components(&self) -> [f64; 8] {
        [
            self.tp_s_t.x,
            self.tp_s_t.y,
            self.tp_s_b.x,
            self.tp_s_b.y,
            self.tp_e_t.x,
            self.tp_e_t.y,
            self.tp_e_b.x,
            self.tp_e_b.y,
        ]
    }

    pub fn transformed(&self, t: &crate::geometry::SimilarityTransform) -> Self {
        Self {
            tp_s_t: t.apply(self.tp_s_t),
            tp_e_t: t.apply(self.tp_e_t),
            tp_s_b: t.apply(self.tp_s_b),
            tp_e_b: t.apply(self.tp_e_b),
        }
    }
}

/// Everything needed to rebuild one text contour: the two fitted curves plus
/// the truncation points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveBoxLabelRepr", into = "CurveBoxLabelRepr")]
pub struct CurveBoxLabel {
    theta_top: CurveParams,
    theta_bottom: CurveParams,
    truncation: TruncationPoints,
}

#[derive(Serialize, Deserialize)]
struct CurveBoxLabelRepr {
    theta_top: CurveParams,
    theta_bottom: CurveParams,
    truncation: TruncationPoints,
}

impl TryFrom<CurveBoxLabelRepr> for CurveBoxLabel {
    type Error = Error;

    fn try_from(r: CurveBoxLabelRepr) -> Result<Self> {
        CurveBoxLabel::new(r.theta_top, r.theta_bottom, r.truncation)
    }
}

impl From<CurveBoxLabel> for CurveBoxLabelRepr {
    fn from(l: CurveBoxLabel) -> Self {
        CurveBoxLabelRepr {
            theta_top: l.theta_top,
            theta_bottom: l.theta_bottom,
            truncation: l.truncation,
        }
    }
}

impl CurveBoxLabel {
    /// Both curves must share one mask.
    pub fn new(
        theta_top: CurveParams,
        theta_bottom: CurveParams,
        truncation: TruncationPoints,
    ) -> Result<Self> {
        if theta_top.mask() != theta_bottom.mask() {
            return Err(Error::IncompatibleParams {
                left: theta_top.mask().to_string(),
                right: theta_bottom.mask().to_string(),
            });
        }
        Ok(Self {
            theta_top,
            theta_bottom,
            truncation,
        })
    }

    pub fn theta_top(&self) -> &CurveParams {
        &self.theta_top
    }

    pub fn theta_bottom(&self) -> &CurveParams {
        &self.theta_bottom
    }

    pub fn truncation(&self) -> &TruncationPoints {
        &self.truncation
    }

    pub fn mask(&self) -> &ParamMask {
        self.theta_top.mask()
    }

    /// Same curves with the truncation points pushed through `t`.
    pub fn with_transformed_truncation(&self, t: &crate::geometry::SimilarityTransform) -> Self {
        Self {
            theta_top: self.theta_top.clone(),
            theta_bottom: self.theta_bottom.clone(),
            truncation: self.truncation.transformed(t),
        }
    }
}

/// Splits a 2k-point clockwise annotation into its two edges. The second
/// half is reversed so both edges run in reading direction, which keeps the
/// bottom start point under the top start point.
pub fn split_edges(poly: &TextPolygon) -> Result<EdgePair> {
    let pts = poly.points();
    if !pts.len().is_multiple_of(2) || pts.len() < 4 {
        return Err(Error::MalformedAnnotation(format!(
            "expected an even point count ≥ 4, got {}",
            pts.len()
        )));
    }
    let k = pts.len() / 2;
    let top = pts[..k].to_vec();
    let mut bottom = pts[k..].to_vec();
    bottom.reverse();
    EdgePair::new(top, bottom)
}

/// First and last point of each directed edge.
pub fn pick_truncation_points(edges: &EdgePair) -> Result<TruncationPoints> {
    let first_last = |e: &[Point2]| -> Result<(Point2, Point2)> {
        let (s, e_) = (e[0], e[e.len() - 1]);
        if euclidean_distance(s, e_) < crate::geometry::DEGENERATE_EPS {
            return Err(Error::DegenerateChord);
        }
        Ok((s, e_))
    };
    let (tp_s_t, tp_e_t) = first_last(edges.top())?;
    let (tp_s_b, tp_e_b) = first_last(edges.bottom())?;
    Ok(TruncationPoints {
        tp_s_t,
        tp_e_t,
        tp_s_b,
        tp_e_b,
    })
}

/// Maps edge points into the normalized frame:
///
/// 1. rotate `p − tp_s` by the negated chord angle, so the chord lies on the
///    positive X-axis;
/// 2. translate by minus the midpoint of the middle sample pair (indices
///    ⌊(k−1)/2⌋ and ⌊k/2⌋, which coincide for odd k);
/// 3. scale by the reciprocal chord length.
///
/// Afterwards the endpoints satisfy `last.x − first.x = 1` and
/// `last.y = first.y` exactly (to float precision), and for text-like edges
/// the x range is approximately [−0.5, 0.5].
pub fn normalize_edge(edge: &[Point2], tp_s: Point2, tp_e: Point2) -> Result<Vec<Point2>> {
    if edge.len() < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            got: edge.len(),
        });
    }
    let theta = chord_angle(tp_s, tp_e)?;
    let d = euclidean_distance(tp_s, tp_e);

    let rotated: Vec<Point2> = edge
        .iter()
        .map(|&p| rotation_apply(-theta, Point2::new(p.x - tp_s.x, p.y - tp_s.y)))
        .collect();

    let k = rotated.len();
    let lo = rotated[(k - 1) / 2];
    let hi = rotated[k / 2];
    let mid = Point2::new((lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0);

    Ok(rotated
        .iter()
        .map(|&p| Point2::new((p.x - mid.x) / d, (p.y - mid.y) / d))
        .collect())
}

/// Encodes one annotation polygon into a [`CurveBoxLabel`].
///
/// Each edge is resampled to `k` points by arc length (edges that already
/// carry exactly `k` points are used as-is), normalized, and fitted under
/// `mask`. The truncation points are the raw edge endpoints, which arc-length
/// resampling preserves.
pub fn encode_text(poly: &TextPolygon, mask: &ParamMask, k: usize) -> Result<CurveBoxLabel> {
    if k < mask.free_param_count().max(2) {
        return Err(Error::InsufficientPoints {
            needed: mask.free_param_count().max(2),
            got: k,
        });
    }
    let edges = split_edges(poly)?;
    let top = if edges.top().len() == k {
        edges.top().to_vec()
    } else {
        resample_polyline(edges.top(), k)?
    };
    let bottom = if edges.bottom().len() == k {
        edges.bottom().to_vec()
    } else {
        resample_polyline(edges.bottom(), k)?
    };
    let edges = EdgePair::new(top, bottom)?;
    let truncation = pick_truncation_points(&edges)?;

    let top_norm = normalize_edge(edges.top(), truncation.tp_s_t, truncation.tp_e_t)?;
    let bottom_norm = normalize_edge(edges.bottom(), truncation.tp_s_b, truncation.tp_e_b)?;

    let theta_top = fit_poly(&top_norm, mask)?;
    let theta_bottom = fit_poly(&bottom_norm, mask)?;
    CurveBoxLabel::new(theta_top, theta_bottom, truncation)
}

/// The truncated edge polylines implied by a label at `n` samples per edge;
/// used by the supervision-map renderer.
pub fn label_edges(label: &CurveBoxLabel, n: usize) -> Result<EdgePair> {
    let cfg = crate::decoder::ReconstructionConfig::new(n)?;
    let (top, bottom) = crate::decoder::sample_normalized(label, &cfg);
    let t = label.truncation();
    EdgePair::new(
        crate::decoder::denormalize(&top, t.tp_s_t, t.tp_e_t)?,
        crate::decoder::denormalize(&bottom, t.tp_s_b, t.tp_e_b)?,
    )
}
