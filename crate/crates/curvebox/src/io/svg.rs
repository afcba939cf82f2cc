//! SVG overlay rendering for detection results.
//!
//! Predictions are stroked by quality tier (IoU against ground truth):
//! high ≥ 0.7 in blue, medium ≥ 0.5 in yellow, low below that in red;
//! ground-truth contours draw in green.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::geometry::TextPolygon;

/// Quality tier of a predicted contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QualityTier {
    High,
    Medium,
    Low,
}

/// Tier thresholds: 0.7 for high, 0.5 for medium.
pub fn quality_tier(iou: f64) -> QualityTier {
    if iou >= 0.7 {
        QualityTier::High
    } else if iou >= 0.5 {
        QualityTier::Medium
    } else {
        QualityTier::Low
    }
}

/// Style tag attached to each rendered polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SvgStyle {
    GroundTruth,
    /// Prediction colored by its IoU tier.
    Prediction { iou: f64 },
}

impl SvgStyle {
    fn stroke(&self) -> &'static str {
        match self {
            SvgStyle::GroundTruth => "#16a34a",
            SvgStyle::Prediction { iou } => match quality_tier(*iou) {
                QualityTier::High => "#2563eb",
                QualityTier::Medium => "#eab308",
                QualityTier::Low => "#dc2626",
            },
        }
    }

    fn class(&self) -> &'static str {
        match self {
            SvgStyle::GroundTruth => "gt",
            SvgStyle::Prediction { iou } => match quality_tier(*iou) {
                QualityTier::High => "pred-high",
                QualityTier::Medium => "pred-medium",
                QualityTier::Low => "pred-low",
            },
        }
    }
}

/// One polygon plus its style tag.
#[derive(Debug, Clone)]
pub struct SvgShape {
    pub polygon: TextPolygon,
    pub style: SvgStyle,
}

/// Builds the SVG document text.
pub fn svg_document(height: u32, width: u32, shapes: &[SvgShape]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    for shape in shapes {
        let mut d = String::new();
        for (i, p) in shape.polygon.points().iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd} {:.2} {:.2} ", p.x, p.y);
        }
        d.push('Z');
        let _ = writeln!(
            out,
            "  <path class=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
            shape.style.class(),
            d,
            shape.style.stroke()
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Writes the overlay atomically.
pub fn render_svg(height: u32, width: u32, shapes: &[SvgShape], path: &Path) -> Result<()> {
    super::write_atomic(path, svg_document(height, width, shapes).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn square() -> TextPolygon {
        TextPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(10.0, 5.0),
            Point2::new(0.0, 5.0),
        ])
        .unwrap()
    }

    #[test]
    fn tier_thresholds() {
        assert_eq!(quality_tier(0.8), QualityTier::High);
        assert_eq!(quality_tier(0.7), QualityTier::High);
        assert_eq!(quality_tier(0.6), QualityTier::Medium);
        assert_eq!(quality_tier(0.5), QualityTier::Medium);
        assert_eq!(quality_tier(0.4), QualityTier::Low);
    }

    #[test]
    fn document_styles_by_tier() {
        let shapes = vec![
            SvgShape {
                polygon: square(),
                style: SvgStyle::Prediction { iou: 0.8 },
            },
            SvgShape {
                polygon: square(),
                style: SvgStyle::Prediction { iou: 0.6 },
            },
            SvgShape {
                polygon: square(),
                style: SvgStyle::GroundTruth,
            },
        ];
        let doc = svg_document(100, 200, &shapes);
        assert!(doc.contains("pred-high"));
        assert!(doc.contains("pred-medium"));
        assert!(doc.contains("class=\"gt\""));
        assert!(doc.contains("viewBox=\"0 0 200 100\""));
    }

    #[test]
    fn empty_list_is_valid_svg() {
        let doc = svg_document(10, 10, &[]);
        assert!(doc.starts_with("<svg"));
        assert!(doc.trim_end().ends_with("</svg>"));
    }
}
