//! Detection evaluation (greedy IoU matching, precision/recall/H-mean) and
//! the fitting-ability sweep harness.

use serde::{Deserialize, Serialize};

use crate::curvefit::ParamMask;
use crate::decoder::{reconstruct_curve_box, ReconstructionConfig};
use crate::encoder::{encode_text, DEFAULT_POINTS_PER_EDGE};
use crate::geometry::{polygon_iou, TextPolygon};

/// Default IoU threshold for a true positive.
pub const DEFAULT_IOU_THRESHOLD: f64 = 0.5;

/// Outcome of matching predictions against ground truths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// Matched (prediction index, ground-truth index, IoU) triples.
    pub pairs: Vec<(usize, usize, f64)>,
}

impl MatchResult {
    pub fn accumulate(&mut self, other: &MatchResult) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
    }

    pub fn empty() -> Self {
        Self {
            tp: 0,
            fp: 0,
            fn_: 0,
            pairs: Vec::new(),
        }
    }
}

/// Greedy one-to-one matching by descending IoU. Pairs at or above
/// `iou_threshold` count as true positives; leftover predictions are false
/// positives and leftover ground truths false negatives. Ties break by IoU,
/// then prediction index, then ground-truth index, so the result is
/// deterministic.
pub fn match_detections(
    preds: &[TextPolygon],
    gts: &[TextPolygon],
    iou_threshold: f64,
) -> MatchResult {
    let mut candidates: Vec<(usize, usize, f64)> = Vec::new();
    for (pi, pred) in preds.iter().enumerate() {
        for (gi, gt) in gts.iter().enumerate() {
            let iou = polygon_iou(pred, gt).value;
            if iou >= iou_threshold {
                candidates.push((pi, gi, iou));
            }
        }
    }
    candidates.sort_by(|a, b| {
        b.2.partial_cmp(&a.2)
            .expect("finite IoU")
            .then(a.0.cmp(&b.0))
            .then(a.1.cmp(&b.1))
    });

    let mut pred_used = vec![false; preds.len()];
    let mut gt_used = vec![false; gts.len()];
    let mut pairs = Vec::new();
    for (pi, gi, iou) in candidates {
        if !pred_used[pi] && !gt_used[gi] {
            pred_used[pi] = true;
            gt_used[gi] = true;
            pairs.push((pi, gi, iou));
        }
    }
    let tp = pairs.len();
    MatchResult {
        tp,
        fp: preds.len() - tp,
        fn_: gts.len() - tp,
        pairs,
    }
}

/// Precision, recall, and H-mean as percentages. Zero denominators yield 0.
pub fn precision_recall_hmean(m: &MatchResult) -> (f64, f64, f64) {
    let precision = if m.tp + m.fp == 0 {
        0.0
    } else {
        m.tp as f64 / (m.tp + m.fp) as f64 * 100.0
    };
    let recall = if m.tp + m.fn_ == 0 {
        0.0
    } else {
        m.tp as f64 / (m.tp + m.fn_) as f64 * 100.0
    };
    let hmean = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    (precision, recall, hmean)
}

/// One row of a fitting-ability report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    /// Mask notation, e.g. `2(2)+c`.
    pub setting: String,
    pub mean_iou: f64,
    pub median_iou: f64,
    /// Polygons successfully encoded and reconstructed.
    pub samples: usize,
    /// Polygons excluded because encode or reconstruct failed.
    pub failures: usize,
}

/// Fitting-ability sweep over mask settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub rows: Vec<FitRow>,
}

impl FitReport {
    /// Plain-text table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<12} {:>10} {:>12} {:>8} {:>9}\n",
            "setting", "mean IoU", "median IoU", "samples", "failures"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:<12} {:>10.4} {:>12.4} {:>8} {:>9}\n",
                row.setting, row.mean_iou, row.median_iou, row.samples, row.failures
            ));
        }
        out
    }

    pub fn row(&self, setting: &str) -> Option<&FitRow> {
        self.rows.iter().find(|r| r.setting == setting)
    }
}

/// Encode→reconstruct→overlap sweep: for every mask setting, each corpus
/// polygon is encoded, rebuilt, and compared against itself by IoU.
/// Per-polygon failures are excluded and counted.
pub fn fit_report(
    corpus: &[TextPolygon],
    settings: &[ParamMask],
    cfg: &ReconstructionConfig,
) -> FitReport {
    let rows = settings
        .iter()
        .map(|mask| {
            let mut ious = Vec::with_capacity(corpus.len());
            let mut failures = 0usize;
            for poly in corpus {
                let k = DEFAULT_POINTS_PER_EDGE.max(mask.free_param_count());
                let outcome = encode_text(poly, mask, k)
                    .and_then(|label| reconstruct_curve_box(&label, cfg));
                match outcome {
                    Ok(rec) => ious.push(polygon_iou(poly, &rec.polygon).value),
                    Err(_) => failures += 1,
                }
            }
            ious.sort_by(|a, b| a.partial_cmp(b).expect("finite IoU"));
            let mean = if ious.is_empty() {
                0.0
            } else {
                ious.iter().sum::<f64>() / ious.len() as f64
            };
            let median = if ious.is_empty() {
                0.0
            } else if ious.len() % 2 == 1 {
                ious[ious.len() / 2]
            } else {
                (ious[ious.len() / 2 - 1] + ious[ious.len() / 2]) / 2.0
            };
            FitRow {
                setting: mask.to_string(),
                mean_iou: crate::io::round_sig9(mean),
                median_iou: crate::io::round_sig9(median),
                samples: ious.len(),
                failures,
            }
        })
        .collect();
    FitReport { rows }
}
