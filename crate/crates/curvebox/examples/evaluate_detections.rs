//! Detection evaluation: greedy IoU matching and precision/recall/H-mean.
//!
//! ```bash
//! cargo run --example evaluate_detections
//! ```

use curvebox::geometry::TextPolygon;
use curvebox::metrics::{match_detections, precision_recall_hmean};
use curvebox::synth;

fn main() -> curvebox::Result<()> {
    let gts = synth::straight_ribbons(8, 5);

    // Simulate a detector: it finds six instances with a small offset,
    // misses two, and hallucinates one far away.
    let mut preds: Vec<TextPolygon> = gts.iter().take(6).map(|p| p.translated(3.0, -2.0)).collect();
    preds.push(gts[0].translated(600.0, 600.0));

    let result = match_detections(&preds, &gts, 0.5);
    println!("TP={} FP={} FN={}", result.tp, result.fp, result.fn_);
    for &(pi, gi, iou) in &result.pairs {
        println!("  prediction {pi} ↔ ground truth {gi} at IoU {iou:.3}");
    }
    let (p, r, h) = precision_recall_hmean(&result);
    println!("precision {p:.2}%  recall {r:.2}%  hmean {h:.2}%");
    Ok(())
}
