//! The core round trip: annotation polygon → curve-box label → contour.
//!
//! ```bash
//! cargo run --example encode_decode
//! ```

use curvebox::curvefit::ParamMask;
use curvebox::decoder::{reconstruct_curve_box, ReconstructionConfig};
use curvebox::encoder::encode_text;
use curvebox::geometry::{polygon_iou, Point2, TextPolygon};

fn main() -> curvebox::Result<()> {
    // A gently curved ribbon, annotated with 7 points per edge like the
    // curved-text datasets do.
    let xs: Vec<f64> = (0..7).map(|i| -0.5 + i as f64 / 6.0).collect();
    let bend = |x: f64| 180.0 * 0.35 * x * x;
    let top: Vec<Point2> = xs
        .iter()
        .map(|&x| Point2::new(250.0 + 180.0 * x, 140.0 + bend(x)))
        .collect();
    let bottom: Vec<Point2> = xs
        .iter()
        .map(|&x| Point2::new(250.0 + 180.0 * x, 172.0 + bend(x)))
        .collect();
    let mut points = top;
    points.extend(bottom.into_iter().rev());
    let polygon = TextPolygon::new(points)?;

    let mask = ParamMask::default_mask(); // 2(2)+c
    let label = encode_text(&polygon, &mask, 7)?;

    println!("mask            : {}", label.mask());
    println!("theta_top       : {:?}", label.theta_top().to_flat());
    println!("theta_bottom    : {:?}", label.theta_bottom().to_flat());
    let t = label.truncation();
    println!(
        "truncation      : s_t=({:.1},{:.1}) e_t=({:.1},{:.1}) s_b=({:.1},{:.1}) e_b=({:.1},{:.1})",
        t.tp_s_t.x, t.tp_s_t.y, t.tp_e_t.x, t.tp_e_t.y,
        t.tp_s_b.x, t.tp_s_b.y, t.tp_e_b.x, t.tp_e_b.y,
    );

    let rec = reconstruct_curve_box(&label, &ReconstructionConfig::default())?;
    println!("reconstructed   : {} vertices", rec.polygon.len());
    println!("self-intersects : {}", rec.self_intersecting);
    println!(
        "IoU vs original : {:.4}",
        polygon_iou(&polygon, &rec.polygon).value
    );
    Ok(())
}
