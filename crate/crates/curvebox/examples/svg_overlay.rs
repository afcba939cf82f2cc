//! Render reconstructed contours into an SVG overlay, stroked by quality
//! tier against the ground truth.
//!
//! ```bash
//! cargo run --example svg_overlay
//! ```

use curvebox::curvefit::ParamMask;
use curvebox::decoder::{reconstruct_curve_box, ReconstructionConfig};
use curvebox::encoder::encode_text;
use curvebox::geometry::polygon_iou;
use curvebox::io::svg::{render_svg, SvgShape, SvgStyle};
use curvebox::synth;

fn main() -> curvebox::Result<()> {
    // Three curved ribbons reconstructed under masks of increasing power:
    // the straight-line mask lands in the low tier, the quadratic masks in
    // the high tier.
    let ribbons = synth::quadratic_ribbons(3, 19);
    let cfg = ReconstructionConfig::default();

    let mut shapes = Vec::new();
    let mut extent = (0u32, 0u32);
    for poly in &ribbons {
        let (_, max) = poly.bounding_box();
        extent.0 = extent.0.max(max.y.ceil() as u32 + 10);
        extent.1 = extent.1.max(max.x.ceil() as u32 + 10);
        shapes.push(SvgShape {
            polygon: poly.clone(),
            style: SvgStyle::GroundTruth,
        });
    }
    for (mask_text, poly) in [("1(1)", &ribbons[0]), ("2(1)", &ribbons[1]), ("2(2)+c", &ribbons[2])]
    {
        let mask: ParamMask = mask_text.parse()?;
        let label = encode_text(poly, &mask, 7)?;
        let rec = reconstruct_curve_box(&label, &cfg)?;
        let iou = polygon_iou(poly, &rec.polygon).value;
        println!("mask {mask_text:<7} IoU {iou:.3}");
        shapes.push(SvgShape {
            polygon: rec.polygon,
            style: SvgStyle::Prediction { iou },
        });
    }

    let path = std::env::temp_dir().join("curvebox_overlay.svg");
    render_svg(extent.0, extent.1, &shapes, &path)?;
    println!("overlay written to {}", path.display());
    Ok(())
}
