//! Why the normalization matters: the fitted curve parameters do not change
//! when the text moves, rotates, or scales — only the truncation points do.
//!
//! ```bash
//! cargo run --example similarity_invariance
//! ```

use curvebox::curvefit::ParamMask;
use curvebox::encoder::encode_text;
use curvebox::geometry::{Point2, SimilarityTransform};
use curvebox::synth;

fn main() -> curvebox::Result<()> {
    let ribbon = &synth::quadratic_ribbons(1, 42)[0];
    let mask = ParamMask::default_mask();
    let base = encode_text(ribbon, &mask, 7)?;
    println!("base params: {:?}", base.theta_top().to_flat());

    let transforms = [
        ("rotate 90°", SimilarityTransform::new(std::f64::consts::FRAC_PI_2, 1.0, Point2::new(0.0, 0.0))?),
        ("scale ×3", SimilarityTransform::new(0.0, 3.0, Point2::new(0.0, 0.0))?),
        ("move +200px", SimilarityTransform::new(0.0, 1.0, Point2::new(200.0, 150.0))?),
        ("all at once", SimilarityTransform::new(-2.1, 0.6, Point2::new(-80.0, 40.0))?),
    ];
    for (name, t) in transforms {
        let label = encode_text(&t.apply_polygon(ribbon), &mask, 7)?;
        let drift = base
            .theta_top()
            .to_flat()
            .iter()
            .zip(label.theta_top().to_flat())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!(
            "{name:<12} param drift {drift:.2e}, tp_s_t moved to ({:.1}, {:.1})",
            label.truncation().tp_s_t.x,
            label.truncation().tp_s_t.y
        );
    }
    Ok(())
}
