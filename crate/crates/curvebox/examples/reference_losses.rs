//! Reference loss values for cross-checking a training stack.
//!
//! ```bash
//! cargo run --example reference_losses
//! ```

use curvebox::curvefit::{CurveParams, ParamMask};
use curvebox::losses::{dice_loss, pi_loss, smooth_l1, total_loss, LossWeights, PiMode};

fn main() -> curvebox::Result<()> {
    // Edge term: integral of |gt − pred| over the normalized x range.
    let mask = ParamMask::default_mask();
    let gt = CurveParams::new(mask.clone(), vec![0.1, 0.5], Some(0.0))?;
    let pred = CurveParams::new(mask.clone(), vec![0.1, 0.0], Some(0.0))?;
    let normalized = pi_loss(&gt, &pred, 1000, PiMode::Normalized)?;
    let literal = pi_loss(&gt, &pred, 1000, PiMode::Literal)?;
    println!("pi (normalized, N=1000) : {normalized:.6}   <- 0.5·∫|x²| = 0.5/12 ≈ 0.041667");
    println!("pi (literal,   N=1000) : {literal:.3}   <- same sum without the 1/N weight");

    // Truncation term: smooth-L1 is quadratic near zero, linear past |e|=1.
    for e in [0.0, 0.5, 1.0, 2.0] {
        println!("smooth_l1(e={e:.1})        : {:.3}", smooth_l1(e, 0.0));
    }

    // Segmentation term: Dice with the empty-mask rescue.
    let a = vec![1.0f32; 50];
    let b = vec![0.0f32; 50];
    println!("dice(identical)         : {:.4}", dice_loss(&a, &a, 1.0)?);
    println!("dice(empty vs empty)    : {:.4}", dice_loss(&b, &b, 1.0)?);
    println!("dice(disjoint-ish)      : {:.4}", dice_loss(&a, &b, 1.0)?);

    // Weighted total with the reference weights (0.5, 0.5, 1.0).
    let w = LossWeights::default();
    println!(
        "total(1, 1, 1)          : {:.1}  (weights α={}, β={}, γ={})",
        total_loss(1.0, 1.0, 1.0, &w),
        w.alpha,
        w.beta,
        w.gamma
    );
    Ok(())
}
