//! Reference implementations of the training objectives, as pure forward
//! functions for cross-checking a training stack: the proportional integral
//! loss between edge curves, smooth-L1 for truncation regression, Dice for
//! the edge-band segmentation, and their weighted total.

use serde::{Deserialize, Serialize};

use crate::curvefit::CurveParams;
use crate::encoder::TruncationPoints;
use crate::error::{Error, Result};

/// Importance coefficients of the three loss terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl LossWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for v in [alpha, beta, gamma] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "loss weights must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(Self { alpha, beta, gamma })
    }
}

impl Default for LossWeights {
    /// The reference weighting: 0.5, 0.5, 1.0.
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta: 0.5,
            gamma: 1.0,
        }
    }
}

/// Whether the proportional integral sum carries the 1/N grid weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiMode {
    /// Σ|Δ|·(1/N): a Riemann sum of the integral, stable in N. The default.
    Normalized,
    /// Plain Σ|Δ| without the grid weight; value grows with N.
    Literal,
}

/// Default sample count for [`pi_loss`], matching the decoder default.
pub const DEFAULT_PI_SAMPLES: usize = 100;

/// Proportional integral loss between two curves sharing a mask: the
/// integral over x ∈ [−0.5, 0.5] of the absolute difference, discretized on
/// the grid x_i = −0.5 + i/N for i = 1..N.
pub fn pi_loss(gt: &CurveParams, pred: &CurveParams, n: usize, mode: PiMode) -> Result<f64> {
    if gt.mask() != pred.mask() {
        return Err(Error::IncompatibleParams {
            left: gt.mask().to_string(),
            right: pred.mask().to_string(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "pi loss needs at least 2 samples, got {n}"
        )));
    }
    let mut sum = 0.0;
    for i in 1..=n {
        let x = -0.5 + i as f64 / n as f64;
        sum += (gt.eval(x) - pred.eval(x)).abs();
    }
    Ok(match mode {
        PiMode::Normalized => sum / n as f64,
        PiMode::Literal => sum,
    })
}

/// Smooth-L1: `0.5e²` for |e| < 1, else `|e| − 0.5`, with e = pred − gt.
pub fn smooth_l1(pred: f64, gt: f64) -> f64 {
    let e = (pred - gt).abs();
    if e < 1.0 {
        0.5 * e * e
    } else {
        e - 0.5
    }
}

/// Truncation regression loss: mean smooth-L1 over the eight supervised
/// offset components.
pub fn truncation_loss(pred: &TruncationPoints, gt: &TruncationPoints) -> f64 {
    let p = pred.components();
    let g = gt.components();
    p.iter().zip(g.iter()).map(|(&a, &b)| smooth_l1(a, b)).sum::<f64>() / 8.0
}

/// Dice loss `1 − (2·|pred∩gt| + ε)/(|pred| + |gt| + ε)` with element sums
/// and an elementwise product intersection. `epsilon` rescues the empty-mask
/// case (both empty → 0).
pub fn dice_loss(pred: &[f32], gt: &[f32], epsilon: f64) -> Result<f64> {
    if pred.len() != gt.len() {
        return Err(Error::ShapeMismatch(format!(
            "dice loss inputs differ: {} vs {} elements",
            pred.len(),
            gt.len()
        )));
    }
    let mut inter = 0.0f64;
    let mut sum_p = 0.0f64;
    let mut sum_g = 0.0f64;
    for (&p, &g) in pred.iter().zip(gt.iter()) {
        inter += p as f64 * g as f64;
        sum_p += p as f64;
        sum_g += g as f64;
    }
    Ok(1.0 - (2.0 * inter + epsilon) / (sum_p + sum_g + epsilon))
}

/// Weighted total `α·l_edge + β·l_trun + γ·l_bep`.
pub fn total_loss(l_edge: f64, l_trun: f64, l_bep: f64, w: &LossWeights) -> f64 {
    w.alpha * l_edge + w.beta * l_trun + w.gamma * l_bep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvefit::ParamMask;
    use crate::geometry::Point2;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(t1: f64, t2: f64, c: f64) -> CurveParams {
        CurveParams::new(ParamMask::default_mask(), vec![t1, t2], Some(c)).unwrap()
    }

    #[test]
    fn pi_loss_zero_for_identical_params() {
        let p = params(0.2, -0.4, 0.1);
        assert_eq!(pi_loss(&p, &p, 100, PiMode::Normalized).unwrap(), 0.0);
    }

    #[test]
    fn pi_loss_of_constant_gap_is_the_gap() {
        let a = params(0.0, 0.0, 0.7);
        let b = params(0.0, 0.0, -0.05);
        for n in [2, 10, 1000] {
            assert_abs_diff_eq!(
                pi_loss(&a, &b, n, PiMode::Normalized).unwrap(),
                0.75,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn pi_loss_quadrature_matches_analytic_twelfth() {
        // ∫|x²|dx over [−0.5, 0.5] = 1/12.
        let mask = ParamMask::top_run(2, 1, false).unwrap();
        let gt = CurveParams::new(mask.clone(), vec![1.0], None).unwrap();
        let pred = CurveParams::zero(mask);
        let v = pi_loss(&gt, &pred, 1000, PiMode::Normalized).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 2e-3, "quadrature {v}");
    }

    #[test]
    fn literal_mode_drops_the_grid_weight() {
        let a = params(0.0, 0.0, 1.0);
        let b = params(0.0, 0.0, 0.0);
        let lit = pi_loss(&a, &b, 50, PiMode::Literal).unwrap();
        assert_abs_diff_eq!(lit, 50.0, epsilon = 1e-9);
    }

    #[test]
    fn pi_loss_rejects_mask_mismatch() {
        let a = params(0.0, 0.0, 0.0);
        let b = CurveParams::zero(ParamMask::top_run(1, 1, false).unwrap());
        assert!(matches!(
            pi_loss(&a, &b, 10, PiMode::Normalized),
            Err(Error::IncompatibleParams { .. })
        ));
    }

    #[test]
    fn pi_loss_converges_like_one_over_n() {
        // Against a fine quadrature oracle, the grid error stays below 1/N
        // for coefficients in [−1, 1].
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = params(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let b = params(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let oracle = pi_loss(&a, &b, 2_000_000, PiMode::Normalized).unwrap();
            for n in [100usize, 1000] {
                let v = pi_loss(&a, &b, n, PiMode::Normalized).unwrap();
                assert!(
                    (v - oracle).abs() <= 1.0 / n as f64,
                    "error {} at N={n}",
                    (v - oracle).abs()
                );
            }
        }
    }

    #[test]
    fn smooth_l1_reference_points() {
        assert_eq!(smooth_l1(0.0, 0.0), 0.0);
        assert_eq!(smooth_l1(0.5, 0.0), 0.125);
        assert_eq!(smooth_l1(2.0, 0.0), 1.5);
        // Continuity at |e| = 1: both branches give 0.5.
        assert_abs_diff_eq!(smooth_l1(1.0, 0.0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(smooth_l1(1.0 - 1e-9, 0.0), 0.5, epsilon = 1e-6);
    }

    #[test]
    fn dice_reference_points() {
        let ones = vec![1.0f32; 100];
        assert_eq!(dice_loss(&ones, &ones, 1.0).unwrap(), 0.0);

        let empty = vec![0.0f32; 64];
        assert_eq!(dice_loss(&empty, &empty, 1.0).unwrap(), 0.0);

        // Disjoint 50-px masks in a shared frame.
        let mut a = vec![0.0f32; 128];
        let mut b = vec![0.0f32; 128];
        for i in 0..50 {
            a[i] = 1.0;
            b[64 + i] = 1.0;
        }
        let v = dice_loss(&a, &b, 1.0).unwrap();
        assert_abs_diff_eq!(v, 1.0 - 1.0 / 101.0, epsilon = 1e-12);

        assert!(dice_loss(&a, &b[..10], 1.0).is_err());
    }

    #[test]
    fn total_loss_reference_points() {
        let w = LossWeights::default();
        assert_eq!(total_loss(1.0, 1.0, 1.0, &w), 2.0);
        assert_eq!(total_loss(0.0, 0.0, 0.0, &w), 0.0);
        let only_edge = LossWeights::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(total_loss(3.0, 9.0, 9.0, &only_edge), 3.0);
    }

    #[test]
    fn truncation_loss_zero_on_match() {
        let tp = TruncationPoints {
            tp_s_t: Point2::new(0.0, 0.0),
            tp_e_t: Point2::new(10.0, 0.0),
            tp_s_b: Point2::new(0.0, 4.0),
            tp_e_b: Point2::new(10.0, 4.0),
        };
        assert_eq!(truncation_loss(&tp, &tp), 0.0);
        let mut moved = tp;
        moved.tp_s_t = Point2::new(0.4, 0.0);
        assert_abs_diff_eq!(truncation_loss(&moved, &tp), 0.5 * 0.16 / 8.0, epsilon = 1e-12);
    }

    #[test]
    fn pi_loss_is_scale_indifferent() {
        // Labels encoded from a polygon and from its uniformly scaled copy
        // carry the same curve parameters, so their distance to any fixed
        // prediction agrees.
        use crate::encoder::encode_text;
        use crate::geometry::{SimilarityTransform, TextPolygon};
        let poly = TextPolygon::new(
            (0..14)
                .map(|i| {
                    let x = -0.5 + (i % 7) as f64 / 6.0;
                    let side = if i < 7 { 0.0 } else { 9.0 };
                    let xx = if i < 7 { x } else { -x };
                    Point2::new(80.0 * xx, 80.0 * 0.3 * xx * xx + side)
                })
                .collect(),
        )
        .unwrap();
        let mask = ParamMask::default_mask();
        let scaled = SimilarityTransform::new(0.0, 3.5, Point2::new(40.0, -7.0))
            .unwrap()
            .apply_polygon(&poly);
        let a = encode_text(&poly, &mask, 7).unwrap();
        let b = encode_text(&scaled, &mask, 7).unwrap();
        let probe = params(0.1, -0.2, 0.05);
        let la = pi_loss(a.theta_top(), &probe, 100, PiMode::Normalized).unwrap();
        let lb = pi_loss(b.theta_top(), &probe, 100, PiMode::Normalized).unwrap();
        assert_abs_diff_eq!(la, lb, epsilon = 1e-6);
    }

    proptest! {
        #[test]
        fn pi_loss_is_a_metric(
            a1 in -1.0..1.0f64, a2 in -1.0..1.0f64, ac in -1.0..1.0f64,
            b1 in -1.0..1.0f64, b2 in -1.0..1.0f64, bc in -1.0..1.0f64,
            c1 in -1.0..1.0f64, c2 in -1.0..1.0f64, cc in -1.0..1.0f64,
        ) {
            let a = params(a1, a2, ac);
            let b = params(b1, b2, bc);
            let c = params(c1, c2, cc);
            let n = 100;
            let ab = pi_loss(&a, &b, n, PiMode::Normalized).unwrap();
            let ba = pi_loss(&b, &a, n, PiMode::Normalized).unwrap();
            let bc_ = pi_loss(&b, &c, n, PiMode::Normalized).unwrap();
            let ac_ = pi_loss(&a, &c, n, PiMode::Normalized).unwrap();
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!(ac_ <= ab + bc_ + 1e-9);
            prop_assert!(pi_loss(&a, &a, n, PiMode::Normalized).unwrap() == 0.0);
        }

        #[test]
        fn dice_stays_in_unit_range(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let pred: Vec<f32> = (0..64).map(|_| rng.random_range(0.0..1.0)).collect();
            let gt: Vec<f32> = (0..64).map(|_| f32::from(rng.random_bool(0.4))).collect();
            let v = dice_loss(&pred, &gt, 1.0).unwrap();
            prop_assert!((0.0..1.0).contains(&v));
        }
    }
}
