//! Seeded synthetic ribbon corpora for tests, examples, and the `synth`
//! subcommand.
//!
//! Every generator builds each ribbon in a construction frame where the edge
//! chords are horizontal, then pushes it through a random rotation and
//! translation. Edge y-profiles are chosen so the encoder's normalized frame
//! sees exactly the intended polynomial family:
//!
//! * straight ribbons — degree-1 fixed points (flat edges),
//! * quadratic ribbons — `a·x²` bends, arc-length symmetric,
//! * cubic ribbons — `a·(x³ − x/4)` S-curves, which keep the chord
//!   horizontal and the arc-length midpoint at the chord center,
//! * sinusoid ribbons — smooth but outside the polynomial family,
//! * noisy rectangles — 7-point annotations with Gaussian jitter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::geometry::{Point2, SimilarityTransform, TextPolygon};
use crate::io::{AnnotationRecord, TextAnnotation};

/// Dense samples per edge for curved synthetic ribbons; keeps the source
/// polygon an accurate stand-in for the true curved region.
const DENSE_EDGE_POINTS: usize = 80;

/// Corpus families understood by the generators and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    Straight,
    Quadratic,
    Cubic,
    Sinusoid,
    NoisyRect,
    /// Two non-overlapping instances on a 512×512 canvas.
    Scene,
}

impl std::str::FromStr for CorpusKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "straight" => Ok(Self::Straight),
            "quadratic" => Ok(Self::Quadratic),
            "cubic" => Ok(Self::Cubic),
            "sinusoid" => Ok(Self::Sinusoid),
            "noisy-rect" => Ok(Self::NoisyRect),
            "scene" => Ok(Self::Scene),
            other => Err(crate::error::Error::InvalidConfig(format!(
                "unknown corpus kind {other:?} (expected straight, quadratic, cubic, sinusoid, noisy-rect, or scene)"
            ))),
        }
    }
}

/// Builds a ribbon from per-edge y-profiles over x′ ∈ [−0.5, 0.5] in the
/// construction frame, then applies `placement`.
fn ribbon_from_profiles(
    chord: f64,
    points_per_edge: usize,
    top_y: impl Fn(f64) -> f64,
    bottom_y: impl Fn(f64) -> f64,
    placement: &SimilarityTransform,
) -> TextPolygon {
    let n = points_per_edge;
    let xs: Vec<f64> = (0..n).map(|i| -0.5 + i as f64 / (n - 1) as f64).collect();
    let top: Vec<Point2> = xs
        .iter()
        .map(|&x| placement.apply(Point2::new(chord * x, top_y(x))))
        .collect();
    let bottom: Vec<Point2> = xs
        .iter()
        .map(|&x| placement.apply(Point2::new(chord * x, bottom_y(x))))
        .collect();
    let mut pts = top;
    pts.extend(bottom.into_iter().rev());
    TextPolygon::new(pts).expect("ribbon construction is valid")
}

fn random_placement(rng: &mut ChaCha8Rng, max_angle: f64) -> SimilarityTransform {
    let theta = rng.random_range(-max_angle..max_angle);
    let tx = rng.random_range(150.0..450.0);
    let ty = rng.random_range(150.0..450.0);
    SimilarityTransform::new(theta, 1.0, Point2::new(tx, ty)).expect("valid placement")
}

fn chord_and_thickness(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let chord: f64 = rng.random_range(130.0..280.0);
    let t = (chord * rng.random_range(0.10..0.22)).clamp(12.0, 52.0);
    (chord, t)
}

/// Straight-edged quadrilateral ribbons at arbitrary orientations.
pub fn straight_ribbons(count: usize, seed: u64) -> Vec<TextPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (chord, t) = chord_and_thickness(&mut rng);
            let placement = random_placement(&mut rng, std::f64::consts::PI);
            ribbon_from_profiles(chord, 7, |_| -t / 2.0, |_| t / 2.0, &placement)
        })
        .collect()
}

/// Ribbons whose edges are exact `a·x²` bends in their normalized frames;
/// the normalized quadratic coefficient equals `a`.
pub fn quadratic_ribbons(count: usize, seed: u64) -> Vec<TextPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (chord, t) = chord_and_thickness(&mut rng);
            let magnitude = rng.random_range(0.25..0.7);
            let a = if rng.random_bool(0.5) { magnitude } else { -magnitude };
            let placement = random_placement(&mut rng, std::f64::consts::PI);
            ribbon_from_profiles(
                chord,
                DENSE_EDGE_POINTS,
                move |x| chord * a * x * x - t / 2.0,
                move |x| chord * a * x * x + t / 2.0,
                &placement,
            )
        })
        .collect()
}

/// S-shaped ribbons with edges `a·(x³ − x/4)`: the cubic family that stays a
/// fixed point of the encode→reconstruct loop.
pub fn cubic_ribbons(count: usize, seed: u64) -> Vec<TextPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (chord, t) = chord_and_thickness(&mut rng);
            let magnitude = rng.random_range(0.4..1.1);
            let a = if rng.random_bool(0.5) { magnitude } else { -magnitude };
            let placement = random_placement(&mut rng, std::f64::consts::PI);
            let shape = move |x: f64| chord * a * (x * x * x - 0.25 * x);
            ribbon_from_profiles(
                chord,
                DENSE_EDGE_POINTS,
                move |x| shape(x) - t / 2.0,
                move |x| shape(x) + t / 2.0,
                &placement,
            )
        })
        .collect()
}

/// Smooth sinusoidal ribbons (not exactly representable by the polynomial
/// family).
pub fn sinusoid_ribbons(count: usize, seed: u64) -> Vec<TextPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (chord, t) = chord_and_thickness(&mut rng);
            let amp = chord * rng.random_range(0.03..0.11);
            let freq = rng.random_range(0.35..0.75);
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            let placement = random_placement(&mut rng, std::f64::consts::PI);
            let shape = move |x: f64| amp * (std::f64::consts::TAU * freq * x + phase).sin();
            ribbon_from_profiles(
                chord,
                DENSE_EDGE_POINTS,
                move |x| shape(x) - t / 2.0,
                move |x| shape(x) + t / 2.0,
                &placement,
            )
        })
        .collect()
}

/// Rectangles annotated with 7 points per edge, paired with copies carrying
/// i.i.d. Gaussian jitter of `sigma` pixels on every coordinate. The clean
/// polygon stands in for the true text region, the jittered one for its
/// human annotation.
pub fn noisy_rectangle_pairs(
    count: usize,
    sigma: f64,
    seed: u64,
) -> Vec<(TextPolygon, TextPolygon)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma).expect("valid sigma");
    (0..count)
        .map(|_| {
            let chord = rng.random_range(150.0..300.0);
            let t = rng.random_range(18.0..52.0);
            let placement = random_placement(&mut rng, std::f64::consts::PI);
            let clean = ribbon_from_profiles(chord, 7, |_| -t / 2.0, |_| t / 2.0, &placement);
            let jittered: Vec<Point2> = clean
                .points()
                .iter()
                .map(|p| {
                    Point2::new(p.x + noise.sample(&mut rng), p.y + noise.sample(&mut rng))
                })
                .collect();
            let noisy = TextPolygon::new(jittered).expect("jitter preserves point count");
            (clean, noisy)
        })
        .collect()
}

/// Jittered rectangle annotations (see [`noisy_rectangle_pairs`]).
pub fn noisy_rectangles(count: usize, sigma: f64, seed: u64) -> Vec<TextPolygon> {
    noisy_rectangle_pairs(count, sigma, seed)
        .into_iter()
        .map(|(_, noisy)| noisy)
        .collect()
}

/// A multi-instance synthetic image.
#[derive(Debug, Clone)]
pub struct Scene {
    pub polygons: Vec<TextPolygon>,
    pub height: u32,
    pub width: u32,
}

/// Two-instance 512×512 scenes with disjoint placements (one instance per
/// horizontal band), mixing straight, quadratic, and cubic ribbons.
pub fn scenes(count: usize, seed: u64) -> Vec<Scene> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut polygons = Vec::with_capacity(2);
            for band in 0..2 {
                let chord: f64 = rng.random_range(150.0..260.0);
                let t = (chord * rng.random_range(0.10..0.18)).clamp(16.0, 40.0);
                let theta = rng.random_range(-0.3..0.3);
                let cx = rng.random_range(160.0..352.0);
                let cy = rng.random_range(110.0..160.0) + band as f64 * 250.0;
                let placement =
                    SimilarityTransform::new(theta, 1.0, Point2::new(cx, cy)).expect("valid");
                let kind = rng.random_range(0..3u32);
                let a = match kind {
                    0 => 0.0,
                    1 => {
                        let m = rng.random_range(0.2..0.5);
                        if rng.random_bool(0.5) {
                            m
                        } else {
                            -m
                        }
                    }
                    _ => rng.random_range(-0.8..0.8),
                };
                let shape = move |x: f64| match kind {
                    0 => 0.0,
                    1 => chord * a * x * x,
                    _ => chord * a * (x * x * x - 0.25 * x),
                };
                polygons.push(ribbon_from_profiles(
                    chord,
                    DENSE_EDGE_POINTS,
                    move |x| shape(x) - t / 2.0,
                    move |x| shape(x) + t / 2.0,
                    &placement,
                ));
            }
            Scene {
                polygons,
                height: 512,
                width: 512,
            }
        })
        .collect()
}

/// A random similarity transform for invariance testing: rotation anywhere
/// on the circle, scale in [0.5, 2], translation within ±100 px.
pub fn random_similarity(rng: &mut ChaCha8Rng) -> SimilarityTransform {
    SimilarityTransform::new(
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
        rng.random_range(0.5..2.0),
        Point2::new(
            rng.random_range(-100.0..100.0),
            rng.random_range(-100.0..100.0),
        ),
    )
    .expect("valid random similarity")
}

/// A mixed ribbon corpus (straight + quadratic + cubic + sinusoid in equal
/// parts) for invariance sweeps.
pub fn mixed_ribbons(count: usize, seed: u64) -> Vec<TextPolygon> {
    let per = count / 4;
    let rem = count - 3 * per;
    let mut out = straight_ribbons(per, seed);
    out.extend(quadratic_ribbons(per, seed.wrapping_add(1)));
    out.extend(cubic_ribbons(per, seed.wrapping_add(2)));
    out.extend(sinusoid_ribbons(rem, seed.wrapping_add(3)));
    out
}

fn bounds_size(polygons: &[TextPolygon]) -> (u32, u32) {
    let mut h = 0u32;
    let mut w = 0u32;
    for poly in polygons {
        let (_, max) = poly.bounding_box();
        h = h.max(max.y.ceil() as u32 + 2);
        w = w.max(max.x.ceil() as u32 + 2);
    }
    (h, w)
}

/// Wraps generated polygons into one-annotation-per-image records.
pub fn corpus_records(kind: CorpusKind, count: usize, seed: u64) -> Vec<AnnotationRecord> {
    let tag = |i: usize| format!("synth-{i:04}");
    match kind {
        CorpusKind::Scene => scenes(count, seed)
            .into_iter()
            .enumerate()
            .map(|(i, scene)| AnnotationRecord {
                image_id: tag(i),
                size: (scene.height, scene.width),
                texts: scene
                    .polygons
                    .into_iter()
                    .map(|polygon| TextAnnotation {
                        polygon,
                        transcription: None,
                        ignore: false,
                    })
                    .collect(),
            })
            .collect(),
        _ => {
            let polygons = match kind {
                CorpusKind::Straight => straight_ribbons(count, seed),
                CorpusKind::Quadratic => quadratic_ribbons(count, seed),
                CorpusKind::Cubic => cubic_ribbons(count, seed),
                CorpusKind::Sinusoid => sinusoid_ribbons(count, seed),
                CorpusKind::NoisyRect => noisy_rectangles(count, 1.0, seed),
                CorpusKind::Scene => unreachable!(),
            };
            polygons
                .into_iter()
                .enumerate()
                .map(|(i, polygon)| {
                    let size = bounds_size(std::slice::from_ref(&polygon));
                    AnnotationRecord {
                        image_id: tag(i),
                        size,
                        texts: vec![TextAnnotation {
                            polygon,
                            transcription: None,
                            ignore: false,
                        }],
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvefit::ParamMask;
    use crate::encoder::encode_text;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(quadratic_ribbons(5, 9), quadratic_ribbons(5, 9));
        assert_ne!(quadratic_ribbons(5, 9), quadratic_ribbons(5, 10));
    }

    #[test]
    fn quadratic_ribbons_encode_with_near_zero_residual_shape() {
        for poly in quadratic_ribbons(10, 4) {
            let label = encode_text(&poly, &ParamMask::default_mask(), 7).unwrap();
            // Construction guarantees |Θ₂| within the sampled band.
            let a = label.theta_top().coefficient_for_degree(2).unwrap();
            assert!((0.2..0.75).contains(&a.abs()), "theta2 {a}");
        }
    }

    #[test]
    fn scenes_are_disjoint() {
        for scene in scenes(10, 21) {
            assert_eq!(scene.polygons.len(), 2);
            let iou =
                crate::geometry::polygon_iou(&scene.polygons[0], &scene.polygons[1]).value;
            assert_eq!(iou, 0.0, "scene instances must not overlap");
            for poly in &scene.polygons {
                let (min, max) = poly.bounding_box();
                assert!(min.x >= 0.0 && min.y >= 0.0);
                assert!(max.x < 512.0 && max.y < 512.0, "instance leaves canvas");
            }
        }
    }

    #[test]
    fn noisy_rectangles_have_annotation_counts() {
        for poly in noisy_rectangles(5, 1.0, 3) {
            assert_eq!(poly.len(), 14);
        }
    }
}
