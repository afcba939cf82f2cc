//! Raster supervision labels and the inverse decode path.
//!
//! Per image the label stack holds four aligned maps:
//!
//! * `concentric` — the inward-shrunk text regions used to locate instances,
//! * `edge_heat` — a Gaussian band around the two truncated edge polylines,
//! * `trunc_offsets` — 8 channels holding, at each center-line endpoint, the
//!   short offset vectors from that endpoint to the four truncation points,
//! * `edge_params` — the flattened curve coefficients of both edges, painted
//!   over each instance's concentric region.
//!
//! Decoding walks the same path backwards: threshold the concentric map,
//! take connected components, thin each to a center line, read coefficients
//! at the line midpoint and truncation offsets at the line endpoints, then
//! rebuild contours through the decoder.

mod centerline;
mod raster;

pub use centerline::{extract_centerlines, CenterLine};
pub use raster::{
    connected_components, fill_polygon, for_each_inside_pixel, point_polygon_boundary_distance,
    point_segment_distance, Component, ScalarMap,
};

use crate::curvefit::{CurveParams, ParamMask};
use crate::decoder::{reconstruct_curve_box, ReconstructionConfig};
use crate::encoder::{label_edges, CurveBoxLabel, EdgePair, TruncationPoints};
use crate::error::{Error, Result};
use crate::geometry::{euclidean_distance, Point2, TextPolygon};
use crate::io::tensor::TensorFile;

/// Number of truncation-offset channels (x and y for four points).
pub const TRUNC_CHANNELS: usize = 8;

/// Gaussian contributions beyond this many sigmas are below 1e-6 and left
/// at zero.
const HEAT_CUTOFF_SIGMAS: f64 = 5.5;

/// Texts smaller than this render as collapsed concentric masks; anything
/// below it is also undecodable (see [`DecodeConfig::min_component_area`]).
pub const MIN_TEXT_AREA: f64 = 16.0;

/// Per-image raster label stack. All maps share one H×W grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMaps {
    h: usize,
    w: usize,
    mask: ParamMask,
    /// Shrunk text regions, 1 inside.
    pub concentric: ScalarMap,
    /// Edge-band Gaussian in [0, 1].
    pub edge_heat: ScalarMap,
    /// H×W×8 channel-last truncation offsets, nonzero only at center-line
    /// endpoints.
    pub trunc_offsets: Vec<f32>,
    /// H×W×P channel-last curve coefficients (top edge first, then bottom).
    pub edge_params: Vec<f32>,
}

impl LabelMaps {
    pub fn zeros(h: usize, w: usize, mask: ParamMask) -> Self {
        let p = 2 * mask.free_param_count();
        Self {
            h,
            w,
            mask,
            concentric: ScalarMap::zeros(h, w),
            edge_heat: ScalarMap::zeros(h, w),
            trunc_offsets: vec![0.0; h * w * TRUNC_CHANNELS],
            edge_params: vec![0.0; h * w * p],
        }
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.w
    }

    pub fn mask(&self) -> &ParamMask {
        &self.mask
    }

    /// Per-edge + both-edge coefficient channel count (ch_e).
    pub fn param_channels(&self) -> usize {
        2 * self.mask.free_param_count()
    }

    fn offset_at(&self, r: usize, c: usize, ch: usize) -> f32 {
        self.trunc_offsets[(r * self.w + c) * TRUNC_CHANNELS + ch]
    }

    fn params_at(&self, r: usize, c: usize) -> Vec<f64> {
        let p = self.param_channels();
        let base = (r * self.w + c) * p;
        self.edge_params[base..base + p]
            .iter()
            .map(|&v| v as f64)
            .collect()
    }

    /// Channel names used in the tensor serialization.
    pub fn channel_names(&self) -> Vec<String> {
        let mut names = vec!["concentric".to_string(), "edge_heat".to_string()];
        for tag in [
            "tp_s_t_dx", "tp_s_t_dy", "tp_s_b_dx", "tp_s_b_dy", "tp_e_t_dx", "tp_e_t_dy",
            "tp_e_b_dx", "tp_e_b_dy",
        ] {
            names.push(tag.to_string());
        }
        let per_edge = self.mask.free_param_count();
        for edge in ["theta_top", "theta_bottom"] {
            for i in 0..per_edge {
                names.push(format!("{edge}_{i}"));
            }
        }
        names
    }

    /// Packs the stack into one rank-3 H×W×C tensor (channel-last).
    pub fn to_tensor(&self) -> TensorFile {
        let p = self.param_channels();
        let channels = 2 + TRUNC_CHANNELS + p;
        let mut data = vec![0.0f32; self.h * self.w * channels];
        for r in 0..self.h {
            for c in 0..self.w {
                let base = (r * self.w + c) * channels;
                data[base] = self.concentric.get(r, c);
                data[base + 1] = self.edge_heat.get(r, c);
                for ch in 0..TRUNC_CHANNELS {
                    data[base + 2 + ch] = self.offset_at(r, c, ch);
                }
                let pbase = (r * self.w + c) * p;
                data[base + 2 + TRUNC_CHANNELS..base + channels]
                    .copy_from_slice(&self.edge_params[pbase..pbase + p]);
            }
        }
        TensorFile::new(
            vec![self.h as u32, self.w as u32, channels as u32],
            self.channel_names(),
            data,
        )
        .expect("consistent construction")
    }

    /// Unpacks a stack produced by [`LabelMaps::to_tensor`]. The mask is not
    /// stored in the tensor; it must be supplied and is validated against
    /// the channel count.
    pub fn from_tensor(tensor: &TensorFile, mask: ParamMask) -> Result<Self> {
        let dims = tensor.dims();
        if dims.len() != 3 {
            return Err(Error::ShapeMismatch(format!(
                "label maps tensor must be rank 3, got {}",
                dims.len()
            )));
        }
        let (h, w, channels) = (dims[0] as usize, dims[1] as usize, dims[2] as usize);
        let p = 2 * mask.free_param_count();
        if channels != 2 + TRUNC_CHANNELS + p {
            return Err(Error::ShapeMismatch(format!(
                "tensor has {channels} channels but mask {mask} implies {}",
                2 + TRUNC_CHANNELS + p
            )));
        }
        let mut maps = LabelMaps::zeros(h, w, mask);
        let data = tensor.data();
        for r in 0..h {
            for c in 0..w {
                let base = (r * w + c) * channels;
                maps.concentric.set(r, c, data[base]);
                maps.edge_heat.set(r, c, data[base + 1]);
                for ch in 0..TRUNC_CHANNELS {
                    maps.trunc_offsets[(r * w + c) * TRUNC_CHANNELS + ch] = data[base + 2 + ch];
                }
                let pbase = (r * w + c) * p;
                maps.edge_params[pbase..pbase + p]
                    .copy_from_slice(&data[base + 2 + TRUNC_CHANNELS..base + channels]);
            }
        }
        Ok(maps)
    }
}

/// Knobs for supervision-map rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapRenderConfig {
    /// Concentric shrink ratio r in (0, 1); the inward offset is
    /// `area·(1−r²)/perimeter`.
    pub shrink_ratio: f64,
    /// Gaussian σ as a fraction of the mean edge chord length.
    pub sigma_frac: f64,
    /// Curve samples per edge used to rasterize instance geometry.
    pub samples: usize,
}

impl Default for MapRenderConfig {
    fn default() -> Self {
        Self {
            shrink_ratio: 0.7,
            sigma_frac: 0.05,
            samples: 100,
        }
    }
}

/// Knobs for map decoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeConfig {
    /// Concentric-map binarization threshold.
    pub conf_threshold: f32,
    /// Components smaller than this many pixels are discarded.
    pub min_component_area: usize,
    pub reconstruction: ReconstructionConfig,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        Self {
            conf_threshold: 0.5,
            min_component_area: 16,
            reconstruction: ReconstructionConfig::default(),
        }
    }
}

/// A rendered concentric mask plus a collapse flag.
#[derive(Debug, Clone)]
pub struct ConcentricMask {
    pub map: ScalarMap,
    /// Set when the inward offset swallowed the polygon entirely.
    pub collapsed: bool,
}

/// Renders the inward-shrunk region of `poly`: interior pixels whose
/// distance to the polygon boundary is at least `area·(1−r²)/perimeter`.
pub fn render_concentric_mask(
    poly: &TextPolygon,
    shrink_ratio: f64,
    h: usize,
    w: usize,
) -> Result<ConcentricMask> {
    if !(0.0 < shrink_ratio && shrink_ratio < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "shrink ratio must lie in (0, 1), got {shrink_ratio}"
        )));
    }
    let perimeter = poly.perimeter();
    if perimeter < crate::geometry::DEGENERATE_EPS || poly.area() < MIN_TEXT_AREA {
        return Ok(ConcentricMask {
            map: ScalarMap::zeros(h, w),
            collapsed: true,
        });
    }
    let offset = poly.area() * (1.0 - shrink_ratio * shrink_ratio) / perimeter;

    let mut map = ScalarMap::zeros(h, w);
    let mut any = false;
    for_each_inside_pixel(poly, h, w, |r, c| {
        let center = Point2::new(c as f64 + 0.5, r as f64 + 0.5);
        if point_polygon_boundary_distance(center, poly) >= offset {
            map.set(r, c, 1.0);
            any = true;
        }
    });
    Ok(ConcentricMask {
        map,
        collapsed: !any,
    })
}

/// Gaussian band around the two truncated edge polylines:
/// `exp(−d²/(2σ²))` of the distance to the nearest edge point, with
/// σ = `sigma_frac` × mean chord length. Values below ~1e-6 (beyond 5.5σ)
/// stay zero.
pub fn render_edge_heatmap(
    edges: &EdgePair,
    sigma_frac: f64,
    h: usize,
    w: usize,
) -> Result<ScalarMap> {
    let chord = |pts: &[Point2]| euclidean_distance(pts[0], pts[pts.len() - 1]);
    let mean_chord = (chord(edges.top()) + chord(edges.bottom())) / 2.0;
    let sigma = sigma_frac * mean_chord;
    if sigma.is_nan() || sigma <= crate::geometry::DEGENERATE_EPS {
        return Err(Error::DegenerateChord);
    }

    let mut map = ScalarMap::zeros(h, w);
    let cutoff = HEAT_CUTOFF_SIGMAS * sigma;
    let inv = 1.0 / (2.0 * sigma * sigma);
    for polyline in [edges.top(), edges.bottom()] {
        for seg in polyline.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let r0 = ((a.y.min(b.y) - cutoff - 0.5).floor().max(0.0)) as usize;
            let r1 = ((a.y.max(b.y) + cutoff + 0.5).ceil().max(0.0) as usize).min(h);
            let c0 = ((a.x.min(b.x) - cutoff - 0.5).floor().max(0.0)) as usize;
            let c1 = ((a.x.max(b.x) + cutoff + 0.5).ceil().max(0.0) as usize).min(w);
            for r in r0..r1 {
                for c in c0..c1 {
                    let p = Point2::new(c as f64 + 0.5, r as f64 + 0.5);
                    let d = point_segment_distance(p, a, b);
                    if d > cutoff {
                        continue;
                    }
                    let v = (-d * d * inv).exp() as f32;
                    if v > map.get(r, c) {
                        map.set(r, c, v);
                    }
                }
            }
        }
    }
    Ok(map)
}

fn pixel_center(p: (usize, usize)) -> Point2 {
    Point2::new(p.1 as f64 + 0.5, p.0 as f64 + 0.5)
}

/// Writes the eight truncation-offset channels: at the center-line start
/// pixel, channels 0–3 hold the vectors to the two start truncation points;
/// at the end pixel, channels 4–7 hold the vectors to the end points. All
/// other pixels stay zero.
pub fn render_truncation_offsets(
    truncation: &TruncationPoints,
    line: &CenterLine,
    h: usize,
    w: usize,
) -> Vec<f32> {
    let mut out = vec![0.0f32; h * w * TRUNC_CHANNELS];
    write_offsets(&mut out, w, truncation, line);
    out
}

fn write_offsets(
    out: &mut [f32],
    w: usize,
    truncation: &TruncationPoints,
    line: &CenterLine,
) {
    let start = line.start();
    let end = line.end();
    let qs = pixel_center(start);
    let qe = pixel_center(end);
    let sbase = (start.0 * w + start.1) * TRUNC_CHANNELS;
    out[sbase] = (truncation.tp_s_t.x - qs.x) as f32;
    out[sbase + 1] = (truncation.tp_s_t.y - qs.y) as f32;
    out[sbase + 2] = (truncation.tp_s_b.x - qs.x) as f32;
    out[sbase + 3] = (truncation.tp_s_b.y - qs.y) as f32;
    let ebase = (end.0 * w + end.1) * TRUNC_CHANNELS;
    out[ebase + 4] = (truncation.tp_e_t.x - qe.x) as f32;
    out[ebase + 5] = (truncation.tp_e_t.y - qe.y) as f32;
    out[ebase + 6] = (truncation.tp_e_b.x - qe.x) as f32;
    out[ebase + 7] = (truncation.tp_e_b.y - qe.y) as f32;
}

/// Rendering outcome; `skipped` lists label indices whose concentric mask
/// collapsed (instance too small for the grid).
#[derive(Debug, Clone)]
pub struct RenderedMaps {
    pub maps: LabelMaps,
    pub skipped: Vec<usize>,
}

/// Renders the full per-image stack for a set of instances. Instances are
/// rasterized from their reconstructed curve boxes, so the maps reflect the
/// representation itself rather than the raw annotations.
pub fn render_label_maps(
    labels: &[CurveBoxLabel],
    h: usize,
    w: usize,
    cfg: &MapRenderConfig,
) -> Result<RenderedMaps> {
    let mask = match labels.first() {
        Some(l) => l.mask().clone(),
        None => ParamMask::default_mask(),
    };
    if let Some(bad) = labels.iter().find(|l| l.mask() != &mask) {
        return Err(Error::IncompatibleParams {
            left: mask.to_string(),
            right: bad.mask().to_string(),
        });
    }
    let recon = ReconstructionConfig::new(cfg.samples)?;
    let mut maps = LabelMaps::zeros(h, w, mask);
    let mut skipped = Vec::new();

    for (idx, label) in labels.iter().enumerate() {
        let poly = reconstruct_curve_box(label, &recon)?.polygon;
        let conc = render_concentric_mask(&poly, cfg.shrink_ratio, h, w)?;
        if conc.collapsed {
            skipped.push(idx);
            continue;
        }
        let lines = extract_centerlines(&conc.map, 0.5);
        let Some(line) = lines.iter().max_by_key(|l| l.len()) else {
            skipped.push(idx);
            continue;
        };

        let edges = label_edges(label, cfg.samples)?;
        let heat = render_edge_heatmap(&edges, cfg.sigma_frac, h, w)?;
        for r in 0..h {
            for c in 0..w {
                if heat.get(r, c) > maps.edge_heat.get(r, c) {
                    maps.edge_heat.set(r, c, heat.get(r, c));
                }
            }
        }

        write_offsets(&mut maps.trunc_offsets, w, label.truncation(), line);

        let flat: Vec<f32> = label
            .theta_top()
            .to_flat()
            .into_iter()
            .chain(label.theta_bottom().to_flat())
            .map(|v| v as f32)
            .collect();
        let p = maps.param_channels();
        for r in 0..h {
            for c in 0..w {
                if conc.map.get(r, c) > 0.5 {
                    maps.concentric.set(r, c, 1.0);
                    let base = (r * w + c) * p;
                    maps.edge_params[base..base + p].copy_from_slice(&flat);
                }
            }
        }
    }
    Ok(RenderedMaps { maps, skipped })
}

/// Decodes prediction-shaped maps back into contours: threshold the
/// concentric map, drop undersized components, thin each to a center line,
/// read curve parameters at its midpoint and truncation points at its
/// endpoints, then reconstruct. Components whose values do not form a valid
/// curve box are skipped.
pub fn decode_maps(maps: &LabelMaps, cfg: &DecodeConfig) -> Vec<TextPolygon> {
    let mut out = Vec::new();
    let comps = connected_components(&maps.concentric, cfg.conf_threshold);
    for comp in comps {
        if comp.area() < cfg.min_component_area {
            continue;
        }
        let mut comp_mask = ScalarMap::zeros(maps.h, maps.w);
        for &(r, c) in &comp.pixels {
            comp_mask.set(r, c, 1.0);
        }
        let lines = extract_centerlines(&comp_mask, 0.5);
        let Some(line) = lines.iter().max_by_key(|l| l.len()) else {
            continue;
        };

        let (mr, mc) = line.midpoint();
        let flat = maps.params_at(mr, mc);
        let per_edge = maps.mask.free_param_count();
        let Ok(theta_top) = CurveParams::from_flat(maps.mask.clone(), &flat[..per_edge]) else {
            continue;
        };
        let Ok(theta_bottom) = CurveParams::from_flat(maps.mask.clone(), &flat[per_edge..]) else {
            continue;
        };

        let start = line.start();
        let end = line.end();
        let qs = pixel_center(start);
        let qe = pixel_center(end);
        let off = |p: (usize, usize), ch: usize| maps.offset_at(p.0, p.1, ch) as f64;
        let truncation = TruncationPoints {
            tp_s_t: Point2::new(qs.x + off(start, 0), qs.y + off(start, 1)),
            tp_s_b: Point2::new(qs.x + off(start, 2), qs.y + off(start, 3)),
            tp_e_t: Point2::new(qe.x + off(end, 4), qe.y + off(end, 5)),
            tp_e_b: Point2::new(qe.x + off(end, 6), qe.y + off(end, 7)),
        };

        let Ok(label) = CurveBoxLabel::new(theta_top, theta_bottom, truncation) else {
            continue;
        };
        match reconstruct_curve_box(&label, &cfg.reconstruction) {
            Ok(rec) => out.push(rec.polygon),
            Err(_) => continue,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode_text;
    use crate::geometry::polygon_iou;
    use approx::assert_abs_diff_eq;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> TextPolygon {
        TextPolygon::new(vec![
            Point2::new(x0, y0),
            Point2::new(x1, y0),
            Point2::new(x1, y1),
            Point2::new(x0, y1),
        ])
        .unwrap()
    }

    #[test]
    fn concentric_mask_20x4_rect_is_strictly_inside() {
        let poly = rect(2.0, 2.0, 22.0, 6.0);
        let conc = render_concentric_mask(&poly, 0.7, 10, 26).unwrap();
        assert!(!conc.collapsed);
        // Inward offset d = 80·0.51/48 = 0.85: analytic shrunk box is
        // 18.3 × 2.3 ≈ 42 px²; pixel quantization stays in a loose band.
        let area = conc.map.count_above(0.5);
        assert!((20..=60).contains(&area), "area {area}");
        for r in 0..10 {
            for c in 0..26 {
                if conc.map.get(r, c) > 0.5 {
                    let p = Point2::new(c as f64 + 0.5, r as f64 + 0.5);
                    assert!(
                        point_polygon_boundary_distance(p, &poly) >= 0.84,
                        "pixel ({r},{c}) hugs the boundary"
                    );
                }
            }
        }
    }

    #[test]
    fn concentric_mask_area_grows_with_shrink_ratio() {
        let poly = rect(2.0, 2.0, 40.0, 14.0);
        let mut last = 0usize;
        for r in [0.3, 0.5, 0.7, 0.9] {
            let conc = render_concentric_mask(&poly, r, 20, 44).unwrap();
            let area = conc.map.count_above(0.5);
            assert!(area >= last, "area must be non-decreasing in r");
            last = area;
        }
    }

    #[test]
    fn tiny_text_collapses_with_warning() {
        let poly = rect(1.0, 1.0, 3.0, 3.0);
        let conc = render_concentric_mask(&poly, 0.7, 6, 6).unwrap();
        assert!(conc.collapsed);
        assert_eq!(conc.map.count_above(0.5), 0);
    }

    #[test]
    fn heatmap_analytic_values() {
        // Horizontal edges through pixel-center rows; mean chord 40 px and
        // sigma_frac 0.1 give σ = 4 px.
        let top: Vec<Point2> = vec![Point2::new(4.5, 20.5), Point2::new(44.5, 20.5)];
        let bottom: Vec<Point2> = vec![Point2::new(4.5, 40.5), Point2::new(44.5, 40.5)];
        let edges = EdgePair::new(top, bottom).unwrap();
        let map = render_edge_heatmap(&edges, 0.1, 64, 64).unwrap();

        // On the edge.
        assert_abs_diff_eq!(map.get(20, 20) as f64, 1.0, epsilon = 1e-6);
        // One sigma away (4 px).
        assert_abs_diff_eq!(map.get(24, 20) as f64, (-0.5f64).exp(), epsilon = 1e-6);
        // Exactly 3σ above the top edge.
        assert_abs_diff_eq!(map.get(8, 20) as f64, (-4.5f64).exp(), epsilon = 1e-6);
        // Farther than 3σ from both edges.
        assert!(map.get(7, 20) < 0.012);
        // Monotone non-increasing while walking away from the top edge
        // toward the outside.
        let mut prev = map.get(20, 20);
        for r in (0..20).rev() {
            let v = map.get(r, 20);
            assert!(v <= prev + 1e-6);
            prev = v;
        }
    }

    #[test]
    fn offsets_live_only_at_endpoints() {
        let poly = rect(4.0, 10.0, 44.0, 20.0);
        let label = encode_text(&poly, &ParamMask::default_mask(), 7).unwrap();
        let conc = render_concentric_mask(&poly, 0.7, 32, 52).unwrap();
        let line = &extract_centerlines(&conc.map, 0.5)[0];
        let offs = render_truncation_offsets(label.truncation(), line, 32, 52);

        let nonzero_pixels: Vec<usize> = (0..32 * 52)
            .filter(|&i| (0..TRUNC_CHANNELS).any(|ch| offs[i * TRUNC_CHANNELS + ch] != 0.0))
            .collect();
        let s = line.start();
        let e = line.end();
        assert_eq!(nonzero_pixels.len(), 2);
        assert!(nonzero_pixels.contains(&(s.0 * 52 + s.1)));
        assert!(nonzero_pixels.contains(&(e.0 * 52 + e.1)));

        // Rectangle: the two start offsets point at the left corners with
        // equal x and mirrored y around the centerline row.
        let sb = (s.0 * 52 + s.1) * TRUNC_CHANNELS;
        assert_abs_diff_eq!(offs[sb] as f64, offs[sb + 2] as f64, epsilon = 1e-5);
        let qy = s.0 as f64 + 0.5;
        assert_abs_diff_eq!(
            (offs[sb + 1] as f64 + qy - 10.0).abs(),
            (offs[sb + 3] as f64 + qy - 20.0).abs(),
            epsilon = 1e-5
        );
        assert!(offs[sb + 1] < 0.0 && offs[sb + 3] > 0.0, "opposite y signs");
    }

    #[test]
    fn start_offset_is_zero_when_tp_sits_on_the_pixel() {
        let mut line_map = ScalarMap::zeros(8, 16);
        for c in 2..12 {
            line_map.set(4, c, 1.0);
        }
        let line = &extract_centerlines(&line_map, 0.5)[0];
        let tp = TruncationPoints {
            tp_s_t: pixel_center(line.start()),
            tp_e_t: Point2::new(14.0, 2.0),
            tp_s_b: Point2::new(2.0, 7.0),
            tp_e_b: Point2::new(14.0, 7.0),
        };
        let offs = render_truncation_offsets(&tp, line, 8, 16);
        let sb = (line.start().0 * 16 + line.start().1) * TRUNC_CHANNELS;
        assert_eq!(offs[sb], 0.0);
        assert_eq!(offs[sb + 1], 0.0);
    }

    #[test]
    fn all_zero_maps_decode_to_nothing() {
        let maps = LabelMaps::zeros(32, 32, ParamMask::default_mask());
        assert!(decode_maps(&maps, &DecodeConfig::default()).is_empty());
    }

    #[test]
    fn single_instance_round_trip() {
        let poly = rect(20.0, 40.0, 180.0, 80.0);
        let label = encode_text(&poly, &ParamMask::default_mask(), 7).unwrap();
        let rendered =
            render_label_maps(&[label], 128, 220, &MapRenderConfig::default()).unwrap();
        assert!(rendered.skipped.is_empty());
        let decoded = decode_maps(&rendered.maps, &DecodeConfig::default());
        assert_eq!(decoded.len(), 1);
        let iou = polygon_iou(&poly, &decoded[0]).value;
        assert!(iou >= 0.8, "round trip IoU {iou}");
    }

    #[test]
    fn two_instances_round_trip() {
        let a = rect(10.0, 20.0, 150.0, 52.0);
        let b = rect(30.0, 90.0, 200.0, 126.0);
        let mask = ParamMask::default_mask();
        let labels = vec![
            encode_text(&a, &mask, 7).unwrap(),
            encode_text(&b, &mask, 7).unwrap(),
        ];
        let rendered =
            render_label_maps(&labels, 160, 220, &MapRenderConfig::default()).unwrap();
        let decoded = decode_maps(&rendered.maps, &DecodeConfig::default());
        assert_eq!(decoded.len(), 2);
        for gt in [&a, &b] {
            let best = decoded
                .iter()
                .map(|p| polygon_iou(gt, p).value)
                .fold(0.0f64, f64::max);
            assert!(best >= 0.8, "instance IoU {best}");
        }
    }

    #[test]
    fn decode_respects_min_component_area() {
        let mut maps = LabelMaps::zeros(32, 32, ParamMask::default_mask());
        for r in 4..7 {
            for c in 4..7 {
                maps.concentric.set(r, c, 1.0);
            }
        }
        let cfg = DecodeConfig {
            min_component_area: 16,
            ..DecodeConfig::default()
        };
        assert!(decode_maps(&maps, &cfg).is_empty());
    }

    #[test]
    fn tensor_round_trip_preserves_stack() {
        let poly = rect(8.0, 8.0, 100.0, 34.0);
        let label = encode_text(&poly, &ParamMask::default_mask(), 7).unwrap();
        let rendered = render_label_maps(&[label], 48, 112, &MapRenderConfig::default()).unwrap();
        let tensor = rendered.maps.to_tensor();
        let back = LabelMaps::from_tensor(&tensor, ParamMask::default_mask()).unwrap();
        assert_eq!(rendered.maps, back);

        let wrong = LabelMaps::from_tensor(&tensor, ParamMask::top_run(1, 1, false).unwrap());
        assert!(wrong.is_err());
    }
}
