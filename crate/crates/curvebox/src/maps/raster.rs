//! Single-channel raster primitives behind the supervision maps: polygon
//! scan filling, point-to-segment distance, and connected components.
//!
//! Pixel (r, c) covers the unit square [c, c+1) × [r, r+1); geometric tests
//! use the pixel center (c + 0.5, r + 0.5).

use crate::geometry::{Point2, TextPolygon};

/// A dense H×W float map.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMap {
    h: usize,
    w: usize,
    data: Vec<f32>,
}

impl ScalarMap {
    pub fn zeros(h: usize, w: usize) -> Self {
        Self {
            h,
            w,
            data: vec![0.0; h * w],
        }
    }

    pub fn from_data(h: usize, w: usize, data: Vec<f32>) -> Option<Self> {
        (data.len() == h * w).then_some(Self { h, w, data })
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.w
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f32 {
        self.data[r * self.w + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f32) {
        self.data[r * self.w + c] = v;
    }

    /// Count of pixels strictly above `threshold`.
    pub fn count_above(&self, threshold: f32) -> usize {
        self.data.iter().filter(|&&v| v > threshold).count()
    }

    pub fn max_value(&self) -> f32 {
        self.data.iter().copied().fold(0.0f32, f32::max)
    }
}

/// Even-odd scanline fill. Invokes `visit(r, c)` for every pixel whose
/// center lies inside `poly`, restricted to the map bounds.
pub fn for_each_inside_pixel(
    poly: &TextPolygon,
    h: usize,
    w: usize,
    mut visit: impl FnMut(usize, usize),
) {
    let (min, max) = poly.bounding_box();
    let r0 = (min.y - 0.5).floor().max(0.0) as usize;
    let r1 = ((max.y + 0.5).ceil() as usize).min(h.saturating_sub(1));
    let pts = poly.points();
    let n = pts.len();
    let mut xs: Vec<f64> = Vec::with_capacity(8);
    for r in r0..=r1.min(h.saturating_sub(1)) {
        if h == 0 {
            break;
        }
        let y = r as f64 + 0.5;
        xs.clear();
        for i in 0..n {
            let p = pts[i];
            let q = pts[(i + 1) % n];
            if (p.y <= y && y < q.y) || (q.y <= y && y < p.y) {
                xs.push(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
            }
        }
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite crossing"));
        for pair in xs.chunks_exact(2) {
            // Pixel centers c + 0.5 within [x0, x1).
            let c0 = (pair[0] - 0.5).ceil().max(0.0) as usize;
            if pair[1] - 0.5 < 0.0 {
                continue;
            }
            let c1 = (pair[1] - 0.5).floor() as usize;
            for c in c0..=c1.min(w.saturating_sub(1)) {
                if w == 0 {
                    break;
                }
                if (c as f64 + 0.5) >= pair[0] && (c as f64 + 0.5) < pair[1] {
                    visit(r, c);
                }
            }
        }
    }
}

/// Fills `poly` into `map` with `value`.
pub fn fill_polygon(map: &mut ScalarMap, poly: &TextPolygon, value: f32) {
    let (h, w) = (map.height(), map.width());
    for_each_inside_pixel(poly, h, w, |r, c| map.set(r, c, value));
}

/// Euclidean distance from `p` to segment `a`–`b`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let vx = b.x - a.x;
    let vy = b.y - a.y;
    let len2 = vx * vx + vy * vy;
    let t = if len2 <= f64::EPSILON {
        0.0
    } else {
        (((p.x - a.x) * vx + (p.y - a.y) * vy) / len2).clamp(0.0, 1.0)
    };
    let cx = a.x + t * vx;
    let cy = a.y + t * vy;
    ((p.x - cx).powi(2) + (p.y - cy).powi(2)).sqrt()
}

/// Minimum distance from `p` to the closed boundary of `poly`.
pub fn point_polygon_boundary_distance(p: Point2, poly: &TextPolygon) -> f64 {
    let pts = poly.points();
    let n = pts.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let d = point_segment_distance(p, pts[i], pts[(i + 1) % n]);
        if d < best {
            best = d;
        }
    }
    best
}

/// One 8-connected component of a thresholded map.
#[derive(Debug, Clone)]
pub struct Component {
    /// Pixels in discovery order (seeded by row-major scan).
    pub pixels: Vec<(usize, usize)>,
    /// Inclusive bounds (r0, c0, r1, c1).
    pub bbox: (usize, usize, usize, usize),
}

impl Component {
    pub fn area(&self) -> usize {
        self.pixels.len()
    }
}

/// 8-connected components of `map > threshold`, in row-major first-seen
/// order (deterministic).
pub fn connected_components(map: &ScalarMap, threshold: f32) -> Vec<Component> {
    let (h, w) = (map.height(), map.width());
    let mut seen = vec![false; h * w];
    let mut out = Vec::new();
    let mut queue: Vec<(usize, usize)> = Vec::new();

    for r in 0..h {
        for c in 0..w {
            let idx = r * w + c;
            if seen[idx] || map.data()[idx] <= threshold {
                continue;
            }
            seen[idx] = true;
            queue.clear();
            queue.push((r, c));
            let mut pixels = Vec::new();
            let mut bbox = (r, c, r, c);
            let mut head = 0;
            while head < queue.len() {
                let (pr, pc) = queue[head];
                head += 1;
                pixels.push((pr, pc));
                bbox.0 = bbox.0.min(pr);
                bbox.1 = bbox.1.min(pc);
                bbox.2 = bbox.2.max(pr);
                bbox.3 = bbox.3.max(pc);
                for dr in -1i64..=1 {
                    for dc in -1i64..=1 {
                        if dr == 0 && dc == 0 {
                            continue;
                        }
                        let nr = pr as i64 + dr;
                        let nc = pc as i64 + dc;
                        if nr < 0 || nc < 0 || nr >= h as i64 || nc >= w as i64 {
                            continue;
                        }
                        let nidx = nr as usize * w + nc as usize;
                        if !seen[nidx] && map.data()[nidx] > threshold {
                            seen[nidx] = true;
                            queue.push((nr as usize, nc as usize));
                        }
                    }
                }
            }
            out.push(Component { pixels, bbox });
        }
    }
    out
}
