//! Center-line extraction: morphological thinning of a binary component
//! followed by pruning to the longest skeleton path.

use super::raster::{connected_components, ScalarMap};

/// An ordered 8-connected pixel chain through a text region.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterLine {
    pixels: Vec<(usize, usize)>,
}

impl CenterLine {
    pub fn pixels(&self) -> &[(usize, usize)] {
        &self.pixels
    }

    /// (row, col) of the chain start: the extreme with the smaller column
    /// (tie: smaller row).
    pub fn start(&self) -> (usize, usize) {
        self.pixels[0]
    }

    pub fn end(&self) -> (usize, usize) {
        *self.pixels.last().unwrap()
    }

    pub fn midpoint(&self) -> (usize, usize) {
        self.pixels[self.pixels.len() / 2]
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }
}

/// A binary sub-grid with zero padding outside its bounds.
struct Grid {
    h: usize,
    w: usize,
    cells: Vec<bool>,
}

impl Grid {
    #[inline]
    fn get(&self, r: i64, c: i64) -> bool {
        if r < 0 || c < 0 || r >= self.h as i64 || c >= self.w as i64 {
            false
        } else {
            self.cells[r as usize * self.w + c as usize]
        }
    }

    #[inline]
    fn neighbors(&self, r: i64, c: i64) -> [bool; 8] {
        // p2..p9 clockwise starting north.
        [
            self.get(r - 1, c),
            self.get(r - 1, c + 1),
            self.get(r, c + 1),
            self.get(r + 1, c + 1),
            self.get(r + 1, c),
            self.get(r + 1, c - 1),
            self.get(r, c - 1),
            self.get(r - 1, c - 1),
        ]
    }
}

/// Two-subiteration thinning (Zhang–Suen); reduces a blob to a one-pixel
/// skeleton while preserving connectivity.
fn thin(grid: &mut Grid) {
    loop {
        let mut changed = false;
        for phase in 0..2 {
            let mut to_clear = Vec::new();
            for r in 0..grid.h as i64 {
                for c in 0..grid.w as i64 {
                    if !grid.get(r, c) {
                        continue;
                    }
                    let n = grid.neighbors(r, c);
                    let count = n.iter().filter(|&&b| b).count();
                    if !(2..=6).contains(&count) {
                        continue;
                    }
                    let transitions = (0..8)
                        .filter(|&i| !n[i] && n[(i + 1) % 8])
                        .count();
                    if transitions != 1 {
                        continue;
                    }
                    let (p2, p4, p6, p8) = (n[0], n[2], n[4], n[6]);
                    let ok = if phase == 0 {
                        !(p2 && p4 && p6) && !(p4 && p6 && p8)
                    } else {
                        !(p2 && p4 && p8) && !(p2 && p6 && p8)
                    };
                    if ok {
                        to_clear.push((r as usize, c as usize));
                    }
                }
            }
            for &(r, c) in &to_clear {
                grid.cells[r * grid.w + c] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// BFS over skeleton pixels from `start`; returns per-pixel parent links and
/// the farthest pixel (ties broken by scan order, deterministic).
fn bfs_farthest(
    grid: &Grid,
    start: (usize, usize),
) -> ((usize, usize), Vec<i32>, Vec<usize>) {
    let n = grid.h * grid.w;
    let mut dist = vec![-1i32; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::new();
    let start_idx = start.0 * grid.w + start.1;
    dist[start_idx] = 0;
    queue.push(start_idx);
    let mut head = 0;
    let mut far = (start, 0i32);
    while head < queue.len() {
        let idx = queue[head];
        head += 1;
        let (r, c) = (idx / grid.w, idx % grid.w);
        if dist[idx] > far.1 {
            far = ((r, c), dist[idx]);
        }
        for dr in -1i64..=1 {
            for dc in -1i64..=1 {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                if !grid.get(nr, nc) {
                    continue;
                }
                let nidx = nr as usize * grid.w + nc as usize;
                if dist[nidx] < 0 {
                    dist[nidx] = dist[idx] + 1;
                    parent[nidx] = idx;
                    queue.push(nidx);
                }
            }
        }
    }
    (far.0, dist, parent)
}

/// Extracts one center line per 8-connected component of `mask > threshold`:
/// the component is thinned and the skeleton pruned to its longest path
/// (double breadth-first search). Components thinner than two pixels come
/// out as short or single-pixel chains, which are accepted.
pub fn extract_centerlines(mask: &ScalarMap, threshold: f32) -> Vec<CenterLine> {
    let mut out = Vec::new();
    for comp in connected_components(mask, threshold) {
        let (r0, c0, r1, c1) = comp.bbox;
        let h = r1 - r0 + 1;
        let w = c1 - c0 + 1;
        let mut grid = Grid {
            h,
            w,
            cells: vec![false; h * w],
        };
        for &(r, c) in &comp.pixels {
            grid.cells[(r - r0) * w + (c - c0)] = true;
        }
        thin(&mut grid);

        // Seed from the first remaining skeleton pixel in scan order.
        let Some(seed_idx) = grid.cells.iter().position(|&b| b) else {
            continue;
        };
        let seed = (seed_idx / w, seed_idx % w);
        let (tip_a, _, _) = bfs_farthest(&grid, seed);
        let (tip_b, _, parent) = bfs_farthest(&grid, tip_a);

        let mut chain = Vec::new();
        let mut cur = tip_b.0 * w + tip_b.1;
        loop {
            chain.push((cur / w + r0, cur % w + c0));
            if parent[cur] == usize::MAX {
                break;
            }
            cur = parent[cur];
        }
        // Order the chain left-to-right (tie: topmost).
        let a = chain[0];
        let b = *chain.last().unwrap();
        if (b.1, b.0) < (a.1, a.0) {
            chain.reverse();
        }
        out.push(CenterLine { pixels: chain });
    }
    out
}
