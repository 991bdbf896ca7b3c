//! Fruchterman-Reingold spring layout.

use std::collections::HashMap;

use rand::Rng;

use crate::rng;

pub const DEFAULT_ITERATIONS: usize = 300;
const INITIAL_TEMPERATURE: f64 = 0.1;
const MIN_DISTANCE: f64 = 0.01;
/// Above this node count repulsion only acts between nodes closer than `2k`.
const GRID_THRESHOLD: usize = 500;

/// Positions for nodes `0..n` given weighted undirected edges.
///
/// The simulation runs unconstrained; afterwards the drawing is centred on
/// `(0.5, 0.5)` and shrunk to fit the unit square if it is larger. Smaller
/// drawings keep their scale, so distances stay comparable across graphs.
pub fn spring_layout(n: usize, edges: &[(u32, u32, f64)], seed: u64, iterations: usize) -> Vec<[f64; 2]> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![[0.5, 0.5]];
    }
    let mut rng = rng::seeded(seed);
    let mut pos: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        adj[a as usize].push((b as usize, w));
        adj[b as usize].push((a as usize, w));
    }

    let k = (1.0 / n as f64).sqrt();
    let mut t = INITIAL_TEMPERATURE;
    let dt = INITIAL_TEMPERATURE / (iterations as f64 + 1.0);
    let mut disp = vec![[0.0f64; 2]; n];
    for _ in 0..iterations {
        disp.iter_mut().for_each(|d| *d = [0.0, 0.0]);
        if n > GRID_THRESHOLD {
            repulse_grid(&pos, k, &mut disp);
        } else {
            for i in 0..n {
                for j in (i + 1)..n {
                    let (dx, dy, d) = delta(&pos, i, j);
                    let f = k * k / (d * d);
                    disp[i][0] += dx * f;
                    disp[i][1] += dy * f;
                    disp[j][0] -= dx * f;
                    disp[j][1] -= dy * f;
                }
            }
        }
        for (i, list) in adj.iter().enumerate() {
            for &(j, w) in list {
                let (dx, dy, d) = delta(&pos, i, j);
                let f = w * d / k;
                disp[i][0] -= dx * f;
                disp[i][1] -= dy * f;
            }
        }
        for (p, d) in pos.iter_mut().zip(&disp) {
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt().max(MIN_DISTANCE);
            p[0] += d[0] * t / len;
            p[1] += d[1] * t / len;
        }
        t -= dt;
    }
    normalize(&mut pos);
    pos
}

fn delta(pos: &[[f64; 2]], i: usize, j: usize) -> (f64, f64, f64) {
    let dx = pos[i][0] - pos[j][0];
    let dy = pos[i][1] - pos[j][1];
    (dx, dy, (dx * dx + dy * dy).sqrt().max(MIN_DISTANCE))
}

fn repulse_grid(pos: &[[f64; 2]], k: f64, disp: &mut [[f64; 2]]) {
    let cell = 2.0 * k;
    let key = |p: &[f64; 2]| ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in pos.iter().enumerate() {
        buckets.entry(key(p)).or_default().push(i);
    }
    for (i, p) in pos.iter().enumerate() {
        let (cx, cy) = key(p);
        for gx in cx - 1..=cx + 1 {
            for gy in cy - 1..=cy + 1 {
                let Some(bucket) = buckets.get(&(gx, gy)) else {
                    continue;
                };
                for &j in bucket {
                    if j == i {
                        continue;
                    }
                    let (dx, dy, d) = delta(pos, i, j);
                    if d < cell {
                        let f = k * k / (d * d);
                        disp[i][0] += dx * f;
                        disp[i][1] += dy * f;
                    }
                }
            }
        }
    }
}

fn normalize(pos: &mut [[f64; 2]]) {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pos.iter() {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let scale = if extent > 1.0 { 1.0 / extent } else { 1.0 };
    let center = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    for p in pos.iter_mut() {
        for a in 0..2 {
            p[a] = 0.5 + (p[a] - center[a]) * scale;
        }
    }
}
