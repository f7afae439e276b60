use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{
    bfs_distances, canonical_labeling, girth, short_cycles, CubicMultigraph, EdgeId,
};

/// Octagon vertex `i` is joined to segment vertex `OCTAGON_PAIRING[i - 1]`.
const OCTAGON_PAIRING: [usize; 8] = [1, 4, 7, 2, 5, 8, 3, 6];

/// How the vertices of a source graph sit inside a lifted graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correspondence {
    /// Source vertex `i` maps to target vertex `forward[i]`.
    pub forward: Vec<usize>,
    /// Largest ratio `d_T(f u, f v) / d_S(u, v)` over distinct source pairs.
    pub a: f64,
    /// Largest additive gap `d_T(f u, f v) - d_S(u, v)`.
    pub b: i64,
    /// Every target vertex lies within this distance of the image.
    pub coverage_radius: usize,
    /// Octagon gadgets inserted.
    pub gadgets: usize,
}

/// Raises the girth to at least 6 by replacing edges of short cycles with
/// a nine-segment path carrying an octagon.
///
/// A graph that already has girth at least 6 is returned unchanged with the
/// identity correspondence. Otherwise the graph is first put in canonical
/// labeling; then, while a cycle of length at most 5 remains, the least one
/// (by length, then sorted edge ids) loses its least edge to a gadget.
///
/// ```
/// use systolic_atlas::multigraph::{girth, named};
/// use systolic_atlas::rewrite::girth_lift;
///
/// let (lifted, corr) = girth_lift(&named::theta()).unwrap();
/// assert!(girth(&lifted) >= 6);
/// assert_eq!(corr.forward.len(), 2);
/// ```
pub fn girth_lift(g: &CubicMultigraph) -> Result<(CubicMultigraph, Correspondence)> {
    if girth(g) >= 6 {
        let corr = Correspondence {
            forward: (0..g.vertex_count()).collect(),
            a: 1.0,
            b: 0,
            coverage_radius: 0,
            gadgets: 0,
        };
        return Ok((g.clone(), corr));
    }
    let forward = canonical_labeling(g);
    let mut current = g.relabeled(&forward)?.normalized();
    let cap = 10 * g.edge_count();
    let mut gadgets = 0;
    loop {
        let cycles = short_cycles(&current, 5);
        let Some(cycle) = cycles.first() else { break };
        if gadgets == cap {
            return Err(Error::NonTermination { cap });
        }
        let edge = *cycle.edges.iter().min().unwrap();
        current = insert_octagon(&current, edge)?;
        gadgets += 1;
    }
    let (a, b) = distortion(g, &current, &forward);
    let coverage_radius = coverage_radius(&current, &forward);
    let corr = Correspondence {
        forward,
        a,
        b,
        coverage_radius,
        gadgets,
    };
    Ok((current, corr))
}

/// Replaces `edge = xy` by the path `x s1 ... s8 y` and hangs an octagon
/// `h1 ... h8` on it. The first segment keeps the id of `edge`; all other
/// old edges keep theirs.
fn insert_octagon(g: &CubicMultigraph, edge: EdgeId) -> Result<CubicMultigraph> {
    let n = g.vertex_count();
    let seg = |i: usize| n + i - 1;
    let oct = |i: usize| n + 8 + i - 1;
    let mut edges = g.edge_list();
    let (x, y) = edges[edge.0];
    edges[edge.0] = (x, seg(1));
    for i in 1..8 {
        edges.push((seg(i), seg(i + 1)));
    }
    edges.push((seg(8), y));
    for i in 1..=8 {
        edges.push((oct(i), oct(i % 8 + 1)));
    }
    for (i, &j) in OCTAGON_PAIRING.iter().enumerate() {
        edges.push((oct(i + 1), seg(j)));
    }
    CubicMultigraph::from_edge_list(n + 16, &edges)
}

fn distortion(source: &CubicMultigraph, target: &CubicMultigraph, forward: &[usize]) -> (f64, i64) {
    let mut a: f64 = 1.0;
    let mut b: i64 = 0;
    for u in 0..source.vertex_count() {
        let ds = bfs_distances(source, u).expect("vertex in range");
        let dt = bfs_distances(target, forward[u]).expect("vertex in range");
        for v in 0..source.vertex_count() {
            if v == u {
                continue;
            }
            let (s, t) = (ds[v], dt[forward[v]]);
            a = a.max(t as f64 / s as f64);
            b = b.max(t as i64 - s as i64);
        }
    }
    (a, b)
}

fn coverage_radius(target: &CubicMultigraph, forward: &[usize]) -> usize {
    let mut dist = vec![usize::MAX; target.vertex_count()];
    let mut queue = VecDeque::new();
    for &v in forward {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        for w in target.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.into_iter().max().unwrap_or(0)
}
