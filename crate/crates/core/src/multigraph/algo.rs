use std::collections::VecDeque;

use super::{CubicMultigraph, EdgeId};
use crate::error::{Error, Result};

/// Length of a shortest cycle. A loop has length 1 and a pair of parallel
/// edges length 2.
///
/// ```
/// use systolic_atlas::multigraph::{girth, named};
///
/// assert_eq!(girth(&named::dumbbell()), 1);
/// assert_eq!(girth(&named::theta()), 2);
/// assert_eq!(girth(&named::petersen()), 5);
/// ```
pub fn girth(g: &CubicMultigraph) -> usize {
    if g.loop_count() > 0 {
        return 1;
    }
    if has_parallel_edges(g) {
        return 2;
    }
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut via = vec![EdgeId(usize::MAX); n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for h in g.half_edges(u) {
                let e = g.edge_of(h);
                if e == via[u] && u != root {
                    continue;
                }
                let w = g.owner(g.partner(h));
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = e;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    best
}

fn has_parallel_edges(g: &CubicMultigraph) -> bool {
    let mut edges = g.edge_list();
    edges.sort_unstable();
    edges.windows(2).any(|w| w[0] == w[1])
}

/// Unweighted distances from `source`, indexed by vertex.
pub fn bfs_distances(g: &CubicMultigraph, source: usize) -> Result<Vec<usize>> {
    if source >= g.vertex_count() {
        return Err(Error::Index {
            index: source,
            bound: g.vertex_count(),
        });
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Greedy coloring in vertex order in which equal colors sit at distance at
/// least `n`. Uses at most `3 * (2^n - 1) + 1` colors.
///
/// ```
/// use systolic_atlas::multigraph::{distance_coloring, named};
///
/// let colors = distance_coloring(&named::k4(), 2);
/// assert_eq!(colors, vec![0, 1, 2, 3]);
/// ```
pub fn distance_coloring(g: &CubicMultigraph, n: usize) -> Vec<usize> {
    let count = g.vertex_count();
    let mut color = vec![usize::MAX; count];
    let mut used = Vec::new();
    for v in 0..count {
        let dist = bfs_distances(g, v).expect("vertex in range");
        used.clear();
        used.extend(
            (0..count)
                .filter(|&w| w != v && dist[w] < n && color[w] != usize::MAX)
                .map(|w| color[w]),
        );
        color[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    color
}

/// Splits the edges into classes of pairwise vertex-disjoint edges, greedily
/// in edge order. At most five classes are needed.
///
/// A loop shares its vertex with the only other edge there, so it conflicts
/// with that edge alone.
pub fn pants_disjoint_edge_partition(g: &CubicMultigraph) -> Vec<Vec<EdgeId>> {
    let mut classes: Vec<Vec<EdgeId>> = Vec::new();
    let mut class_vertices: Vec<Vec<bool>> = Vec::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let slot = class_vertices.iter().position(|used| !used[u] && !used[v]);
        let k = slot.unwrap_or_else(|| {
            classes.push(Vec::new());
            class_vertices.push(vec![false; g.vertex_count()]);
            classes.len() - 1
        });
        classes[k].push(e);
        class_vertices[k][u] = true;
        class_vertices[k][v] = true;
    }
    classes
}
