use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{bfs_distances, CubicMultigraph, EdgeId};

/// A simple closed walk, listed as parallel sequences of vertices and edges:
/// `edges[i]` joins `vertices[i]` to `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge ids in increasing order; identifies the cycle as an edge set.
    pub fn sorted_edges(&self) -> Vec<EdgeId> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    fn vertex_mask(&self) -> u128 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PackingMethod {
    /// Ball-separated centers followed by greedy augmentation; maximal by inclusion.
    Greedy,
    /// Exhaustive search; maximum size.
    Exact,
}

/// Vertex-disjoint cycles of length at most `max_length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePacking {
    pub cycles: Vec<Cycle>,
    pub max_length: usize,
    pub method: PackingMethod,
}

impl CyclePacking {
    pub fn size(&self) -> usize {
        self.cycles.len()
    }
}

/// Every cycle of length at most `max_length`, each edge set once, ordered by
/// length and then by sorted edge ids.
pub fn short_cycles(g: &CubicMultigraph, max_length: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    if max_length == 0 {
        return out;
    }
    for e in g.edge_ids() {
        if g.is_loop(e) {
            let (v, _) = g.endpoints(e);
            out.push(Cycle {
                vertices: vec![v],
                edges: vec![e],
            });
        }
    }
    if max_length >= 2 {
        for e in g.edge_ids() {
            for f in g.edge_ids().skip(e.0 + 1) {
                if !g.is_loop(e) && g.endpoints(e) == g.endpoints(f) {
                    let (u, v) = g.endpoints(e);
                    out.push(Cycle {
                        vertices: vec![u, v],
                        edges: vec![e, f],
                    });
                }
            }
        }
    }
    if max_length >= 3 {
        let mut on_path = vec![false; g.vertex_count()];
        for s in 0..g.vertex_count() {
            let mut walk = Walk {
                g,
                start: s,
                max_length,
                vertices: vec![s],
                edges: Vec::new(),
                on_path: &mut on_path,
                out: &mut out,
            };
            walk.on_path[s] = true;
            walk.extend();
            on_path[s] = false;
        }
    }
    out.sort_by_cached_key(|c| (c.len(), c.sorted_edges()));
    out
}

struct Walk<'a> {
    g: &'a CubicMultigraph,
    start: usize,
    max_length: usize,
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
    on_path: &'a mut Vec<bool>,
    out: &'a mut Vec<Cycle>,
}

impl Walk<'_> {
    fn extend(&mut self) {
        let u = *self.vertices.last().unwrap();
        for h in self.g.half_edges(u) {
            let e = self.g.edge_of(h);
            if self.g.is_loop(e) || self.edges.last() == Some(&e) {
                continue;
            }
            let w = self.g.owner(self.g.partner(h));
            if w == self.start {
                // length >= 3 with each direction reported once
                if self.edges.len() >= 2 && self.edges[0] < e {
                    let mut edges = self.edges.clone();
                    edges.push(e);
                    self.out.push(Cycle {
                        vertices: self.vertices.clone(),
                        edges,
                    });
                }
            } else if w > self.start && !self.on_path[w] && self.edges.len() + 1 < self.max_length {
                self.on_path[w] = true;
                self.vertices.push(w);
                self.edges.push(e);
                self.extend();
                self.edges.pop();
                self.vertices.pop();
                self.on_path[w] = false;
            }
        }
    }
}

/// Largest size for which exhaustive packing search is run.
const EXACT_PACKING_MAX_V: usize = 10;

/// Vertex-disjoint cycles of length at most `max_length`.
///
/// For `V <= 10` the result is a maximum packing found exhaustively.
/// Otherwise it is [`greedy_cycle_packing`].
///
/// ```
/// use systolic_atlas::multigraph::{disjoint_cycle_packing, named, PackingMethod};
///
/// let p = disjoint_cycle_packing(&named::dumbbell(), 1);
/// assert_eq!(p.size(), 2);
/// assert_eq!(p.method, PackingMethod::Exact);
/// ```
pub fn disjoint_cycle_packing(g: &CubicMultigraph, max_length: usize) -> CyclePacking {
    if g.vertex_count() <= EXACT_PACKING_MAX_V {
        exact_cycle_packing(g, max_length)
    } else {
        greedy_cycle_packing(g, max_length)
    }
}

/// Picks centers pairwise at distance at least `2L + 1` (in vertex order),
/// takes a shortest cycle inside the radius-`L` ball of each center when
/// there is one, then adds any remaining disjoint short cycles.
pub fn greedy_cycle_packing(g: &CubicMultigraph, max_length: usize) -> CyclePacking {
    let cycles = short_cycles(g, max_length);
    let n = g.vertex_count();
    let dist: Vec<Vec<usize>> = (0..n)
        .map(|v| bfs_distances(g, v).expect("vertex in range"))
        .collect();

    let mut centers: Vec<usize> = Vec::new();
    for v in 0..n {
        if centers.iter().all(|&c| dist[c][v] > 2 * max_length) {
            centers.push(v);
        }
    }
    let mut chosen: Vec<&Cycle> = Vec::new();
    let mut used = 0u128;
    for &c in &centers {
        // cycles are sorted, so the first fit is a shortest one
        if let Some(cycle) = cycles
            .iter()
            .find(|cy| cy.vertices.iter().all(|&v| dist[c][v] <= max_length))
        {
            chosen.push(cycle);
            used |= cycle.vertex_mask();
        }
    }
    for cycle in &cycles {
        if cycle.vertex_mask() & used == 0 {
            chosen.push(cycle);
            used |= cycle.vertex_mask();
        }
    }
    CyclePacking {
        cycles: chosen.into_iter().cloned().collect(),
        max_length,
        method: PackingMethod::Greedy,
    }
}

/// Maximum packing by search over vertex subsets; only for small graphs.
fn exact_cycle_packing(g: &CubicMultigraph, max_length: usize) -> CyclePacking {
    let cycles = short_cycles(g, max_length);
    let masks: Vec<u128> = cycles.iter().map(Cycle::vertex_mask).collect();
    let full = (1u128 << g.vertex_count()) - 1;
    let mut memo = HashMap::new();
    let mut picks = Vec::new();
    best_packing(full, &masks, &mut memo);
    let mut free = full;
    while free != 0 {
        match memo[&free] {
            (_, Some(i)) => {
                picks.push(i);
                free &= !masks[i];
            }
            (_, None) => free &= free - 1,
        }
    }
    CyclePacking {
        cycles: picks.into_iter().map(|i| cycles[i].clone()).collect(),
        max_length,
        method: PackingMethod::Exact,
    }
}

/// Size of a maximum packing inside `free`, and the cycle covering the
/// lowest free vertex in some optimum (None if that vertex stays uncovered).
fn best_packing(
    free: u128,
    masks: &[u128],
    memo: &mut HashMap<u128, (usize, Option<usize>)>,
) -> usize {
    if free == 0 {
        return 0;
    }
    if let Some(&(size, _)) = memo.get(&free) {
        return size;
    }
    let low = free & free.wrapping_neg();
    let mut best = (best_packing(free & !low, masks, memo), None);
    for (i, &m) in masks.iter().enumerate() {
        if m & low != 0 && m & !free == 0 {
            let size = 1 + best_packing(free & !m, masks, memo);
            if size > best.0 {
                best = (size, Some(i));
            }
        }
    }
    memo.insert(free, best);
    best.0
}
