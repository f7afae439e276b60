use serde::{Deserialize, Serialize};

use super::{apply_moveset, Move, MoveSet, Variant};
use crate::error::{Error, Result};
use crate::multigraph::{CubicMultigraph, Cycle, EdgeId};

/// Result of shrinking a cycle to a loop.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Reduction {
    pub graph: CubicMultigraph,
    /// The final loop.
    pub cycle: Cycle,
    /// Moves of each round, in order.
    pub trace: Vec<Vec<Move>>,
    /// Cycle length before the first round and after each round.
    pub lengths: Vec<usize>,
}

/// Checks that `edges` form a simple cycle of `g` and recovers its vertices.
pub(crate) fn walk_cycle(g: &CubicMultigraph, edges: &[EdgeId]) -> Result<Cycle> {
    let bad = |why: &str| Error::InvalidCycle(format!("{why}: {edges:?}"));
    if edges.is_empty() {
        return Err(bad("empty"));
    }
    for &e in edges {
        if e.0 >= g.edge_count() {
            return Err(bad("unknown edge"));
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(bad("repeated edge"));
    }
    if edges.len() == 1 {
        return if g.is_loop(edges[0]) {
            Ok(Cycle {
                vertices: vec![g.endpoints(edges[0]).0],
                edges: edges.to_vec(),
            })
        } else {
            Err(bad("single non-loop edge"))
        };
    }
    let (x, y) = g.endpoints(edges[0]);
    'orient: for (start, mut cur) in [(x, y), (y, x)] {
        let mut vertices = vec![start];
        for &e in &edges[1..] {
            let (p, q) = g.endpoints(e);
            if g.is_loop(e) || (p != cur && q != cur) {
                continue 'orient;
            }
            vertices.push(cur);
            cur = if p == cur { q } else { p };
        }
        if cur != start {
            continue;
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad("vertex repeated"));
        }
        return Ok(Cycle {
            vertices,
            edges: edges.to_vec(),
        });
    }
    Err(bad("edges do not close up"))
}

/// The move on cycle edge `i` that keeps the cycle running through the
/// regrouped vertex: the half-edges of the previous and next cycle edges
/// end up on the same side.
fn shortening_move(g: &CubicMultigraph, cycle: &Cycle, i: usize) -> Move {
    let l = cycle.len();
    let e = cycle.edges[i];
    let (u, v) = (cycle.vertices[i], cycle.vertices[(i + 1) % l]);
    let half_at = |edge: EdgeId, vertex: usize| {
        let [p, q] = g.edge_halves(edge);
        if g.owner(p) == vertex {
            p
        } else {
            q
        }
    };
    let prev = half_at(cycle.edges[(i + l - 1) % l], u);
    let next = half_at(cycle.edges[(i + 1) % l], v);
    let [h0, h1] = g.edge_halves(e);
    // the move orders by the smaller half of e, which may sit at v
    let (prev, next) = if g.owner(h0) == u {
        (prev, next)
    } else {
        (next, prev)
    };
    let others = |h: usize| {
        let base = h - h % 3;
        (base..base + 3).filter(|&x| x != h).min().unwrap()
    };
    let a1 = others(h0);
    let b1 = others(h1);
    let variant = if (a1 == prev) == (b1 == next) {
        Variant::A
    } else {
        Variant::B
    };
    Move::new(e, variant)
}

/// One round of simultaneous moves on the cycle edges `e1, e3, ..., e(2k-1)`
/// with `k = floor((l - 1) / 2)`, shrinking a cycle of length `l >= 3` to
/// `floor(l / 2) + 1`. A cycle of length 2 becomes a loop by one move.
pub fn reduction_round(
    g: &CubicMultigraph,
    cycle: &Cycle,
) -> Result<(CubicMultigraph, Vec<Move>, Cycle)> {
    let cycle = walk_cycle(g, &cycle.edges)?;
    let l = cycle.len();
    if l < 2 {
        return Err(Error::InvalidCycle("already a loop".into()));
    }
    let (moves, kept): (Vec<Move>, Vec<EdgeId>) = if l == 2 {
        (vec![shortening_move(g, &cycle, 0)], vec![cycle.edges[1]])
    } else {
        let k = (l - 1) / 2;
        let moved: Vec<usize> = (0..k).map(|j| 2 * j + 1).collect();
        let moves = moved
            .iter()
            .map(|&i| shortening_move(g, &cycle, i))
            .collect();
        let kept = (0..l)
            .filter(|i| !moved.contains(i))
            .map(|i| cycle.edges[i])
            .collect();
        (moves, kept)
    };
    let next = apply_moveset(g, &MoveSet::new(g, moves.clone())?)?;
    let next_cycle = walk_cycle(&next, &kept)?;
    Ok((next, moves, next_cycle))
}

/// Repeats [`reduction_round`] until the cycle is a loop.
///
/// ```
/// use systolic_atlas::multigraph::{girth, named, short_cycles};
/// use systolic_atlas::rewrite::reduce_cycle_to_loop;
///
/// let g = named::petersen();
/// let pentagon = short_cycles(&g, 5).remove(0);
/// let r = reduce_cycle_to_loop(&g, &pentagon).unwrap();
/// assert_eq!(r.lengths, vec![5, 3, 2, 1]);
/// assert_eq!(girth(&r.graph), 1);
/// ```
pub fn reduce_cycle_to_loop(g: &CubicMultigraph, cycle: &Cycle) -> Result<Reduction> {
    let mut cycle = walk_cycle(g, &cycle.edges)?;
    let mut graph = g.clone();
    let mut trace = Vec::new();
    let mut lengths = vec![cycle.len()];
    while cycle.len() > 1 {
        let (next, moves, next_cycle) = reduction_round(&graph, &cycle)?;
        graph = next;
        cycle = next_cycle;
        trace.push(moves);
        lengths.push(cycle.len());
    }
    Ok(Reduction {
        graph,
        cycle,
        trace,
        lengths,
    })
}

/// Deletes each listed loop together with the edge attaching it, then
/// smooths the vertex left with degree 2. Removes two vertices per loop.
/// Vertices and edges are renumbered.
pub fn remove_loop_gadgets(g: &CubicMultigraph, loops: &[EdgeId]) -> Result<CubicMultigraph> {
    let mut n = g.vertex_count();
    let mut edges: Vec<Option<(usize, usize)>> = g.edge_list().into_iter().map(Some).collect();
    let mut alive = vec![true; n];
    let mut loop_vertices = Vec::new();
    for &e in loops {
        if e.0 >= g.edge_count() || !g.is_loop(e) {
            return Err(Error::Gadget(format!("{e} is not a loop")));
        }
        let w = g.endpoints(e).0;
        if loop_vertices.contains(&w) {
            return Err(Error::Gadget(format!("two listed loops at vertex {w}")));
        }
        loop_vertices.push(w);
    }
    for (&e, &w) in loops.iter().zip(&loop_vertices) {
        let incident = |edges: &[Option<(usize, usize)>], x: usize| -> Vec<usize> {
            (0..edges.len())
                .filter(|&i| matches!(edges[i], Some((p, q)) if p == x || q == x))
                .collect()
        };
        let at_w = incident(&edges, w);
        let bar = *at_w
            .iter()
            .find(|&&i| i != e.0)
            .ok_or_else(|| Error::Gadget(format!("vertex {w} carries only loops")))?;
        let (p, q) = edges[bar].unwrap();
        let x = if p == w { q } else { p };
        if loop_vertices.contains(&x) {
            return Err(Error::Gadget(format!(
                "loop vertices {w} and {x} are adjacent"
            )));
        }
        edges[e.0] = None;
        edges[bar] = None;
        let at_x = incident(&edges, x);
        let far: Vec<usize> = at_x
            .iter()
            .map(|&i| {
                let (p, q) = edges[i].unwrap();
                if p == x {
                    q
                } else {
                    p
                }
            })
            .collect();
        if at_x.len() != 2 || far.contains(&x) {
            return Err(Error::Gadget(format!("vertex {x} cannot be smoothed")));
        }
        edges[at_x[0]] = Some((far[0].min(far[1]), far[0].max(far[1])));
        edges[at_x[1]] = None;
        alive[w] = false;
        alive[x] = false;
        n -= 2;
    }
    if n < 2 {
        return Err(Error::Gadget(format!("only {n} vertices would remain")));
    }
    let mut rename = vec![usize::MAX; alive.len()];
    let mut next = 0;
    for (v, &a) in alive.iter().enumerate() {
        if a {
            rename[v] = next;
            next += 1;
        }
    }
    let edges: Vec<(usize, usize)> = edges
        .into_iter()
        .flatten()
        .map(|(p, q)| (rename[p], rename[q]))
        .collect();
    CubicMultigraph::from_edge_list(n, &edges).map_err(|err| Error::Gadget(err.to_string()))
}

/// Subdivides `edge` and hangs a new loop on the middle vertex; the inverse
/// of removing one loop gadget. Adds vertices `V` (middle) and `V + 1` (loop).
pub fn attach_loop_gadget(g: &CubicMultigraph, edge: EdgeId) -> Result<CubicMultigraph> {
    if edge.0 >= g.edge_count() {
        return Err(Error::Index {
            index: edge.0,
            bound: g.edge_count(),
        });
    }
    let n = g.vertex_count();
    let mut edges = g.edge_list();
    let (a, b) = edges[edge.0];
    edges[edge.0] = (a, n);
    edges.push((n, b));
    edges.push((n, n + 1));
    edges.push((n + 1, n + 1));
    CubicMultigraph::from_edge_list(n + 2, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::named::*;
    use crate::multigraph::{canonical_code, girth, short_cycles};

    #[test]
    fn theta_strand_pair_becomes_loop() {
        let g = theta();
        let c = walk_cycle(&g, &[EdgeId(0), EdgeId(1)]).unwrap();
        let r = reduce_cycle_to_loop(&g, &c).unwrap();
        assert_eq!(r.lengths, vec![2, 1]);
        assert_eq!(canonical_code(&r.graph), canonical_code(&dumbbell()));
        assert!(r.graph.is_loop(r.cycle.edges[0]));
    }

    #[test]
    fn hexagon_of_heawood() {
        let g = heawood();
        let hex = short_cycles(&g, 6).remove(0);
        let r = reduce_cycle_to_loop(&g, &hex).unwrap();
        assert_eq!(r.lengths, vec![6, 4, 3, 2, 1]);
        assert_eq!(girth(&r.graph), 1);
    }

    #[test]
    fn invalid_cycles() {
        let g = k4();
        assert!(matches!(
            walk_cycle(&g, &[EdgeId(0), EdgeId(1)]),
            Err(Error::InvalidCycle(_))
        ));
        assert!(matches!(walk_cycle(&g, &[]), Err(Error::InvalidCycle(_))));
        let d = dumbbell();
        let bar = d.edge_ids().find(|&e| !d.is_loop(e)).unwrap();
        assert!(matches!(
            walk_cycle(&d, &[bar]),
            Err(Error::InvalidCycle(_))
        ));
    }

    #[test]
    fn gadget_round_trip() {
        let g = k4();
        let with = attach_loop_gadget(&g, EdgeId(2)).unwrap();
        assert_eq!(with.vertex_count(), 6);
        let loop_edge = with.edge_ids().find(|&e| with.is_loop(e)).unwrap();
        let back = remove_loop_gadgets(&with, &[loop_edge]).unwrap();
        assert_eq!(canonical_code(&back), canonical_code(&g));
    }

    #[test]
    fn dumbbell_removal_is_rejected() {
        let d = dumbbell();
        let l = d.edge_ids().find(|&e| d.is_loop(e)).unwrap();
        assert!(matches!(
            remove_loop_gadgets(&d, &[l]),
            Err(Error::Gadget(_))
        ));
    }
}
