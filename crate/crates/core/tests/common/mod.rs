//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the canonical-form or BFS code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use systolic_atlas::{CanonicalCode, CubicMultigraph};

pub type EdgeSet = Vec<(usize, usize)>;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn relabel(edges: &[(usize, usize)], p: &[usize]) -> EdgeSet {
    let mut out: EdgeSet = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (p[u], p[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Least sorted edge list over every relabeling.
pub fn brute_canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> EdgeSet {
    perms.iter().map(|p| relabel(edges, p)).min().unwrap()
}

pub fn code_edges(code: &CanonicalCode) -> EdgeSet {
    let (_, body) = code.as_str().split_once('|').unwrap();
    body.split(';')
        .map(|e| {
            let (u, v) = e.split_once('-').unwrap();
            (u.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every perfect matching of `3v` half-edges, owner of half-edge `h` being
/// `h / 3`; returns the connected ones as edge lists.
pub fn all_pairing_graphs(v: usize) -> (usize, Vec<EdgeSet>) {
    fn go(free: &mut Vec<usize>, cur: &mut EdgeSet, out: &mut Vec<EdgeSet>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for i in 0..free.len() {
            let other = free.remove(i);
            let (a, b) = (first / 3, other / 3);
            cur.push((a.min(b), a.max(b)));
            go(free, cur, out);
            cur.pop();
            free.insert(i, other);
        }
        free.insert(0, first);
    }
    let mut all = Vec::new();
    go(&mut (0..3 * v).collect(), &mut Vec::new(), &mut all);
    let total = all.len();
    (total, all.into_iter().filter(|e| connected(v, e)).collect())
}

/// Connected cubic multigraphs on `v` vertices as symmetric multiplicity
/// matrices (a loop adds 2 to the degree), one edge list per matrix.
pub fn all_adjacency_graphs(v: usize) -> Vec<EdgeSet> {
    let cells: Vec<(usize, usize)> = (0..v).flat_map(|i| (i..v).map(move |j| (i, j))).collect();
    fn go(
        cells: &[(usize, usize)],
        k: usize,
        deg: &mut Vec<usize>,
        m: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == cells.len() {
            if deg.iter().all(|&d| d == 3) {
                out.push(m.clone());
            }
            return;
        }
        let (i, j) = cells[k];
        for mult in 0..=3 {
            let (di, dj) = if i == j { (2 * mult, 0) } else { (mult, mult) };
            if deg[i] + di > 3 || deg[j] + dj > 3 {
                break;
            }
            deg[i] += di;
            deg[j] += dj;
            m[k] = mult;
            // row i is final once its last cell is set
            if j + 1 < deg.len() || deg[i] == 3 {
                go(cells, k + 1, deg, m, out);
            }
            deg[i] -= di;
            deg[j] -= dj;
        }
        m[k] = 0;
    }
    let mut matrices = Vec::new();
    go(
        &cells,
        0,
        &mut vec![0; v],
        &mut vec![0; cells.len()],
        &mut matrices,
    );
    matrices
        .into_iter()
        .map(|m| {
            let mut edges = Vec::new();
            for (k, &(i, j)) in cells.iter().enumerate() {
                for _ in 0..m[k] {
                    edges.push((i, j));
                }
            }
            edges
        })
        .filter(|e| connected(v, e))
        .collect()
}

/// Isomorphism classes of the given graphs under brute-force minimization.
pub fn brute_classes(v: usize, graphs: &[EdgeSet]) -> BTreeSet<EdgeSet> {
    let perms = permutations(v);
    graphs.iter().map(|e| brute_canonical(e, &perms)).collect()
}

/// All-pairs distances from powers of the adjacency matrix: `d(u, w)` is the
/// least `k` with a walk of length `k`.
pub fn matrix_power_distances(g: &CubicMultigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, w) in g.edge_list() {
        adj[u][w] = true;
        adj[w][u] = true;
    }
    let mut dist = vec![vec![usize::MAX; n]; n];
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for k in 0..=n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][j] && dist[i][j] == usize::MAX {
                    dist[i][j] = k;
                }
            }
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for m in 0..n {
                if reach[i][m] {
                    for j in 0..n {
                        next[i][j] |= adj[m][j];
                    }
                }
            }
        }
        reach = next;
    }
    dist
}

/// Published counts of connected cubic multigraphs (loops and multiple
/// edges allowed) and of connected simple cubic graphs, by vertex count.
pub const MULTIGRAPH_COUNTS: [(usize, usize); 7] = [
    (2, 2),
    (4, 5),
    (6, 17),
    (8, 71),
    (10, 388),
    (12, 2592),
    (14, 21096),
];
pub const SIMPLE_COUNTS: [(usize, usize); 7] = [
    (2, 0),
    (4, 1),
    (6, 2),
    (8, 5),
    (10, 19),
    (12, 85),
    (14, 509),
];
