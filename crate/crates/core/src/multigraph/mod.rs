//! Connected cubic multigraphs in half-edge form.
//!
//! A graph on `V` vertices owns `3V` half-edges; half-edges `3v`, `3v + 1`
//! and `3v + 2` belong to vertex `v`. A fixed-point-free involution pairs
//! half-edges into edges. Both halves of a loop sit at the same vertex, and
//! parallel edges are simply distinct pairs joining the same two vertices.
//!
//! Edges carry stable ids ([`EdgeId`]). Graphs built with
//! [`CubicMultigraph::from_edge_list`] number edges in input order, and the
//! rewrites in [`crate::rewrite`] keep ids stable where they can.

mod algo;
mod canon;
mod cycles;

pub use algo::{bfs_distances, distance_coloring, girth, pants_disjoint_edge_partition};
pub use canon::{canonical_code, canonical_labeling, CanonicalCode};
pub use cycles::{
    disjoint_cycle_packing, greedy_cycle_packing, short_cycles, Cycle, CyclePacking, PackingMethod,
};

pub(crate) use canon::canonical_code_of_pairing;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Identifier of an edge within one [`CubicMultigraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A connected 3-regular multigraph with loops, stored as half-edges.
///
/// Validated on construction and immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicMultigraph {
    vertex_count: usize,
    pairing: Vec<usize>,
    edges: Vec<[usize; 2]>,
    edge_of: Vec<usize>,
}

impl CubicMultigraph {
    /// Builds a graph from unordered vertex pairs; `(v, v)` is a loop.
    ///
    /// Edge `i` of the result is `edges[i]`. Within a vertex, half-edges are
    /// handed out in the order incident edges appear in the input.
    ///
    /// ```
    /// use systolic_atlas::multigraph::{girth, CubicMultigraph};
    ///
    /// let theta = CubicMultigraph::from_edge_list(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
    /// assert_eq!(girth(&theta), 2);
    /// ```
    pub fn from_edge_list(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::Index {
                        index: x,
                        bound: vertex_count,
                    });
                }
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some((vertex, &degree)) = degree.iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(Error::Degree { vertex, degree });
        }

        let mut next_slot = vec![0usize; vertex_count];
        let mut pairing = vec![usize::MAX; 3 * vertex_count];
        let mut edge_halves = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            let hu = 3 * u + next_slot[u];
            next_slot[u] += 1;
            let hv = 3 * v + next_slot[v];
            next_slot[v] += 1;
            pairing[hu] = hv;
            pairing[hv] = hu;
            edge_halves.push([hu.min(hv), hu.max(hv)]);
        }
        let graph = Self::from_parts(vertex_count, pairing, edge_halves);
        graph.check_connected()?;
        Ok(graph)
    }

    /// Builds a graph from a half-edge pairing; edges are numbered by their
    /// smaller half-edge.
    pub fn from_pairing(vertex_count: usize, pairing: Vec<usize>) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        if pairing.len() != 3 * vertex_count {
            return Err(Error::Param(format!(
                "pairing has {} entries, expected {}",
                pairing.len(),
                3 * vertex_count
            )));
        }
        for (h, &p) in pairing.iter().enumerate() {
            if p >= pairing.len() {
                return Err(Error::Index {
                    index: p,
                    bound: pairing.len(),
                });
            }
            if p == h || pairing[p] != h {
                return Err(Error::Param(format!(
                    "pairing is not a fixed-point-free involution at half-edge {h}"
                )));
            }
        }
        let edges = (0..pairing.len())
            .filter(|&h| h < pairing[h])
            .map(|h| [h, pairing[h]])
            .collect();
        let graph = Self::from_parts(vertex_count, pairing, edges);
        graph.check_connected()?;
        Ok(graph)
    }

    /// Assembles a graph from consistent parts without validation.
    pub(crate) fn from_parts(
        vertex_count: usize,
        pairing: Vec<usize>,
        edges: Vec<[usize; 2]>,
    ) -> Self {
        let mut edge_of = vec![0; pairing.len()];
        for (i, &[a, b]) in edges.iter().enumerate() {
            edge_of[a] = i;
            edge_of[b] = i;
        }
        Self {
            vertex_count,
            pairing,
            edges,
            edge_of,
        }
    }

    fn check_connected(&self) -> Result<()> {
        let reached = self.reachable_count();
        if reached != self.vertex_count {
            return Err(Error::Disconnected {
                reached,
                vertices: self.vertex_count,
            });
        }
        Ok(())
    }

    fn reachable_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Genus of the closed surface whose pants decompositions have this dual graph.
    pub fn genus(&self) -> usize {
        self.vertex_count / 2 + 1
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    #[inline]
    pub fn owner(&self, half_edge: usize) -> usize {
        half_edge / 3
    }

    #[inline]
    pub fn partner(&self, half_edge: usize) -> usize {
        self.pairing[half_edge]
    }

    #[inline]
    pub fn half_edges(&self, vertex: usize) -> [usize; 3] {
        [3 * vertex, 3 * vertex + 1, 3 * vertex + 2]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    /// The two half-edges of `e`, smaller id first.
    #[inline]
    pub fn edge_halves(&self, e: EdgeId) -> [usize; 2] {
        self.edges[e.0]
    }

    #[inline]
    pub fn edge_of(&self, half_edge: usize) -> EdgeId {
        EdgeId(self.edge_of[half_edge])
    }

    /// Endpoints of `e` with the smaller vertex first.
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        let [a, b] = self.edges[e.0];
        let (u, v) = (a / 3, b / 3);
        (u.min(v), u.max(v))
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [a, b] = self.edges[e.0];
        a / 3 == b / 3
    }

    pub fn loop_count(&self) -> usize {
        self.edge_ids().filter(|&e| self.is_loop(e)).count()
    }

    pub fn has_loop_at(&self, v: usize) -> bool {
        self.half_edges(v)
            .iter()
            .any(|&h| self.owner(self.pairing[h]) == v)
    }

    /// Endpoints of every edge, in edge-id order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edge_ids().map(|e| self.endpoints(e)).collect()
    }

    /// Far ends of the three half-edges at `v`; a loop lists `v` twice.
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.half_edges(v).map(|h| self.pairing[h] / 3)
    }

    /// Edges at `v`, one entry per half-edge (a loop appears twice).
    pub fn incident_edges(&self, v: usize) -> [EdgeId; 3] {
        self.half_edges(v).map(|h| self.edge_of(h))
    }

    /// Renames vertex `i` to `perm[i]`. Edge ids are preserved.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count {
            return Err(Error::Param(format!(
                "permutation has {} entries for {} vertices",
                perm.len(),
                self.vertex_count
            )));
        }
        let edges: Vec<_> = self
            .edge_list()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Self::from_edge_list(self.vertex_count, &edges)
    }

    /// Same graph rebuilt from its sorted edge list, so that edge ids follow
    /// the `.cmg` line order.
    pub fn normalized(&self) -> Self {
        let mut edges = self.edge_list();
        edges.sort_unstable();
        Self::from_edge_list(self.vertex_count, &edges).expect("a valid graph stays valid")
    }

    /// Serializes to the `.cmg` text format.
    ///
    /// ```
    /// use systolic_atlas::multigraph::CubicMultigraph;
    ///
    /// let dumbbell = CubicMultigraph::from_edge_list(2, &[(1, 1), (0, 1), (0, 0)]).unwrap();
    /// assert_eq!(dumbbell.to_cmg(), "cmg1\nv 2\ne 0 0\ne 0 1\ne 1 1\n");
    /// ```
    pub fn to_cmg(&self) -> String {
        let mut edges = self.edge_list();
        edges.sort_unstable();
        let mut out = format!("cmg1\nv {}\n", self.vertex_count);
        for (u, v) in edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    /// Parses the `.cmg` text format. Edge lines must be normalized and sorted.
    pub fn from_cmg(text: &str) -> Result<Self> {
        let mut lines = text.split('\n');
        if lines.next() != Some("cmg1") {
            return Err(Error::Parse("missing `cmg1` header".into()));
        }
        let vertex_count = lines
            .next()
            .and_then(|l| l.strip_prefix("v "))
            .and_then(|n| parse_decimal(n))
            .ok_or_else(|| Error::Parse("expected `v <V>` on line 2".into()))?;
        let mut edges = Vec::new();
        let mut finished = false;
        for (i, line) in lines.enumerate() {
            if finished {
                return Err(Error::Parse(format!(
                    "content after final newline at line {}",
                    i + 3
                )));
            }
            if line.is_empty() {
                finished = true;
                continue;
            }
            let bad = || Error::Parse(format!("malformed edge line {}: {line:?}", i + 3));
            let rest = line.strip_prefix("e ").ok_or_else(bad)?;
            let (u, v) = rest.split_once(' ').ok_or_else(bad)?;
            let (u, v) = (
                parse_decimal(u).ok_or_else(bad)?,
                parse_decimal(v).ok_or_else(bad)?,
            );
            if u > v {
                return Err(Error::Parse(format!("edge line {} has u > v", i + 3)));
            }
            edges.push((u, v));
        }
        if !finished {
            return Err(Error::Parse("missing final newline".into()));
        }
        if edges.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse("edge lines are not sorted".into()));
        }
        Self::from_edge_list(vertex_count, &edges)
    }
}

/// ASCII decimal without sign or leading zeros.
fn parse_decimal(s: &str) -> Option<usize> {
    let canonical =
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    if canonical {
        s.parse().ok()
    } else {
        None
    }
}

pub(crate) fn check_vertex_count(v: usize) -> Result<()> {
    if v == 0 || v % 2 == 1 {
        return Err(Error::Parity(v));
    }
    Ok(())
}

impl FromStr for CubicMultigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_cmg(s)
    }
}

impl Serialize for CubicMultigraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_cmg())
    }
}

impl<'de> Deserialize<'de> for CubicMultigraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::from_cmg(&text).map_err(serde::de::Error::custom)
    }
}

/// A few named graphs used throughout tests and docs.
pub mod named {
    use super::CubicMultigraph;

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> CubicMultigraph {
        CubicMultigraph::from_edge_list(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    /// Two loops joined by a bar.
    pub fn dumbbell() -> CubicMultigraph {
        CubicMultigraph::from_edge_list(2, &[(0, 0), (1, 1), (0, 1)]).unwrap()
    }

    pub fn k4() -> CubicMultigraph {
        CubicMultigraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap()
    }

    pub fn k33() -> CubicMultigraph {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        CubicMultigraph::from_edge_list(6, &edges).unwrap()
    }

    /// Outer 5-cycle, inner pentagram, five spokes. Girth 5.
    pub fn petersen() -> CubicMultigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        CubicMultigraph::from_edge_list(10, &edges).unwrap()
    }

    /// The (3,6)-cage on 14 vertices. Girth 6.
    pub fn heawood() -> CubicMultigraph {
        let mut edges = Vec::new();
        for i in 0..14 {
            edges.push((i, (i + 1) % 14));
        }
        for i in (0..14).step_by(2) {
            edges.push((i, (i + 5) % 14));
        }
        CubicMultigraph::from_edge_list(14, &edges).unwrap()
    }

    /// A cycle of `v / 2` doubled edges. Connected for every even `v >= 2`.
    pub fn necklace(v: usize) -> CubicMultigraph {
        let mut edges: Vec<_> = (0..v).map(|i| (i, (i + 1) % v)).collect();
        edges.extend((0..v).step_by(2).map(|i| (i, i + 1)));
        CubicMultigraph::from_edge_list(v, &edges).unwrap()
    }
}
