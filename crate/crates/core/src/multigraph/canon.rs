//! Canonical codes for cubic multigraphs.
//!
//! The code of a graph is `"V|u-v;u-v;..."`: every edge written with `u <= v`,
//! edges sorted, under the relabeling of vertices that makes the edge
//! sequence lexicographically least. Labels are compared as integers, which
//! coincides with plain string order while `V <= 10`.
//!
//! A least labeling always arises from a breadth-first scan: the root is
//! labeled 0, and when the vertex labeled `i` is scanned its not yet labeled
//! neighbors take the next free labels. Any other choice makes the block of
//! edges `(i, y)` with `y >= i` strictly larger, and the length of that block
//! does not depend on the choice. So the search only branches over the root
//! and over the order in which each scanned vertex hands out new labels, and
//! it abandons a branch as soon as a finished block exceeds the best sequence
//! found so far. Worst case is exponential in `V`; fine at census scale.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CubicMultigraph;
use crate::error::{Error, Result};

/// Isomorphism-invariant string key of a [`CubicMultigraph`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0
            .split_once('|')
            .and_then(|(v, _)| v.parse().ok())
            .expect("codes are validated on construction")
    }

    /// Rebuilds the graph in canonical labeling; edge `i` is the `i`-th edge of the code.
    pub fn to_graph(&self) -> CubicMultigraph {
        parse_code(&self.0).expect("codes are validated on construction")
    }

    fn from_edges(vertex_count: usize, edges: &[(u16, u16)]) -> Self {
        let mut s = format!("{vertex_count}|");
        for (i, (u, v)) in edges.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            s.push_str(&format!("{u}-{v}"));
        }
        CanonicalCode(s)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    /// Accepts only strings that are the canonical code of their own graph.
    fn from_str(s: &str) -> Result<Self> {
        let graph = parse_code(s)?;
        let code = canonical_code(&graph);
        if code.0 != s {
            return Err(Error::Parse(format!("{s:?} is not in canonical form")));
        }
        Ok(code)
    }
}

fn parse_code(s: &str) -> Result<CubicMultigraph> {
    let bad = || Error::Parse(format!("malformed canonical code {s:?}"));
    let (v, rest) = s.split_once('|').ok_or_else(bad)?;
    let vertex_count: usize = v.parse().map_err(|_| bad())?;
    let edges = rest
        .split(';')
        .map(|e| {
            let (a, b) = e.split_once('-').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        })
        .collect::<Result<Vec<(usize, usize)>>>()?;
    CubicMultigraph::from_edge_list(vertex_count, &edges)
}

/// Canonical code of `g`.
///
/// ```
/// use systolic_atlas::multigraph::{canonical_code, CubicMultigraph};
///
/// let k4 = CubicMultigraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
/// assert_eq!(canonical_code(&k4).as_str(), "4|0-1;0-2;0-3;1-2;1-3;2-3");
/// ```
pub fn canonical_code(g: &CubicMultigraph) -> CanonicalCode {
    canonical_code_of_pairing(g.vertex_count(), g.pairing())
}

/// A relabeling `perm` (old vertex `i` becomes `perm[i]`) that realizes the canonical code.
pub fn canonical_labeling(g: &CubicMultigraph) -> Vec<usize> {
    let search = Search::run(g.vertex_count(), g.pairing());
    let mut perm = vec![0; g.vertex_count()];
    for (label, &vertex) in search.best_order.iter().enumerate() {
        perm[vertex] = label;
    }
    perm
}

/// Same as [`canonical_code`] but straight from a half-edge pairing.
pub(crate) fn canonical_code_of_pairing(vertex_count: usize, pairing: &[usize]) -> CanonicalCode {
    let search = Search::run(vertex_count, pairing);
    CanonicalCode::from_edges(vertex_count, &search.best)
}

const UNLABELED: usize = usize::MAX;

struct Search<'a> {
    n: usize,
    pairing: &'a [usize],
    label: Vec<usize>,
    order: Vec<usize>,
    seq: Vec<(u16, u16)>,
    best: Vec<(u16, u16)>,
    best_order: Vec<usize>,
    have_best: bool,
}

impl<'a> Search<'a> {
    fn run(n: usize, pairing: &'a [usize]) -> Self {
        let mut s = Search {
            n,
            pairing,
            label: vec![UNLABELED; n],
            order: Vec::with_capacity(n),
            seq: Vec::with_capacity(pairing.len() / 2),
            best: Vec::new(),
            best_order: Vec::new(),
            have_best: false,
        };
        let has_loop = |v: usize| (3 * v..3 * v + 3).any(|h| pairing[h] / 3 == v);
        let any_loop = (0..n).any(has_loop);
        for root in 0..n {
            if any_loop && !has_loop(root) {
                continue;
            }
            s.label[root] = 0;
            s.order.push(root);
            s.scan(0);
            s.order.pop();
            s.label[root] = UNLABELED;
        }
        s
    }

    /// Scans the vertex labeled `i`.
    fn scan(&mut self, i: usize) {
        if i == self.n {
            if !self.have_best || self.seq < self.best {
                self.best.clone_from(&self.seq);
                self.best_order.clone_from(&self.order);
                self.have_best = true;
            }
            return;
        }
        let x = self.order[i];
        let mut fresh = [0usize; 3];
        let mut fresh_len = 0;
        for h in 3 * x..3 * x + 3 {
            let w = self.pairing[h] / 3;
            if self.label[w] == UNLABELED && !fresh[..fresh_len].contains(&w) {
                fresh[fresh_len] = w;
                fresh_len += 1;
            }
        }
        for perm in permutations(fresh_len) {
            let next = self.order.len();
            for (k, &p) in perm.iter().enumerate() {
                let w = fresh[p];
                self.label[w] = next + k;
                self.order.push(w);
            }
            let start = self.seq.len();
            for h in 3 * x..3 * x + 3 {
                let p = self.pairing[h];
                if p / 3 == x && p < h {
                    continue;
                }
                let y = self.label[p / 3];
                if y >= i {
                    self.seq.push((i as u16, y as u16));
                }
            }
            self.seq[start..].sort_unstable();

            // best can change under us, so compare the whole prefix each time
            if !self.have_best || self.seq[..] <= self.best[..self.seq.len()] {
                self.scan(i + 1);
            }

            self.seq.truncate(start);
            for _ in 0..fresh_len {
                let w = self.order.pop().unwrap();
                self.label[w] = UNLABELED;
            }
        }
    }
}

fn permutations(k: usize) -> &'static [&'static [usize]] {
    match k {
        0 => &[&[]],
        1 => &[&[0]],
        2 => &[&[0, 1], &[1, 0]],
        3 => &[
            &[0, 1, 2],
            &[0, 2, 1],
            &[1, 0, 2],
            &[1, 2, 0],
            &[2, 0, 1],
            &[2, 1, 0],
        ],
        _ => unreachable!("a vertex has at most three neighbors"),
    }
}
