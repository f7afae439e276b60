//! The graph of census classes under simultaneous Whitehead moves.
//!
//! Vertices are the canonical codes of one census; two codes are adjacent
//! when some non-empty set of moves on pairwise vertex-disjoint non-loop
//! edges turns one into the other. Moves are involutions, so adjacency is
//! symmetric. Full adjacency is built once per vertex count and cached.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{CensusStore, CensusTable};
use crate::error::{Error, Result};
use crate::multigraph::{
    canonical_code_of_pairing, disjoint_cycle_packing, CanonicalCode, CubicMultigraph,
    PackingMethod,
};
use crate::rewrite::{conjugate_transposition, move_transposition, Variant};

/// Largest vertex count for which neighbor sets are generated.
pub const NEIGHBOR_V_MAX: usize = 10;

fn check_neighbor_limit(v: usize) -> Result<()> {
    if v > NEIGHBOR_V_MAX {
        return Err(Error::Limit {
            what: "MDP vertex count",
            value: v,
            limit: NEIGHBOR_V_MAX,
        });
    }
    Ok(())
}

/// Distinct classes reachable from `g` by one move set, without `g`'s own class.
///
/// ```
/// use systolic_atlas::mdp::neighbors;
/// use systolic_atlas::multigraph::{canonical_code, named};
///
/// let n = neighbors(&named::theta()).unwrap();
/// assert_eq!(n, vec![canonical_code(&named::dumbbell())]);
/// ```
pub fn neighbors(g: &CubicMultigraph) -> Result<Vec<CanonicalCode>> {
    check_neighbor_limit(g.vertex_count())?;
    let own = canonical_code_of_pairing(g.vertex_count(), g.pairing());
    let mut found = BTreeSet::new();
    let mut pairing = g.pairing().to_vec();
    let mut used = vec![false; g.vertex_count()];
    extend_move_sets(g, 0, &mut pairing, &mut used, &mut found);
    found.remove(&own);
    Ok(found.into_iter().collect())
}

/// Adds every move set using edges with id `>= from` on top of the moves
/// already applied to `pairing`.
fn extend_move_sets(
    g: &CubicMultigraph,
    from: usize,
    pairing: &mut [usize],
    used: &mut [bool],
    found: &mut BTreeSet<CanonicalCode>,
) {
    for e in g.edge_ids().skip(from) {
        if g.is_loop(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        let [h, _] = g.edge_halves(e);
        for variant in [Variant::A, Variant::B] {
            // disjoint moves leave this edge's half-edges in place
            let (x, y) = move_transposition(pairing, h, variant);
            conjugate_transposition(pairing, x, y);
            found.insert(canonical_code_of_pairing(g.vertex_count(), pairing));
            extend_move_sets(g, e.0 + 1, pairing, used, found);
            conjugate_transposition(pairing, x, y);
        }
        used[u] = false;
        used[v] = false;
    }
}

/// Census classes of one vertex count with their move-set adjacency.
#[derive(Debug)]
pub struct MdpGraph {
    table: Arc<CensusTable>,
    adjacency: Vec<Vec<u32>>,
}

impl MdpGraph {
    pub fn build(table: Arc<CensusTable>) -> Result<Self> {
        check_neighbor_limit(table.vertex_count())?;
        let adjacency = table
            .codes()
            .par_iter()
            .map(|code| {
                let near = neighbors(&code.to_graph())?;
                Ok(near
                    .iter()
                    .map(|c| table.index_of(c).expect("census is closed under moves") as u32)
                    .collect())
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        Ok(MdpGraph { table, adjacency })
    }

    /// Shared, lazily built graph for `v` vertices.
    pub fn cached(store: &CensusStore, v: usize) -> Result<Arc<MdpGraph>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MdpGraph>>>> = OnceLock::new();
        check_neighbor_limit(v)?;
        let cache = CACHE.get_or_init(Default::default);
        if let Some(m) = cache.lock().unwrap().get(&v) {
            return Ok(Arc::clone(m));
        }
        let graph = Arc::new(MdpGraph::build(store.table(v)?)?);
        cache.lock().unwrap().insert(v, Arc::clone(&graph));
        Ok(graph)
    }

    pub fn table(&self) -> &CensusTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbor_indices(&self, i: usize) -> &[u32] {
        &self.adjacency[i]
    }

    pub fn index_of(&self, code: &CanonicalCode) -> Result<usize> {
        self.table
            .index_of(code)
            .ok_or_else(|| Error::Param(format!("{code} is not a census class")))
    }

    /// Breadth-first distances from all `sources`, `None` where unreached.
    pub fn distances_from(&self, sources: &[usize], r_max: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            if d == r_max {
                continue;
            }
            for &w in &self.adjacency[u] {
                let w = w as usize;
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance between two classes.
    pub fn diameter(&self) -> usize {
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                self.distances_from(&[i], usize::MAX)
                    .into_iter()
                    .map(|d| d.unwrap_or(usize::MAX))
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty()
            || self
                .distances_from(&[0], usize::MAX)
                .iter()
                .all(Option::is_some)
    }
}

/// Classes within distance `r` of `center`, with their distances.
pub fn ball(
    store: &CensusStore,
    center: &CanonicalCode,
    r: usize,
) -> Result<BTreeMap<CanonicalCode, usize>> {
    let mdp = MdpGraph::cached(store, center.vertex_count())?;
    let start = mdp.index_of(center)?;
    Ok(mdp
        .distances_from(&[start], r)
        .into_iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| (mdp.table.codes()[i].clone(), d)))
        .collect())
}

/// Outcome of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Reached(usize),
    /// Nothing found within the given radius.
    Unreached(usize),
}

/// Least radius around `center` containing a class whose graph satisfies
/// `predicate`.
pub fn distance_to_set<F>(
    store: &CensusStore,
    center: &CanonicalCode,
    predicate: F,
    r_max: usize,
) -> Result<Distance>
where
    F: Fn(&CubicMultigraph) -> bool,
{
    let mdp = MdpGraph::cached(store, center.vertex_count())?;
    let start = mdp.index_of(center)?;
    let dist = mdp.distances_from(&[start], r_max);
    let mut by_radius: Vec<(usize, usize)> = dist
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| (d, i)))
        .collect();
    by_radius.sort_unstable();
    for (d, i) in by_radius {
        if predicate(&mdp.table.codes()[i].to_graph()) {
            return Ok(Distance::Reached(d));
        }
    }
    Ok(Distance::Unreached(r_max))
}

/// `(3^(g-1))^r`, the bound on ball sizes.
pub fn ball_bound(g: usize, r: usize) -> BigUint {
    BigUint::from(3u32).pow((g.saturating_sub(1) * r) as u32)
}

/// `f(K) = sum_{i=1}^{K-1} 2^i K^2 = (2^K - 2) K^2`.
///
/// ```
/// use systolic_atlas::mdp::intersection_bound_f;
///
/// assert_eq!(intersection_bound_f(3), 54u32.into());
/// ```
pub fn intersection_bound_f(k: usize) -> BigUint {
    if k == 0 {
        return BigUint::from(0u32);
    }
    let k2 = BigUint::from(k) * BigUint::from(k);
    ((BigUint::from(1u32) << k) - BigUint::from(2u32)) * k2
}

/// Number of loops `ceil(h g)` demanded of a bad graph. The small slack
/// keeps decimal inputs like `h = 0.3, g = 10` from rounding up to 4.
pub fn required_loops(g: usize, h: f64) -> usize {
    (h * g as f64 - 1e-9).ceil().max(0.0) as usize
}

/// Integer quantities of the cycle-reduction counting argument.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingEstimates {
    pub genus: usize,
    pub h: f64,
    pub max_length: usize,
    /// `ceil(h g)`.
    pub loops: usize,
    /// `2 * loops`.
    pub vertex_drop: usize,
    /// `2g - 2 - 2 * loops`.
    pub reduced_vertices: usize,
    /// `2^(3 (g - loops) - 3)`.
    #[serde(with = "crate::decimal")]
    pub reverse_count_bound: BigUint,
    /// `ceil(log2 L) + 2`.
    pub reduction_rounds_bound: usize,
    /// `floor((2g - 2) / (3 * 2^(L-1)))`.
    pub packing_threshold: usize,
}

pub fn counting_estimates(g: usize, h: f64, max_length: usize) -> Result<CountingEstimates> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Param(format!("h must lie in (0, 1), got {h}")));
    }
    if max_length == 0 {
        return Err(Error::Param("L must be at least 1".into()));
    }
    if g < 2 {
        return Err(Error::Param(format!("genus must be at least 2, got {g}")));
    }
    let loops = required_loops(g, h);
    let vertices = 2 * g - 2;
    if vertices < 2 * loops + 2 {
        return Err(Error::Param(format!(
            "removing {loops} loop gadgets from {vertices} vertices leaves fewer than 2"
        )));
    }
    let shift = u32::try_from(max_length - 1).ok().filter(|&s| s < 60);
    let packing_threshold = shift.map_or(0, |s| vertices / (3 << s));
    Ok(CountingEstimates {
        genus: g,
        h,
        max_length,
        loops,
        vertex_drop: 2 * loops,
        reduced_vertices: vertices - 2 * loops,
        reverse_count_bound: BigUint::from(1u32) << (3 * (g - loops) - 3),
        reduction_rounds_bound: ceil_log2(max_length) + 2,
        packing_threshold,
    })
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsityParams {
    pub g_min: usize,
    pub g_max: usize,
    pub max_length: usize,
    pub h: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Why a genus row carries no meaningful distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetFlag {
    EmptySet,
    WholeCensus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsityRow {
    pub genus: usize,
    pub vertex_count: usize,
    pub census_count: usize,
    pub badset_size: usize,
    pub badset_fraction: f64,
    pub required_cycles: usize,
    pub packing_method: PackingMethod,
    /// Distance from each sampled class to the bad set; `None` if unreachable.
    pub distances: Vec<Option<usize>>,
    pub median_distance: Option<f64>,
    pub diameter: usize,
    pub flag: Option<SetFlag>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsityReport {
    pub params: SparsityParams,
    pub rows: Vec<SparsityRow>,
}

impl SparsityReport {
    /// `g,badset_fraction,median_distance,diameter`; an undefined median is left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,badset_fraction,median_distance,diameter\n");
        for r in &self.rows {
            let median = r.median_distance.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.genus, r.badset_fraction, median, r.diameter
            ));
        }
        out
    }
}

/// For each genus, marks the classes carrying at least `ceil(h g)` disjoint
/// cycles of length at most `L`, then measures how far uniformly sampled
/// classes are from that set. Sample `i` of genus `g` comes from ChaCha8
/// seeded with `seed` on stream `g`.
///
/// Distances come from one breadth-first search started at the whole bad
/// set, which equals searching from each sample because adjacency is symmetric.
pub fn sparsity_experiment(store: &CensusStore, params: &SparsityParams) -> Result<SparsityReport> {
    if params.trials == 0 {
        return Err(Error::Param("trials must be at least 1".into()));
    }
    if params.g_min < 2 || params.g_min > params.g_max {
        return Err(Error::Param(format!(
            "bad genus range {}..={}",
            params.g_min, params.g_max
        )));
    }
    if params.max_length == 0 || !(params.h > 0.0 && params.h < 1.0) {
        return Err(Error::Param("need L >= 1 and 0 < h < 1".into()));
    }
    let mut rows = Vec::new();
    for g in params.g_min..=params.g_max {
        let v = 2 * g - 2;
        let mdp = MdpGraph::cached(store, v)?;
        let required = required_loops(g, params.h);
        let packings: Vec<_> = mdp
            .table
            .codes()
            .par_iter()
            .map(|c| disjoint_cycle_packing(&c.to_graph(), params.max_length))
            .collect();
        let bad: Vec<usize> = (0..packings.len())
            .filter(|&i| packings[i].size() >= required)
            .collect();
        let method = packings.first().map_or(PackingMethod::Exact, |p| p.method);
        let count = mdp.len();
        let flag = if bad.is_empty() {
            Some(SetFlag::EmptySet)
        } else if bad.len() == count {
            Some(SetFlag::WholeCensus)
        } else {
            None
        };

        let to_bad = mdp.distances_from(&bad, usize::MAX);
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(g as u64);
        let distances: Vec<Option<usize>> = (0..params.trials)
            .map(|_| to_bad[rng.gen_range(0..count as u64) as usize])
            .collect();
        rows.push(SparsityRow {
            genus: g,
            vertex_count: v,
            census_count: count,
            badset_size: bad.len(),
            badset_fraction: bad.len() as f64 / count as f64,
            required_cycles: required,
            packing_method: method,
            median_distance: median(&distances),
            distances,
            diameter: mdp.diameter(),
            flag,
        });
    }
    Ok(SparsityReport {
        params: params.clone(),
        rows,
    })
}

/// Median of the reached distances (mean of the middle two for even counts).
fn median(distances: &[Option<usize>]) -> Option<f64> {
    let mut d: Vec<usize> = distances.iter().flatten().copied().collect();
    if d.is_empty() {
        return None;
    }
    d.sort_unstable();
    let n = d.len();
    Some(if n % 2 == 1 {
        d[n / 2] as f64
    } else {
        (d[n / 2 - 1] + d[n / 2]) as f64 / 2.0
    })
}
