//! Isomorphism classes of connected cubic multigraphs on `V` vertices.
//!
//! Every class is reachable from every other by single Whitehead moves, so
//! the census is computed as the move-closure of one seed graph: a
//! breadth-first flood over canonical codes. Levels are expanded in
//! parallel and merged into a sorted set, so the output does not depend on
//! scheduling.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{
    canonical_code, canonical_code_of_pairing, check_vertex_count, girth, named, CanonicalCode,
    CubicMultigraph,
};
use crate::rewrite::{conjugate_transposition, move_transposition, Variant};

/// Largest `V` enumerated without the extended flag.
pub const DEFAULT_V_MAX: usize = 12;
/// Largest `V` ever enumerated.
pub const EXTENDED_V_MAX: usize = 14;
/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SYSTOLIC_ATLAS_CACHE";

/// All canonical codes for one vertex count, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    vertex_count: usize,
    codes: Vec<CanonicalCode>,
}

impl CensusTable {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn genus(&self) -> usize {
        self.vertex_count / 2 + 1
    }

    pub fn codes(&self) -> &[CanonicalCode] {
        &self.codes
    }

    pub fn count(&self) -> usize {
        self.codes.len()
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.codes.binary_search(code).is_ok()
    }

    pub fn index_of(&self, code: &CanonicalCode) -> Option<usize> {
        self.codes.binary_search(code).ok()
    }

    pub fn graphs(&self) -> impl Iterator<Item = CubicMultigraph> + '_ {
        self.codes.iter().map(CanonicalCode::to_graph)
    }

    /// Entries with neither loops nor parallel edges.
    pub fn count_simple(&self) -> usize {
        self.graphs().filter(|g| girth(g) >= 3).count()
    }

    /// Text form used by the cache: a header line, then one code per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("census v1 V={} count={}\n", self.vertex_count, self.count());
        for c in &self.codes {
            out.push_str(c.as_str());
            out.push('\n');
        }
        out
    }

    /// Parses [`CensusTable::to_text`] output, rechecking every code.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty census file".into()))?;
        let bad_header = || Error::Parse(format!("bad census header {header:?}"));
        let rest = header.strip_prefix("census v1 V=").ok_or_else(bad_header)?;
        let (v, count) = rest.split_once(" count=").ok_or_else(bad_header)?;
        let vertex_count: usize = v.parse().map_err(|_| bad_header())?;
        let count: usize = count.parse().map_err(|_| bad_header())?;
        let codes = lines
            .map(str::parse)
            .collect::<Result<Vec<CanonicalCode>>>()?;
        if codes.len() != count {
            return Err(Error::Parse(format!(
                "header says {count} codes, found {}",
                codes.len()
            )));
        }
        if codes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("census codes are not strictly sorted".into()));
        }
        if codes.iter().any(|c| c.vertex_count() != vertex_count) {
            return Err(Error::Parse(
                "census code with the wrong vertex count".into(),
            ));
        }
        Ok(CensusTable {
            vertex_count,
            codes,
        })
    }
}

/// Graph used to start the flood: theta for `V = 2`, otherwise a cycle on
/// all vertices with every other cycle edge doubled.
fn seed_graph(v: usize) -> CubicMultigraph {
    named::necklace(v)
}

/// Canonical codes of all graphs one Whitehead move away from `g`
/// (including `g` itself when a move returns its class).
pub fn single_move_neighbors(g: &CubicMultigraph) -> Vec<CanonicalCode> {
    let mut pairing = g.pairing().to_vec();
    let mut out = Vec::with_capacity(2 * g.edge_count());
    for e in g.edge_ids().filter(|&e| !g.is_loop(e)) {
        let [h, _] = g.edge_halves(e);
        for variant in [Variant::A, Variant::B] {
            let (x, y) = move_transposition(&pairing, h, variant);
            conjugate_transposition(&mut pairing, x, y);
            out.push(canonical_code_of_pairing(g.vertex_count(), &pairing));
            conjugate_transposition(&mut pairing, x, y);
        }
    }
    out
}

/// Enumerates the census for `v` vertices; `v_max` caps the allowed size
/// (at most [`EXTENDED_V_MAX`]).
///
/// ```
/// use systolic_atlas::census::{enumerate, DEFAULT_V_MAX};
///
/// let t = enumerate(4, DEFAULT_V_MAX).unwrap();
/// assert_eq!(t.count(), 5);
/// ```
pub fn enumerate(v: usize, v_max: usize) -> Result<CensusTable> {
    check_vertex_count(v)?;
    let limit = v_max.min(EXTENDED_V_MAX);
    if v > limit {
        return Err(Error::Limit {
            what: "census vertex count",
            value: v,
            limit,
        });
    }
    let start = canonical_code(&seed_graph(v));
    let mut seen = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let found: Vec<CanonicalCode> = frontier
            .par_iter()
            .flat_map_iter(|code| single_move_neighbors(&code.to_graph()))
            .collect();
        let mut next = BTreeSet::new();
        for code in found {
            if !seen.contains(&code) {
                next.insert(code);
            }
        }
        seen.extend(next.iter().cloned());
        frontier = next.into_iter().collect();
    }
    Ok(CensusTable {
        vertex_count: v,
        codes: seen.into_iter().collect(),
    })
}

/// Uniformly random perfect matching of the `3V` half-edges, redrawn until
/// the graph is connected. This weights each class by its number of
/// labelings, unlike [`CensusStore::sample_uniform`].
pub fn sample_configuration(v: usize, seed: u64) -> Result<CubicMultigraph> {
    check_vertex_count(v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut halves: Vec<usize> = (0..3 * v).collect();
    loop {
        halves.shuffle(&mut rng);
        let mut pairing = vec![0; 3 * v];
        for pair in halves.chunks(2) {
            pairing[pair[0]] = pair[1];
            pairing[pair[1]] = pair[0];
        }
        match CubicMultigraph::from_pairing(v, pairing) {
            Ok(g) => return Ok(g),
            Err(Error::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// One row of the growth report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub genus: usize,
    pub vertex_count: usize,
    pub count: usize,
    /// `g^(2g)`.
    #[serde(with = "crate::decimal")]
    pub g_pow_2g: BigUint,
    /// `ln(count) / (2g ln g)`.
    pub ratio: f64,
}

/// Census tables with in-memory and optional on-disk caching.
///
/// Cache files are `<dir>/census_V<V>.txt`. A missing or unreadable file is
/// regenerated.
#[derive(Debug)]
pub struct CensusStore {
    cache_dir: Option<PathBuf>,
    v_max: usize,
    tables: Mutex<HashMap<usize, Arc<CensusTable>>>,
}

impl Default for CensusStore {
    fn default() -> Self {
        Self::new(None, DEFAULT_V_MAX)
    }
}

impl CensusStore {
    pub fn new(cache_dir: Option<PathBuf>, v_max: usize) -> Self {
        CensusStore {
            cache_dir,
            v_max,
            tables: Mutex::new(HashMap::new()),
        }
    }

    /// Uses `cache_dir` if given, else the directory in [`CACHE_ENV`].
    pub fn with_env(cache_dir: Option<PathBuf>, v_max: usize) -> Self {
        let dir = cache_dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        Self::new(dir, v_max)
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    fn cache_path(&self, v: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("census_V{v}.txt")))
    }

    pub fn table(&self, v: usize) -> Result<Arc<CensusTable>> {
        check_vertex_count(v)?;
        if let Some(t) = self.tables.lock().unwrap().get(&v) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(self.load_or_build(v)?);
        self.tables.lock().unwrap().insert(v, Arc::clone(&table));
        Ok(table)
    }

    fn load_or_build(&self, v: usize) -> Result<CensusTable> {
        let limit = self.v_max.min(EXTENDED_V_MAX);
        if v > limit {
            return Err(Error::Limit {
                what: "census vertex count",
                value: v,
                limit,
            });
        }
        let path = self.cache_path(v);
        if let Some(path) = &path {
            if let Ok(text) = fs::read_to_string(path) {
                if let Ok(t) = CensusTable::from_text(&text) {
                    if t.vertex_count == v {
                        return Ok(t);
                    }
                }
            }
        }
        let table = enumerate(v, self.v_max)?;
        if let Some(path) = &path {
            write_atomically(path, &table.to_text())?;
        }
        Ok(table)
    }

    pub fn count_simple(&self, v: usize) -> Result<usize> {
        Ok(self.table(v)?.count_simple())
    }

    /// A census entry drawn uniformly with ChaCha8 seeded by `seed`.
    ///
    /// ```
    /// use systolic_atlas::census::CensusStore;
    ///
    /// let store = CensusStore::default();
    /// let g = store.sample_uniform(2, 7).unwrap();
    /// assert_eq!(g, store.sample_uniform(2, 7).unwrap());
    /// ```
    pub fn sample_uniform(&self, v: usize, seed: u64) -> Result<CubicMultigraph> {
        let table = self.table(v)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let index = rng.gen_range(0..table.count() as u64) as usize;
        Ok(table.codes[index].to_graph())
    }

    /// Counts against `g^(2g)` for `g = 2 ..= v_max / 2 + 1`.
    pub fn growth_report(&self, v_max: usize) -> Result<Vec<GrowthRow>> {
        (2..=v_max)
            .step_by(2)
            .map(|v| {
                let count = self.table(v)?.count();
                let g = v / 2 + 1;
                let ratio = (count as f64).ln() / (2.0 * g as f64 * (g as f64).ln());
                Ok(GrowthRow {
                    genus: g,
                    vertex_count: v,
                    count,
                    g_pow_2g: BigUint::from(g).pow(2 * g as u32),
                    ratio,
                })
            })
            .collect()
    }
}

fn write_atomically(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
