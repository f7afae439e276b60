//! Surfaces glued from Y-pieces along a cubic graph.
//!
//! A Y-piece has genus one and three boundary curves of length `b`. It
//! splits into three pairs of pants `k = 0, 1, 2`: pants `k` is bounded by
//! the interior curves `γ(k-1)`, `γ(k)` of length `s` and by the boundary
//! curve `β(k)`. Each pair of pants is two right-angled hexagons (front
//! `h = 0`, back `h = 1`), and each hexagon is cut into a left and a right
//! pentagon with sides `s/2, s/6, s/4, b/4, c` by the common perpendicular
//! from `β(k)` to the seam joining `γ(k-1)` and `γ(k)`.
//!
//! Points of one piece, per pants `k`:
//! `Gss(k)` and `Gsb(k)` where the seams meet `γ(k)`, the seam midpoint
//! `M(k)`, `CsbA(k)` and `CsbB(k)` where the seams meet `β(k)`, and the
//! feet `Cq(k, h)` of the perpendiculars on `β(k)`.
//!
//! Graph vertex `v` carries one piece and its half-edge `3v + k` is
//! `β(k)`. Gluing along an edge is untwisted: `Cq` feet match front to
//! front and back to back, while `CsbA` on one side meets `CsbB` on the
//! other.
//!
//! The candidate systoles are, per piece, the three `γ(k)` (two sides
//! `s/2`) and the curve through the three seams (six sides `s/6`), and per
//! graph edge the curve through four perpendiculars (four sides `s/4`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::PantsSurface;
use crate::error::{Error, Result};
use crate::hypgeom::{pants_cuff_distance, solve_pentagon, PentagonData, DEFAULT_TOLERANCE};
use crate::multigraph::{girth, CubicMultigraph, EdgeId};

/// Tolerance for margins of exact identities.
const TOL: f64 = 1e-9;
/// Tolerance for margins that compare two independently computed lengths.
const NUMERIC_TOL: f64 = 1e-6;

/// Genus of the surface glued from `v` Y-pieces: `(3V + 2) / 2`.
pub fn y_genus(v: usize) -> Result<usize> {
    if v % 2 == 1 {
        return Err(Error::Parity(v));
    }
    Ok((3 * v + 2) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    A,
    B,
}

impl Side {
    fn flip(self) -> Self {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Point {
    Gss(usize),
    Gsb(usize),
    M(usize),
    CsbA(usize),
    CsbB(usize),
    Cq(usize, usize),
}

impl Point {
    fn slot(self) -> usize {
        let (k, i) = match self {
            Point::Gss(k) => (k, 0),
            Point::Gsb(k) => (k, 1),
            Point::M(k) => (k, 2),
            Point::CsbA(k) => (k, 3),
            Point::CsbB(k) => (k, 4),
            Point::Cq(k, h) => (k, 5 + h),
        };
        7 * k + i
    }
}

const POINTS_PER_PIECE: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Seg {
    /// Half of `γ(k)`.
    Gamma(usize, usize),
    /// Half of the seam of pants `k`: `false` from `γ(k-1)`, `true` from `γ(k)`.
    HalfSeam(usize, bool),
    /// Perpendicular from `M(k)` to `Cq(k, h)`.
    Perp(usize, usize),
    /// Quarter of `β(k)` between `Cq(k, h)` and `Csb{A,B}(k)`.
    Beta(usize, usize, Side),
    /// Seam from `γ(k-1)` (A) or `γ(k)` (B) to `β(k)`.
    SbSeam(usize, Side),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum SegKey {
    Interior(usize, Seg),
    Glued(EdgeId, usize, Side),
}

/// The four pentagons of pants `k`, as point cycles with the segment on
/// each side (side `i` runs from point `i` to point `i + 1`).
fn pants_pentagons(k: usize) -> [([Point; 5], [Seg; 5]); 4] {
    use Point::*;
    let p = (k + 2) % 3;
    [
        (
            [Gsb(p), Gss(p), M(k), Cq(k, 0), CsbA(k)],
            [
                Seg::Gamma(p, 0),
                Seg::HalfSeam(k, false),
                Seg::Perp(k, 0),
                Seg::Beta(k, 0, Side::A),
                Seg::SbSeam(k, Side::A),
            ],
        ),
        (
            [Gsb(k), CsbB(k), Cq(k, 0), M(k), Gss(k)],
            [
                Seg::SbSeam(k, Side::B),
                Seg::Beta(k, 0, Side::B),
                Seg::Perp(k, 0),
                Seg::HalfSeam(k, true),
                Seg::Gamma(k, 0),
            ],
        ),
        (
            [Gsb(p), CsbA(k), Cq(k, 1), M(k), Gss(p)],
            [
                Seg::SbSeam(k, Side::A),
                Seg::Beta(k, 1, Side::A),
                Seg::Perp(k, 1),
                Seg::HalfSeam(k, false),
                Seg::Gamma(p, 1),
            ],
        ),
        (
            [Gsb(k), Gss(k), M(k), Cq(k, 1), CsbB(k)],
            [
                Seg::Gamma(k, 1),
                Seg::HalfSeam(k, true),
                Seg::Perp(k, 1),
                Seg::Beta(k, 1, Side::B),
                Seg::SbSeam(k, Side::B),
            ],
        ),
    ]
}

fn seg_length(seg: Seg, p: &PentagonData) -> f64 {
    match seg {
        Seg::Gamma(..) => p.sides[0],
        Seg::HalfSeam(..) => p.sides[1],
        Seg::Perp(..) => p.sides[2],
        Seg::Beta(..) => p.sides[3],
        Seg::SbSeam(..) => p.sides[4],
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// The pentagon complex of a glued surface.
struct Complex {
    point_count: usize,
    /// Endpoints of each segment (as listed by its first face).
    segments: Vec<(usize, usize)>,
    lengths: Vec<f64>,
    keys: HashMap<SegKey, usize>,
    /// Each face as (segment, traversed from first to second endpoint).
    faces: Vec<Vec<(usize, bool)>>,
    seg_points: Vec<(usize, usize)>,
}

impl Complex {
    fn build(g: &CubicMultigraph, pentagon: &PentagonData) -> Self {
        let n = g.vertex_count();
        let mut uf = UnionFind::new(POINTS_PER_PIECE * n);
        let raw = |v: usize, p: Point| POINTS_PER_PIECE * v + p.slot();
        for e in g.edge_ids() {
            let [h1, h2] = g.edge_halves(e);
            let (v, k, w, j) = (h1 / 3, h1 % 3, h2 / 3, h2 % 3);
            for h in 0..2 {
                uf.union(raw(v, Point::Cq(k, h)), raw(w, Point::Cq(j, h)));
            }
            uf.union(raw(v, Point::CsbA(k)), raw(w, Point::CsbB(j)));
            uf.union(raw(v, Point::CsbB(k)), raw(w, Point::CsbA(j)));
        }
        let mut point_id = HashMap::new();
        let mut id_of = |uf: &mut UnionFind, r: usize| {
            let root = uf.find(r);
            let next = point_id.len();
            *point_id.entry(root).or_insert(next)
        };

        let mut keys = HashMap::new();
        let mut segments = Vec::new();
        let mut lengths = Vec::new();
        let mut faces = Vec::new();
        for v in 0..n {
            for k in 0..3 {
                let half = 3 * v + k;
                let e = g.edge_of(half);
                let canonical_end = g.edge_halves(e)[0] == half;
                for (points, sides) in pants_pentagons(k) {
                    let ids: Vec<usize> =
                        points.iter().map(|&p| id_of(&mut uf, raw(v, p))).collect();
                    let mut face = Vec::with_capacity(5);
                    for (i, &seg) in sides.iter().enumerate() {
                        let key = match seg {
                            Seg::Beta(_, h, side) => {
                                SegKey::Glued(e, h, if canonical_end { side } else { side.flip() })
                            }
                            other => SegKey::Interior(v, other),
                        };
                        let (a, b) = (ids[i], ids[(i + 1) % 5]);
                        let id = *keys.entry(key).or_insert_with(|| {
                            segments.push((a, b));
                            lengths.push(seg_length(seg, pentagon));
                            segments.len() - 1
                        });
                        face.push((id, segments[id] == (a, b)));
                    }
                    faces.push(face);
                }
            }
        }
        Complex {
            point_count: point_id.len(),
            seg_points: segments.clone(),
            segments,
            lengths,
            keys,
            faces,
        }
    }

    fn segment(&self, key: SegKey) -> usize {
        self.keys[&key]
    }

    /// Whether `segs` chain into one closed curve.
    fn is_closed_curve(&self, segs: &[usize]) -> bool {
        let (a, b) = self.seg_points[segs[0]];
        'start: for (start, mut cur) in [(a, b), (b, a)] {
            for &s in &segs[1..] {
                let (p, q) = self.seg_points[s];
                cur = if p == cur {
                    q
                } else if q == cur {
                    p
                } else {
                    continue 'start;
                };
            }
            if cur == start {
                return true;
            }
        }
        false
    }

    fn summary(&self, curve_segments: &[Vec<usize>]) -> ComplexSummary {
        let s_count = self.segments.len();
        let mut uses = vec![Vec::new(); s_count];
        for (f, face) in self.faces.iter().enumerate() {
            for &(s, forward) in face {
                uses[s].push((f, forward));
            }
        }
        let two_sided = uses.iter().all(|u| u.len() == 2);
        let oriented = two_sided && uses.iter().all(|u| u[0].1 != u[1].1);

        let mut on_curve = vec![false; s_count];
        for c in curve_segments {
            for &s in c {
                on_curve[s] = true;
            }
        }
        let mut point_on_curve = vec![false; self.point_count];
        for s in 0..s_count {
            if on_curve[s] {
                let (a, b) = self.segments[s];
                point_on_curve[a] = true;
                point_on_curve[b] = true;
            }
        }
        let mut uf = UnionFind::new(self.faces.len());
        for (s, u) in uses.iter().enumerate() {
            if !on_curve[s] && u.len() == 2 {
                uf.union(u[0].0, u[1].0);
            }
        }
        let mut region_of = HashMap::new();
        let mut counts: Vec<[i64; 3]> = Vec::new();
        let mut region = |uf: &mut UnionFind, f: usize| {
            let r = uf.find(f);
            let next = region_of.len();
            *region_of.entry(r).or_insert(next)
        };
        let mut face_region = Vec::with_capacity(self.faces.len());
        for f in 0..self.faces.len() {
            let r = region(&mut uf, f);
            if r == counts.len() {
                counts.push([0; 3]);
            }
            counts[r][0] += 1;
            face_region.push(r);
        }
        let mut interior_point_region: Vec<Option<usize>> = vec![None; self.point_count];
        for (s, u) in uses.iter().enumerate() {
            if !on_curve[s] && !u.is_empty() {
                let r = face_region[u[0].0];
                counts[r][1] += 1;
                for p in [self.segments[s].0, self.segments[s].1] {
                    if !point_on_curve[p] {
                        interior_point_region[p] = Some(r);
                    }
                }
            }
        }
        for r in interior_point_region.into_iter().flatten() {
            counts[r][2] += 1;
        }
        let disk_regions = counts.iter().filter(|[f, e, v]| f - e + v == 1).count();
        let regions = counts.len();
        let euler_characteristic =
            self.point_count as i64 - s_count as i64 + self.faces.len() as i64;
        let curves_closed = curve_segments.iter().all(|c| self.is_closed_curve(c));
        ComplexSummary {
            points: self.point_count,
            segments: s_count,
            faces: self.faces.len(),
            euler_characteristic,
            two_sided,
            oriented,
            curves_closed,
            regions,
            disk_regions,
            fills: oriented && curves_closed && disk_regions == regions,
        }
    }
}

/// Counts and checks on the pentagon complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub points: usize,
    pub segments: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    /// Every segment borders exactly two pentagons.
    pub two_sided: bool,
    /// The two pentagons at each segment traverse it in opposite directions.
    pub oriented: bool,
    /// Every candidate systole closes up.
    pub curves_closed: bool,
    /// Components left after cutting along the candidate systoles.
    pub regions: usize,
    /// Regions with Euler characteristic 1 (open disks).
    pub disk_regions: usize,
    pub fills: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    /// An interior pants curve of a piece.
    Gamma,
    /// The curve through the three seams of a piece.
    Seam,
    /// The curve through the perpendiculars on both sides of a glued boundary.
    Cross,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystoleCurve {
    pub family: CurveFamily,
    /// Vertex of the piece, or graph edge for [`CurveFamily::Cross`].
    pub at: usize,
    pub segment_lengths: Vec<f64>,
    pub length: f64,
}

/// Lower bounds on the lengths of the four arc types.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcBounds {
    /// Distance between the two length-`s` cuffs of a pants.
    pub cuff_ss: f64,
    /// Distance between a length-`s` cuff and the length-`b` cuff.
    pub cuff_sb: f64,
    /// Arc in one pants with both ends on one interior curve: `b/2`.
    pub o: f64,
    /// Arc crossing all three pants: `2 cuff_ss`.
    pub p: f64,
    /// Arc in one pants with both ends on the boundary: `2 acosh(sinh(cuff_sb) sinh(s/2))`.
    pub q: f64,
    /// Arc joining two boundary curves of the piece: `2 cuff_sb`.
    pub r: f64,
}

impl ArcBounds {
    fn new(p: &PentagonData) -> Result<Self> {
        let (s, b) = (p.s, p.b);
        let cuff_ss = pants_cuff_distance(s, s, b)?;
        let cuff_sb = pants_cuff_distance(s, b, s)?;
        Ok(ArcBounds {
            cuff_ss,
            cuff_sb,
            o: b / 2.0,
            p: 2.0 * cuff_ss,
            q: 2.0 * (cuff_sb.sinh() * (s / 2.0).sinh()).acosh(),
            r: 2.0 * cuff_sb,
        })
    }
}

/// A surface glued from Y-pieces along `base_graph`, with its candidate
/// systoles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YSurfaceModel {
    pub base_graph: CubicMultigraph,
    pub girth: usize,
    pub pentagon: PentagonData,
    pub genus: usize,
    /// Pants decomposition: pants `3v + k` is pants `k` of piece `v`; the
    /// curves are the `γ`'s (length `s`) and the glued boundaries (length `b`),
    /// all untwisted.
    pub surface: PantsSurface,
    pub arc_bounds: ArcBounds,
    pub curves: Vec<SystoleCurve>,
    pub complex: ComplexSummary,
}

impl YSurfaceModel {
    /// Builds the model for any cubic graph and pentagon data, without the
    /// girth requirement (for controls and perturbations).
    pub fn assemble(graph: &CubicMultigraph, pentagon: PentagonData) -> Result<Self> {
        let base_graph = graph.normalized();
        let n = base_graph.vertex_count();
        let complex = Complex::build(&base_graph, &pentagon);

        let mut curves = Vec::new();
        let mut curve_segments = Vec::new();
        let mut push = |family, at, segs: Vec<SegKey>| {
            let ids: Vec<usize> = segs.iter().map(|&k| complex.segment(k)).collect();
            let segment_lengths: Vec<f64> = ids.iter().map(|&i| complex.lengths[i]).collect();
            curves.push(SystoleCurve {
                family,
                at,
                length: segment_lengths.iter().sum(),
                segment_lengths,
            });
            curve_segments.push(ids);
        };
        for v in 0..n {
            for k in 0..3 {
                push(
                    CurveFamily::Gamma,
                    v,
                    (0..2)
                        .map(|h| SegKey::Interior(v, Seg::Gamma(k, h)))
                        .collect(),
                );
            }
            let seam = (0..3)
                .flat_map(|k| {
                    [false, true].map(|second| SegKey::Interior(v, Seg::HalfSeam(k, second)))
                })
                .collect();
            push(CurveFamily::Seam, v, seam);
        }
        for e in base_graph.edge_ids() {
            let [h1, h2] = base_graph.edge_halves(e);
            let (v, k, w, j) = (h1 / 3, h1 % 3, h2 / 3, h2 % 3);
            push(
                CurveFamily::Cross,
                e.0,
                vec![
                    SegKey::Interior(v, Seg::Perp(k, 0)),
                    SegKey::Interior(v, Seg::Perp(k, 1)),
                    SegKey::Interior(w, Seg::Perp(j, 1)),
                    SegKey::Interior(w, Seg::Perp(j, 0)),
                ],
            );
        }
        let complex_summary = complex.summary(&curve_segments);

        let mut pants_edges = Vec::new();
        let mut lengths = Vec::new();
        for v in 0..n {
            for k in 0..3 {
                pants_edges.push((3 * v + k, 3 * v + (k + 1) % 3));
                lengths.push(pentagon.s);
            }
        }
        for e in base_graph.edge_ids() {
            let [h1, h2] = base_graph.edge_halves(e);
            pants_edges.push((h1, h2));
            lengths.push(pentagon.b);
        }
        let pants_graph = CubicMultigraph::from_edge_list(3 * n, &pants_edges)?;
        let twists = vec![0.0; lengths.len()];
        let surface = PantsSurface::new(pants_graph, lengths, twists)?;

        Ok(YSurfaceModel {
            girth: girth(&base_graph),
            genus: y_genus(n)?,
            arc_bounds: ArcBounds::new(&pentagon)?,
            base_graph,
            pentagon,
            surface,
            curves,
            complex: complex_summary,
        })
    }
}

/// Builds the Y-piece surface over `g`, which must have girth at least 6.
///
/// ```
/// use systolic_atlas::multigraph::named;
/// use systolic_atlas::surfaces::{build_y_surface, verify_systole_certificate};
///
/// let model = build_y_surface(&named::heawood()).unwrap();
/// assert_eq!(model.genus, 22);
/// assert!(verify_systole_certificate(&model).passed);
/// ```
pub fn build_y_surface(g: &CubicMultigraph) -> Result<YSurfaceModel> {
    let gi = girth(g);
    if gi < 6 {
        return Err(Error::Girth { girth: gi });
    }
    YSurfaceModel::assemble(g, solve_pentagon(DEFAULT_TOLERANCE)?)
}

/// One numbered inequality `bound >= required`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub id: u8,
    pub name: String,
    pub bound: f64,
    pub required: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub checks: Vec<CertificateCheck>,
    /// The candidate systoles cut the surface into disks.
    pub fills: bool,
    /// All six checks and the filling check pass.
    pub passed: bool,
}

impl CertificateReport {
    pub fn failed_ids(&self) -> Vec<u8> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id)
            .collect()
    }
}

/// Evaluates the six length inequalities behind the claim that the
/// candidate curves are systoles.
///
/// 1. girth at least 6;
/// 2. arc bounds: `O >= b/2`, `P >= 2s/3`, `Q >= s/2`, `R >= s/6`;
/// 3. a curve projecting to a cycle of the graph crosses at least girth
///    many type-R arcs: `girth * R >= s`;
/// 4. a curve projecting to a path contains two arcs of types O, P or Q:
///    `2 min(O, P, Q) >= s`;
/// 5. a curve inside one piece crosses all three pants or contains two
///    type-O arcs: `min(3 cuff_ss, 2 O) >= s`;
/// 6. every candidate curve has length exactly `s`.
///
/// A check passes when `bound - required >= -tolerance`: several bounds
/// hold with equality by construction.
pub fn verify_systole_certificate(model: &YSurfaceModel) -> CertificateReport {
    let (s, b) = (model.pentagon.s, model.pentagon.b);
    let a = &model.arc_bounds;
    let mut checks = Vec::new();
    let mut check = |id: u8, name: &str, bound: f64, required: f64, tolerance: f64| {
        let margin = bound - required;
        checks.push(CertificateCheck {
            id,
            name: name.into(),
            bound,
            required,
            margin,
            tolerance,
            passed: margin >= -tolerance,
        });
    };
    check(1, "girth", model.girth as f64, 6.0, 0.0);

    let arc_margins = [
        a.o - b / 2.0,
        a.p - 2.0 * s / 3.0,
        a.q - s / 2.0,
        a.r - s / 6.0,
    ];
    let worst = arc_margins.iter().copied().fold(f64::INFINITY, f64::min);
    check(2, "arc bounds O, P, Q, R", worst, 0.0, NUMERIC_TOL);

    check(3, "cycle projection", model.girth as f64 * a.r, s, TOL);
    check(4, "path projection", 2.0 * a.o.min(a.p).min(a.q), s, TOL);
    check(5, "single piece", (3.0 * a.cuff_ss).min(2.0 * a.o), s, TOL);
    let worst_curve = model
        .curves
        .iter()
        .map(|c| (c.length - s).abs())
        .fold(0.0, f64::max);
    check(6, "candidate lengths", -worst_curve, 0.0, TOL);

    let fills = model.complex.fills;
    let passed = fills && checks.iter().all(|c| c.passed);
    CertificateReport {
        checks,
        fills,
        passed,
    }
}
