use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeom::{square_data, SquareData};

/// The genus `(mn + 2) / 2` double cover of an `m x n` torus of π/4 squares,
/// branched over the `mn` cone points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HairyTorusModel {
    pub m: usize,
    pub n: usize,
    pub genus: usize,
    pub square: SquareData,
    /// Number of cone points, `mn = 2g - 2`.
    pub singular_count: usize,
    /// Lift of a square side between a basic pair of cone points.
    pub systole_length: f64,
    /// `2t min(m, n)`: every pants decomposition has a curve at least this long.
    pub bers_lower_bound: f64,
    /// Whether closed curves that wrap around the torus (length at least
    /// `2t min(m, n)`) are provably no shorter than the basic-pair lifts.
    pub systole_certified: bool,
}

/// Builds the model; needs `m, n >= 3` and `mn` even.
///
/// ```
/// use systolic_atlas::surfaces::build_hairy_torus;
///
/// let h = build_hairy_torus(4, 4).unwrap();
/// assert_eq!(h.genus, 9);
/// assert!(h.bers_lower_bound > 6.0);
/// ```
pub fn build_hairy_torus(m: usize, n: usize) -> Result<HairyTorusModel> {
    if m < 3 || n < 3 {
        return Err(Error::Param(format!(
            "grid {m}x{n} is too small, need m, n >= 3"
        )));
    }
    if (m * n) % 2 == 1 {
        return Err(Error::Param(format!("mn = {} must be even", m * n)));
    }
    let square = square_data();
    let systole_length = 2.0 * square.basic_pair_distance;
    let bers_lower_bound = square.opposite_side_distance * m.min(n) as f64;
    Ok(HairyTorusModel {
        m,
        n,
        genus: (m * n + 2) / 2,
        singular_count: m * n,
        systole_length,
        bers_lower_bound,
        systole_certified: bers_lower_bound >= systole_length,
        square,
    })
}

/// Combinatorial check that the projected systoles (all square sides)
/// fill the torus: the grid complex is built explicitly, faces are merged
/// across sides not covered by systoles, and every merged region must be a
/// single four-sided face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingCertificate {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub covered_edges: usize,
    pub regions: usize,
    pub four_sided_regions: usize,
    pub passes: bool,
}

fn filling_certificate(m: usize, n: usize) -> FillingCertificate {
    let vertex = |i: usize, j: usize| (i % m) * n + (j % n);
    // edge 2v: horizontal from v, edge 2v + 1: vertical from v
    let mut edge_ends = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            edge_ends.push((vertex(i, j), vertex(i, j + 1)));
            edge_ends.push((vertex(i, j), vertex(i + 1, j)));
        }
    }
    let faces: Vec<[usize; 4]> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            [
                2 * vertex(i, j),
                2 * vertex(i, j + 1) + 1,
                2 * vertex(i + 1, j),
                2 * vertex(i, j) + 1,
            ]
        })
        .collect();
    let covered = vec![true; edge_ends.len()];

    let mut edge_faces = vec![Vec::new(); edge_ends.len()];
    for (f, sides) in faces.iter().enumerate() {
        for &e in sides {
            edge_faces[e].push(f);
        }
    }
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (e, fs) in edge_faces.iter().enumerate() {
        if !covered[e] {
            let (a, b) = (find(&mut parent, fs[0]), find(&mut parent, fs[1]));
            parent[a] = b;
        }
    }
    let mut region_size = vec![0usize; faces.len()];
    for f in 0..faces.len() {
        let r = find(&mut parent, f);
        region_size[r] += 1;
    }
    let regions = region_size.iter().filter(|&&s| s > 0).count();
    let four_sided_regions = (0..faces.len())
        .filter(|&f| find(&mut parent, f) == f && region_size[f] == 1 && faces[f].len() == 4)
        .count();
    let (v, e, f) = (m * n, edge_ends.len(), faces.len());
    let euler_characteristic = v as i64 - e as i64 + f as i64;
    let covered_edges = covered.iter().filter(|&&c| c).count();
    let well_formed = edge_faces.iter().all(|fs| fs.len() == 2);
    FillingCertificate {
        vertices: v,
        edges: e,
        faces: f,
        euler_characteristic,
        covered_edges,
        regions,
        four_sided_regions,
        passes: well_formed
            && euler_characteristic == 0
            && covered_edges == e
            && four_sided_regions == regions,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HairyTorusReport {
    pub m: usize,
    pub n: usize,
    pub genus: usize,
    pub systole_length: f64,
    pub bers_lower_bound: f64,
    /// `bers_lower_bound > 2 sqrt(g)`.
    pub bers_exceeds_2sqrt_g: bool,
    pub systole_certified: bool,
    pub filling_certificate: FillingCertificate,
}

pub fn hairy_torus_report(m: usize, n: usize) -> Result<HairyTorusReport> {
    let model = build_hairy_torus(m, n)?;
    Ok(HairyTorusReport {
        m,
        n,
        genus: model.genus,
        systole_length: model.systole_length,
        bers_lower_bound: model.bers_lower_bound,
        bers_exceeds_2sqrt_g: model.bers_lower_bound > 2.0 * (model.genus as f64).sqrt(),
        systole_certified: model.systole_certified,
        filling_certificate: filling_certificate(m, n),
    })
}
