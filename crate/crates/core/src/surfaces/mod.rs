//! Surfaces described by pants decompositions, and the two explicit
//! constructions: the hairy torus cover and Y-piece surfaces.

mod hairy;
mod ypiece;

pub use hairy::{
    build_hairy_torus, hairy_torus_report, FillingCertificate, HairyTorusModel, HairyTorusReport,
};
pub use ypiece::{
    build_y_surface, verify_systole_certificate, y_genus, ArcBounds, CertificateCheck,
    CertificateReport, ComplexSummary, CurveFamily, SystoleCurve, YSurfaceModel,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeom::{collar_width, epsilon0};
use crate::multigraph::CubicMultigraph;

/// Default band `[a, b]` for pants-curve lengths of Y_g members.
pub const DEFAULT_BAND: (f64, f64) = (0.1, 10.0);

/// A pants decomposition with Fenchel–Nielsen data: edge `i` of the dual
/// graph is a pants curve with length `lengths[i]` and twist `twists[i]`.
///
/// The graph is stored with edges in sorted order so that the `.cmg`
/// payload and the arrays line up after a JSON round trip.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPantsSurface")]
pub struct PantsSurface {
    graph: CubicMultigraph,
    lengths: Vec<f64>,
    twists: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPantsSurface {
    graph: CubicMultigraph,
    lengths: Vec<f64>,
    twists: Vec<f64>,
}

impl TryFrom<RawPantsSurface> for PantsSurface {
    type Error = Error;

    fn try_from(raw: RawPantsSurface) -> Result<Self> {
        PantsSurface::new(raw.graph, raw.lengths, raw.twists)
    }
}

impl PantsSurface {
    /// `lengths` and `twists` are indexed by the edge ids of `graph`.
    pub fn new(graph: CubicMultigraph, lengths: Vec<f64>, twists: Vec<f64>) -> Result<Self> {
        let e = graph.edge_count();
        if lengths.len() != e || twists.len() != e {
            return Err(Error::Param(format!(
                "{e} curves but {} lengths and {} twists",
                lengths.len(),
                twists.len()
            )));
        }
        if let Some(l) = lengths.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
            return Err(Error::Domain(format!(
                "pants curve length {l} is not positive"
            )));
        }
        if let Some(t) = twists.iter().find(|t| !t.is_finite()) {
            return Err(Error::Domain(format!("twist {t} is not finite")));
        }
        let edges = graph.edge_list();
        let mut order: Vec<usize> = (0..e).collect();
        order.sort_by_key(|&i| edges[i]);
        Ok(PantsSurface {
            graph: graph.normalized(),
            lengths: order.iter().map(|&i| lengths[i]).collect(),
            twists: order.iter().map(|&i| twists[i]).collect(),
        })
    }

    pub fn graph(&self) -> &CubicMultigraph {
        &self.graph
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn twists(&self) -> &[f64] {
        &self.twists
    }

    pub fn genus(&self) -> usize {
        self.graph.genus()
    }

    /// Whether every pants curve length lies in `[a, b]`.
    pub fn in_band(&self, (a, b): (f64, f64)) -> bool {
        self.lengths.iter().all(|&l| a <= l && l <= b)
    }

    /// Lower bound, from the collar lemma, on any closed geodesic crossing
    /// pants curve `i`: twice the collar half-width.
    pub fn crossing_length_bound(&self, i: usize) -> f64 {
        2.0 * collar_width(self.lengths[i]).expect("lengths are positive")
    }
}

/// The net surface of `g`: all pants curves of length `2 asinh 1`, no twist.
///
/// ```
/// use systolic_atlas::multigraph::named;
/// use systolic_atlas::surfaces::net_point;
///
/// let x = net_point(&named::theta());
/// assert_eq!(x.lengths().len(), 3);
/// assert!(x.twists().iter().all(|&t| t == 0.0));
/// ```
pub fn net_point(g: &CubicMultigraph) -> PantsSurface {
    let e = g.edge_count();
    PantsSurface::new(g.clone(), vec![epsilon0(); e], vec![0.0; e]).expect("epsilon0 is positive")
}
