//! Whitehead moves and the surgeries built from them.
//!
//! A Whitehead move keeps a non-loop edge `e = uv` and regroups the four
//! other half-edges at its ends. Write `a1 < a2` for the other half-edges at
//! `u` and `b1 < b2` for those at `v`. Variant [`Variant::A`] leaves `u`
//! holding the branches of `a1, b1` and `v` those of `a2, b2`; variant
//! [`Variant::B`] groups `a1, b2 | a2, b1`. On pairings both are
//! conjugations by a transposition, `(a2 b1)` and `(a2 b2)`, so each variant
//! undoes itself. Edge ids survive every move.

mod lift;
mod reduce;

pub use lift::{girth_lift, Correspondence};
pub use reduce::{
    attach_loop_gadget, reduce_cycle_to_loop, reduction_round, remove_loop_gadgets, Reduction,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{CubicMultigraph, EdgeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

/// One elementary move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Move {
    pub edge: EdgeId,
    pub variant: Variant,
}

impl Move {
    pub fn new(edge: EdgeId, variant: Variant) -> Self {
        Move { edge, variant }
    }
}

/// Moves on pairwise vertex-disjoint non-loop edges, applied simultaneously.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSet {
    moves: Vec<Move>,
}

impl MoveSet {
    /// Validates `moves` against `g`.
    pub fn new(g: &CubicMultigraph, moves: Vec<Move>) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::Param("a move set needs at least one move".into()));
        }
        let mut owner: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
        for m in &moves {
            check_edge(g, m.edge)?;
            if g.is_loop(m.edge) {
                return Err(Error::LoopMove(m.edge));
            }
            let (u, v) = g.endpoints(m.edge);
            for x in [u, v] {
                if let Some(other) = owner[x] {
                    return Err(Error::Overlap(other, m.edge));
                }
                owner[x] = Some(m.edge);
            }
        }
        Ok(MoveSet { moves })
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }
}

fn check_edge(g: &CubicMultigraph, e: EdgeId) -> Result<()> {
    if e.0 >= g.edge_count() {
        return Err(Error::Index {
            index: e.0,
            bound: g.edge_count(),
        });
    }
    Ok(())
}

/// The half-edges swapped by a move on a non-loop edge.
pub(crate) fn move_transposition(
    pairing: &[usize],
    half: usize,
    variant: Variant,
) -> (usize, usize) {
    let other = pairing[half];
    let rest = |h: usize| {
        let base = h - h % 3;
        let mut r = [base, base + 1, base + 2]
            .into_iter()
            .filter(move |&x| x != h);
        (r.next().unwrap(), r.next().unwrap())
    };
    let (_, a2) = rest(half);
    let (b1, b2) = rest(other);
    match variant {
        Variant::A => (a2, b1),
        Variant::B => (a2, b2),
    }
}

/// Conjugates `pairing` by the transposition `(x y)` in place.
pub(crate) fn conjugate_transposition(pairing: &mut [usize], x: usize, y: usize) {
    let swap = |z: usize| {
        if z == x {
            y
        } else if z == y {
            x
        } else {
            z
        }
    };
    let (px, py) = (pairing[x], pairing[y]);
    let (nx, ny) = (swap(py), swap(px));
    pairing[x] = nx;
    pairing[y] = ny;
    pairing[nx] = x;
    pairing[ny] = y;
}

/// Applies one Whitehead move.
///
/// ```
/// use systolic_atlas::multigraph::{canonical_code, named, EdgeId};
/// use systolic_atlas::rewrite::{whitehead, Variant};
///
/// let g = whitehead(&named::theta(), EdgeId(0), Variant::A).unwrap();
/// assert_eq!(canonical_code(&g), canonical_code(&named::dumbbell()));
/// ```
pub fn whitehead(g: &CubicMultigraph, e: EdgeId, variant: Variant) -> Result<CubicMultigraph> {
    apply_moveset(g, &MoveSet::new(g, vec![Move::new(e, variant)])?)
}

/// Applies all moves of `ms` at once; the transpositions commute because
/// the edges are vertex-disjoint.
pub fn apply_moveset(g: &CubicMultigraph, ms: &MoveSet) -> Result<CubicMultigraph> {
    let ms = MoveSet::new(g, ms.moves.clone())?;
    let mut sigma: Vec<usize> = (0..g.pairing().len()).collect();
    for m in ms.moves() {
        let [h, _] = g.edge_halves(m.edge);
        let (x, y) = move_transposition(g.pairing(), h, m.variant);
        sigma.swap(x, y);
    }
    let pairing: Vec<usize> = (0..sigma.len())
        .map(|h| sigma[g.partner(sigma[h])])
        .collect();
    let edges = g
        .edge_ids()
        .map(|e| {
            let [a, b] = g.edge_halves(e).map(|h| sigma[h]);
            [a.min(b), a.max(b)]
        })
        .collect();
    Ok(CubicMultigraph::from_parts(
        g.vertex_count(),
        pairing,
        edges,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::named::*;
    use crate::multigraph::{canonical_code, girth};

    #[test]
    fn theta_moves() {
        let g = theta();
        for e in g.edge_ids() {
            let a = whitehead(&g, e, Variant::A).unwrap();
            let b = whitehead(&g, e, Variant::B).unwrap();
            assert_eq!(canonical_code(&a), canonical_code(&dumbbell()));
            assert_eq!(canonical_code(&b), canonical_code(&theta()));
        }
    }

    #[test]
    fn moves_are_involutions() {
        for g in [k4(), petersen(), dumbbell(), necklace(6)] {
            for e in g.edge_ids().filter(|&e| !g.is_loop(e)) {
                for v in [Variant::A, Variant::B] {
                    let once = whitehead(&g, e, v).unwrap();
                    assert_eq!(whitehead(&once, e, v).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn k4_moves_create_parallel_edges() {
        // one regrouping doubles two edges, the other rebuilds K4
        let g = k4();
        for e in g.edge_ids() {
            let mut girths = [Variant::A, Variant::B].map(|v| girth(&whitehead(&g, e, v).unwrap()));
            girths.sort_unstable();
            assert_eq!(girths, [2, 3]);
        }
    }

    #[test]
    fn move_set_validation() {
        let g = k4();
        let overlap = MoveSet::new(
            &g,
            vec![
                Move::new(EdgeId(0), Variant::A),
                Move::new(EdgeId(1), Variant::A),
            ],
        );
        assert!(matches!(overlap, Err(Error::Overlap(EdgeId(0), EdgeId(1)))));
        assert!(MoveSet::new(&g, vec![]).is_err());
        let d = dumbbell();
        let looped = d.edge_ids().find(|&e| d.is_loop(e)).unwrap();
        assert!(matches!(
            whitehead(&d, looped, Variant::A),
            Err(Error::LoopMove(_))
        ));
        assert!(matches!(
            whitehead(&g, EdgeId(6), Variant::A),
            Err(Error::Index { .. })
        ));
    }

    #[test]
    fn disjoint_moves_commute() {
        let g = petersen();
        // edges (0,1) and (2,3) on the outer cycle are disjoint
        let e = g.edge_ids().find(|&e| g.endpoints(e) == (0, 1)).unwrap();
        let f = g.edge_ids().find(|&e| g.endpoints(e) == (2, 3)).unwrap();
        let both = apply_moveset(
            &g,
            &MoveSet::new(&g, vec![Move::new(e, Variant::A), Move::new(f, Variant::B)]).unwrap(),
        )
        .unwrap();
        let ef = whitehead(&whitehead(&g, e, Variant::A).unwrap(), f, Variant::B).unwrap();
        let fe = whitehead(&whitehead(&g, f, Variant::B).unwrap(), e, Variant::A).unwrap();
        assert_eq!(both, ef);
        assert_eq!(both, fe);
    }

    #[test]
    fn in_place_conjugation_matches() {
        let g = petersen();
        for e in g.edge_ids() {
            for v in [Variant::A, Variant::B] {
                let mut p = g.pairing().to_vec();
                let [h, _] = g.edge_halves(e);
                let (x, y) = move_transposition(&p, h, v);
                conjugate_transposition(&mut p, x, y);
                assert_eq!(p, whitehead(&g, e, v).unwrap().pairing());
            }
        }
    }
}
