//! Fans of 3-faces at an outer vertex, running from an outer-cycle edge to a
//! hole.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plane::{FaceId, PlaneGraph};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Side {
    /// Clockwise around the center from its outer angle.
    First,
    /// Counter-clockwise.
    Second,
}

/// `sequence[0]` is an outer-cycle neighbor of `center`; consecutive entries
/// bound the 3-faces in `fan_faces` with the center; the last entry lies on
/// `hole`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeripheralNeighborhood {
    pub center: usize,
    pub sequence: Vec<usize>,
    pub side: Side,
    pub hole: FaceId,
    pub fan_faces: Vec<FaceId>,
}

impl PeripheralNeighborhood {
    /// Edges from the center to every vertex of the sequence.
    pub fn fan_edges(&self) -> Vec<(usize, usize)> {
        self.sequence.iter().map(|&u| (self.center, u)).collect()
    }
}

/// Walks the angles at `v` from its outer angle in one direction until a
/// hole is hit. `None` when `v` is not on the outer face, or the walk comes
/// back to the outer face without meeting a hole.
pub(crate) fn fan_from(g: &PlaneGraph, v: usize, side: Side) -> Option<PeripheralNeighborhood> {
    let r = g.rotation(v);
    let d = r.len();
    // The angle from r[i] clockwise to r[i + 1] belongs to this face.
    let angle = |i: usize| g.face_of_dart(r[(i + 1) % d], v).expect("edge");
    let outer = g.outer_face_id();
    let o = (0..d).find(|&i| angle(i) == outer)?;
    let mut sequence = Vec::new();
    let mut fan_faces = Vec::new();
    for step in 0..d {
        let (i, f) = match side {
            Side::First => {
                let i = (o + 1 + step) % d;
                (i, angle(i))
            }
            Side::Second => {
                let i = (o + d - step) % d;
                (i, angle((i + d - 1) % d))
            }
        };
        sequence.push(r[i]);
        if f == outer {
            return None;
        }
        if g.faces()[f].len() >= 4 {
            return Some(PeripheralNeighborhood {
                center: v,
                sequence,
                side,
                hole: f,
                fan_faces,
            });
        }
        fan_faces.push(f);
    }
    None
}

/// Both peripheral neighborhoods of `v`. Applies when `v` lies on the outer
/// cycle and on some hole, and every hole through `v` meets the outer cycle
/// only at `v`.
pub fn peripheral_neighborhoods(
    g: &PlaneGraph,
    v: usize,
) -> Result<(PeripheralNeighborhood, PeripheralNeighborhood)> {
    if v >= g.vertex_count() || !g.is_outer_vertex(v) {
        return Err(Error::NotApplicable(format!(
            "{v} is not on the outer cycle"
        )));
    }
    let outer: BTreeSet<usize> = g.outer_face().vertex_set();
    let mut on_hole = false;
    for f in g
        .inner_faces()
        .filter(|f| f.len() >= 4 && f.contains_vertex(v))
    {
        on_hole = true;
        if f.walk.iter().any(|&w| w != v && outer.contains(&w)) {
            return Err(Error::NotApplicable(format!(
                "a hole through {v} meets the outer cycle elsewhere"
            )));
        }
    }
    if !on_hole {
        return Err(Error::NotApplicable(format!("{v} lies on no hole")));
    }
    let first = fan_from(g, v, Side::First);
    let second = fan_from(g, v, Side::Second);
    match (first, second) {
        (Some(a), Some(b)) if a.sequence.len() >= 2 && b.sequence.len() >= 2 => Ok((a, b)),
        _ => Err(Error::Invariant(format!("fan at {v} is malformed"))),
    }
}
