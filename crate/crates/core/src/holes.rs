//! Holes, missing edges and joinable edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::connectivity::{blocks_of, is_two_connected};
use crate::error::{Error, Result};
use crate::plane::{Face, FaceId, PlaneGraph};

/// Holes of a graph with their deficits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleReport {
    pub holes: Vec<FaceId>,
    pub missing_edge_count: usize,
    pub per_hole_deficit: BTreeMap<FaceId, usize>,
}

/// A non-edge whose endpoints share a face.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct JoinableEdge {
    pub endpoints: (usize, usize),
    pub face_id: FaceId,
}

/// Inner faces of length at least 4, ordered by length then smallest vertex.
pub fn holes(g: &PlaneGraph) -> Vec<&Face> {
    let mut out: Vec<&Face> = g.inner_faces().filter(|f| f.len() >= 4).collect();
    out.sort_by_key(|f| (f.len(), f.min_vertex(), f.id));
    out
}

pub fn hole_report(g: &PlaneGraph) -> HoleReport {
    let hs = holes(g);
    let per_hole_deficit: BTreeMap<FaceId, usize> =
        hs.iter().map(|f| (f.id, f.len() - 3)).collect();
    HoleReport {
        holes: hs.iter().map(|f| f.id).collect(),
        missing_edge_count: per_hole_deficit.values().sum(),
        per_hole_deficit,
    }
}

/// Number of chords needed to turn every hole into triangles.
pub fn missing_edge_count(g: &PlaneGraph) -> Result<usize> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    Ok(deficit(g))
}

/// The same sum without the connectivity check.
pub(crate) fn deficit(g: &PlaneGraph) -> usize {
    g.inner_faces().map(|f| f.len().saturating_sub(3)).sum()
}

pub fn is_near_triangulation(g: &PlaneGraph) -> bool {
    is_two_connected(g) && g.inner_faces().all(|f| f.len() == 3)
}

/// A chord together with a dart whose face receives it.
type PlannedChord = ((usize, usize), (usize, usize));

fn plan_chords(g: &PlaneGraph) -> Vec<PlannedChord> {
    let mut present: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut plan = Vec::new();
    for f in holes(g) {
        let k = f.len();
        let apex = (0..k).min_by_key(|&i| f.walk[i]).expect("nonempty");
        let w: Vec<usize> = (0..k).map(|i| f.walk[(apex + i) % k]).collect();
        let fan_ok = (2..k - 1).all(|i| !present.contains(&key(w[0], w[i])));
        if fan_ok {
            for i in 2..k - 1 {
                present.insert(key(w[0], w[i]));
                plan.push(((w[0], w[i]), (w[i - 1], w[i])));
            }
            continue;
        }
        // Some fan chord already runs outside the hole; cut ears instead.
        let mut p = w;
        while p.len() > 3 {
            let m = p.len();
            let i = (0..m)
                .find(|&i| !present.contains(&key(p[i], p[(i + 2) % m])))
                .expect("a face of length >= 4 always has a free ear");
            let (a, b, c) = (p[i], p[(i + 1) % m], p[(i + 2) % m]);
            present.insert(key(a, c));
            plan.push(((a, c), (a, b)));
            p.remove((i + 1) % m);
        }
    }
    plan
}

/// Exactly `m(G)` chords whose insertion leaves no hole. Each hole is fanned
/// from its smallest vertex unless a fan chord is already an edge of the
/// graph, in which case ears are cut.
pub fn triangulating_chords(g: &PlaneGraph) -> Result<Vec<(usize, usize)>> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    Ok(plan_chords(g).into_iter().map(|(c, _)| c).collect())
}

/// Inserts [`triangulating_chords`] into the embedding.
pub fn triangulate(g: &PlaneGraph) -> Result<PlaneGraph> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let mut h = g.clone();
    for ((u, w), (a, b)) in plan_chords(g) {
        let f = h
            .face_of_dart(a, b)
            .ok_or(Error::Invariant("dart vanished".into()))?;
        h = h.with_edge_in_face(f, u, w)?;
    }
    Ok(h)
}

/// Non-adjacent vertex pairs on the boundary of face `f`.
pub fn joinable_edges_of_face(g: &PlaneGraph, f: FaceId) -> Result<Vec<JoinableEdge>> {
    let face = g.face(f).ok_or(Error::NoSuchFace(f))?;
    let vs: Vec<usize> = face.vertex_set().into_iter().collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if !g.has_edge(a, b) {
                out.push(JoinableEdge {
                    endpoints: (a, b),
                    face_id: f,
                });
            }
        }
    }
    Ok(out)
}

/// Deletes outer vertex `v` and returns the block count `r` of `G - v`
/// together with joinable edges of `G` lying in the outer face of `G - v`:
/// around each cut vertex of `G - v`, the neighbor pairs that close an angle
/// of `G` between two different blocks.
pub fn joinable_after_deletion(g: &PlaneGraph, v: usize) -> Result<(usize, Vec<JoinableEdge>)> {
    if v >= g.vertex_count() || !g.is_outer_vertex(v) {
        return Err(Error::VertexNotOnOuterCycle(v));
    }
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let n = g.vertex_count();
    let mut removed = vec![false; n];
    removed[v] = true;
    let dec = blocks_of(g.adjacency(), &removed);
    let block_of_edge = |a: usize, b: usize| {
        dec.blocks
            .iter()
            .position(|blk| blk.binary_search(&a).is_ok() && blk.binary_search(&b).is_ok())
            .expect("every edge lies in a block")
    };
    let mut out = BTreeSet::new();
    for &c in &dec.cut_vertices {
        let rot = g.rotation(c);
        let d = rot.len();
        for i in 0..d {
            let (p, q) = (rot[i], rot[(i + 1) % d]);
            if p == v || q == v || block_of_edge(c, p) == block_of_edge(c, q) {
                continue;
            }
            let face_id = g.face_of_dart(q, c).expect("edge");
            out.insert(JoinableEdge {
                endpoints: (p.min(q), p.max(q)),
                face_id,
            });
        }
    }
    Ok((dec.block_count(), out.into_iter().collect()))
}

/// Checks a joinable edge against the face data of `g`.
pub fn is_joinable(g: &PlaneGraph, e: &JoinableEdge) -> bool {
    let (a, b) = e.endpoints;
    a != b
        && !g.has_edge(a, b)
        && g.face(e.face_id)
            .is_some_and(|f| f.contains_vertex(a) && f.contains_vertex(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::fixtures::*;

    #[test]
    fn hole_examples() {
        assert!(holes(&k4()).is_empty());
        let g = pentagon_with_chord();
        let hs = holes(&g);
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].len(), 4);
        assert_eq!(holes(&cycle(6))[0].len(), 6);
    }

    #[test]
    fn missing_edge_examples() {
        assert_eq!(missing_edge_count(&k4()), Ok(0));
        assert_eq!(missing_edge_count(&cycle(6)), Ok(3));
        assert_eq!(missing_edge_count(&pentagon_with_chord()), Ok(1));
        assert_eq!(missing_edge_count(&bowtie()), Err(Error::NotTwoConnected));
        let r = hole_report(&cycle(6));
        assert_eq!(r.missing_edge_count, 3);
        assert_eq!(
            r.per_hole_deficit.values().copied().collect::<Vec<_>>(),
            vec![3]
        );
    }

    #[test]
    fn hexagon_fan() {
        let g = cycle(6);
        let mut chords = triangulating_chords(&g).unwrap();
        chords.sort_unstable();
        assert_eq!(chords, vec![(0, 2), (0, 3), (0, 4)]);
        let t = triangulate(&g).unwrap();
        assert!(is_near_triangulation(&t));
        assert_eq!(t.outer_face().len(), 6);
    }

    #[test]
    fn pentagon_chord_triangulates() {
        let g = pentagon_with_chord();
        let chords = triangulating_chords(&g).unwrap();
        assert_eq!(chords.len(), 1);
        assert_eq!(chords[0].0, 0);
        assert!(is_near_triangulation(&triangulate(&g).unwrap()));
    }

    #[test]
    fn near_triangulation_examples() {
        assert!(is_near_triangulation(&k4()));
        assert!(!is_near_triangulation(&cycle(6)));
        assert!(!is_near_triangulation(&bowtie()));
    }

    #[test]
    fn joinable_edges_of_faces() {
        let g = cycle(5);
        let f = g.inner_faces().next().unwrap().id;
        assert_eq!(joinable_edges_of_face(&g, f).unwrap().len(), 5);
        let g = cycle(4);
        let f = g.inner_faces().next().unwrap().id;
        let ends: Vec<_> = joinable_edges_of_face(&g, f)
            .unwrap()
            .iter()
            .map(|e| e.endpoints)
            .collect();
        assert_eq!(ends, vec![(0, 2), (1, 3)]);
        let g = k4();
        assert!(joinable_edges_of_face(&g, 0).unwrap().is_empty());
    }

    #[test]
    fn joinable_after_deleting_chord_endpoint() {
        // 4-cycle 0-1-2-3 with chord 0-2; deleting 0 leaves the path 1-2-3.
        let g = PlaneGraph::new(
            vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]],
            Some((0, 3)),
        )
        .unwrap();
        assert_eq!(g.outer_face().len(), 4);
        let (r, ws) = joinable_after_deletion(&g, 0).unwrap();
        assert_eq!(r, 2);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].endpoints, (1, 3));
        assert!(is_joinable(&g, &ws[0]));
    }

    #[test]
    fn joinable_after_deletion_trivial_cases() {
        let (r, _) = joinable_after_deletion(&k4(), 0).unwrap();
        assert_eq!(r, 1);
        let w = wheel(5);
        let (r, _) = joinable_after_deletion(&w, 1).unwrap();
        assert_eq!(r, 1);
        assert_eq!(
            joinable_after_deletion(&w, 0),
            Err(Error::VertexNotOnOuterCycle(0))
        );
    }
}
