//! Finding a near-triangulation of order at least `t` in a 2-connected plane
//! graph with few missing edges.
//!
//! The search works on plane subgraphs of the host that are unions of host
//! inner faces. At each step it removes a set of faces touching the outer
//! face and recurses into the edge-connected pieces of what is left:
//!
//! * a hole meeting the outer cycle twice or more is removed on its own;
//! * a hole meeting it once, at `v`, is removed together with the fan of
//!   3-faces between it and the outer cycle at `v`;
//! * otherwise disjoint connectors from the outer cycle to a hole cut off a
//!   triangulated region, which is returned if large enough and removed
//!   with the hole if not.
//!
//! Pieces are visited by decreasing `(order - (t - 1)) / max(1, m)`. Because
//! the removed faces always touch the outer face, no piece encloses a new
//! hole, and every step strictly shrinks `(m, e)`. If this guided search
//! comes back empty on a graph meeting the density hypothesis, an
//! exhaustive disk growth takes over.

mod certify;
mod connectors;
mod fallback;
mod peripheral;

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::bounds::extraction_hypothesis;
use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::holes::{deficit, holes};
use crate::plane::{FaceId, PlaneGraph};

pub use certify::{check_witness, host_digest, NearTriangulationWitness};
pub use connectors::{connectors_are_valid, find_hole_connectors, ConnectorWitness, OuterPath};
pub use peripheral::{peripheral_neighborhoods, PeripheralNeighborhood, Side};

use connectors::{descend, Span};
use peripheral::fan_from;

/// Recursive calls allowed to the guided search.
const GUIDED_CALLS: usize = 20_000;
/// Expansions allowed to the disk growth.
const FALLBACK_NODES: u64 = 5_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    Guided,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Extraction {
    Found {
        witness: NearTriangulationWitness,
        route: Route,
    },
    /// No witness. When `hypothesis_holds` is true this is a defect.
    NotFound { hypothesis_holds: bool },
}

impl Extraction {
    pub fn witness(&self) -> Option<&NearTriangulationWitness> {
        match self {
            Extraction::Found { witness, .. } => Some(witness),
            Extraction::NotFound { .. } => None,
        }
    }
}

/// A piece of the host with its id map.
struct Piece {
    graph: PlaneGraph,
    to_host: Vec<usize>,
    m: usize,
}

impl Piece {
    fn new(graph: PlaneGraph, to_host: Vec<usize>) -> Self {
        let m = deficit(&graph);
        Piece { graph, to_host, m }
    }

    fn key(&self) -> Vec<(usize, usize)> {
        let mut k: Vec<(usize, usize)> = self
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (self.to_host[a], self.to_host[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        k.sort_unstable();
        k
    }
}

struct Search {
    t: usize,
    digest: String,
    failed: HashSet<Vec<(usize, usize)>>,
    calls: usize,
}

enum Step {
    Done(NearTriangulationWitness),
    Try(Vec<Piece>),
}

impl Search {
    fn witness(&self, p: &PlaneGraph, to_host: &[usize]) -> NearTriangulationWitness {
        NearTriangulationWitness::from_sub(self.digest.clone(), p, to_host)
    }

    /// Edge-connected pieces of the inner faces not in `removed`, of order at
    /// least `t`, best ratio first.
    fn split(&self, piece: &Piece, removed: &BTreeSet<FaceId>) -> Result<Vec<Piece>> {
        let g = &piece.graph;
        let nf = g.face_count();
        let live = |f: FaceId| !g.faces()[f].is_outer && !removed.contains(&f);
        let mut parent: Vec<usize> = (0..nf).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in (0..nf).filter(|&f| live(f)) {
            for (a, b) in g.faces()[f].darts() {
                let h = g.face_of_dart(b, a).expect("twin");
                if live(h) {
                    let (x, y) = (root(&mut parent, f), root(&mut parent, h));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut groups: Vec<(usize, BTreeSet<(usize, usize)>)> = Vec::new();
        for f in (0..nf).filter(|&f| live(f)) {
            let r = root(&mut parent, f);
            let idx = match groups.iter().position(|(k, _)| *k == r) {
                Some(i) => i,
                None => {
                    groups.push((r, BTreeSet::new()));
                    groups.len() - 1
                }
            };
            for (a, b) in g.faces()[f].darts() {
                groups[idx].1.insert((a.min(b), a.max(b)));
            }
        }
        let mut out = Vec::new();
        for (_, edges) in groups {
            let sub = g.edge_subgraph(&edges)?;
            if sub.graph.vertex_count() < self.t {
                continue;
            }
            let to_host = sub.compose(&piece.to_host);
            let child = Piece::new(sub.graph, to_host);
            let shrinks = (child.m, child.graph.edge_count()) < (piece.m, g.edge_count());
            if !shrinks {
                return Err(Error::Invariant(
                    "a recursive step did not shrink (m, e)".into(),
                ));
            }
            out.push(child);
        }
        let t = self.t as i64;
        let score = |p: &Piece| (p.graph.vertex_count() as i64 - (t - 1), p.m.max(1) as i64);
        out.sort_by(|a, b| {
            let ((an, ad), (bn, bd)) = (score(a), score(b));
            (bn * ad).cmp(&(an * bd))
        });
        Ok(out)
    }

    fn steps(&self, piece: &Piece) -> Result<Vec<Step>> {
        let g = &piece.graph;
        let outer: BTreeSet<usize> = g.outer_face().vertex_set();
        let hs: Vec<(FaceId, usize)> = holes(g)
            .into_iter()
            .map(|f| (f.id, f.walk.iter().filter(|v| outer.contains(v)).count()))
            .collect();

        // A hole meets the outer cycle at least twice.
        let wide: Vec<FaceId> = hs.iter().filter(|h| h.1 >= 2).map(|h| h.0).collect();
        if !wide.is_empty() {
            return wide
                .into_iter()
                .map(|f| Ok(Step::Try(self.split(piece, &BTreeSet::from([f]))?)))
                .collect();
        }

        // Holes meeting it once: remove a fan with its hole, largest
        // resulting block first.
        let centers: BTreeSet<usize> = hs
            .iter()
            .filter(|h| h.1 == 1)
            .flat_map(|h| {
                g.faces()[h.0]
                    .walk
                    .iter()
                    .copied()
                    .filter(|v| outer.contains(v))
            })
            .collect();
        if !centers.is_empty() {
            let mut options: Vec<(usize, Vec<Piece>)> = Vec::new();
            for &v in &centers {
                for side in [Side::First, Side::Second] {
                    let Some(fan) = fan_from(g, v, side) else {
                        continue;
                    };
                    let mut removed: BTreeSet<FaceId> = fan.fan_faces.iter().copied().collect();
                    removed.insert(fan.hole);
                    let pieces = self.split(piece, &removed)?;
                    let largest = pieces
                        .iter()
                        .map(|p| p.graph.vertex_count())
                        .max()
                        .unwrap_or(0);
                    options.push((largest, pieces));
                }
            }
            options.sort_by_key(|o| std::cmp::Reverse(o.0));
            return Ok(options.into_iter().map(|(_, p)| Step::Try(p)).collect());
        }

        // No hole meets the outer cycle: cut off a triangulated region.
        let span = Span {
            verts: g.outer_cycle(),
            closed: true,
        };
        let mut out = Vec::new();
        for (f, _) in hs {
            let Some(d) = descend(g, &span, f) else {
                continue;
            };
            let region = g.region(&d.faces)?;
            if region.graph.vertex_count() >= self.t {
                let to_host = region.compose(&piece.to_host);
                out.push(Step::Done(self.witness(&region.graph, &to_host)));
                break;
            }
            let mut removed: BTreeSet<FaceId> = d.faces.iter().copied().collect();
            removed.insert(d.witness.hole_id);
            out.push(Step::Try(self.split(piece, &removed)?));
        }
        Ok(out)
    }

    fn solve(&mut self, piece: &Piece) -> Result<Option<NearTriangulationWitness>> {
        self.calls += 1;
        if self.calls > GUIDED_CALLS || piece.graph.vertex_count() < self.t {
            return Ok(None);
        }
        if piece.m == 0 {
            return Ok(Some(self.witness(&piece.graph, &piece.to_host)));
        }
        let key = piece.key();
        if self.failed.contains(&key) {
            return Ok(None);
        }
        for step in self.steps(piece)? {
            match step {
                Step::Done(w) => return Ok(Some(w)),
                Step::Try(children) => {
                    for child in &children {
                        if let Some(w) = self.solve(child)? {
                            return Ok(Some(w));
                        }
                    }
                }
            }
        }
        self.failed.insert(key);
        Ok(None)
    }
}

/// Searches `g` for a near-triangulation subgraph with at least `t`
/// vertices. A witness is always returned when `m(G) (3t - 7) < n - (t - 1)`;
/// every returned witness has passed [`check_witness`].
pub fn extract_near_triangulation(g: &PlaneGraph, t: usize) -> Result<Extraction> {
    if t < 4 {
        return Err(Error::BadT(t));
    }
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let n = g.vertex_count();
    let m = deficit(g);
    let hypothesis_holds = n >= t && extraction_hypothesis(m, n, t);
    if n < t {
        return Ok(Extraction::NotFound { hypothesis_holds });
    }
    let digest = host_digest(g);
    let mut search = Search {
        t,
        digest: digest.clone(),
        failed: HashSet::new(),
        calls: 0,
    };
    let root = Piece::new(g.clone(), (0..n).collect());
    let mut found = search.solve(&root)?.map(|w| (w, Route::Guided));
    if found.is_none() && hypothesis_holds {
        found = fallback::grow_disk(g, t, FALLBACK_NODES)
            .map(|faces| -> Result<_> {
                let sub = g.region(&faces)?;
                Ok((
                    NearTriangulationWitness::from_sub(digest, &sub.graph, &sub.to_parent),
                    Route::Fallback,
                ))
            })
            .transpose()?;
    }
    match found {
        Some((witness, route)) => {
            if !check_witness(g, &witness, t) {
                return Err(Error::Invariant(
                    "extracted subgraph failed certification".into(),
                ));
            }
            Ok(Extraction::Found { witness, route })
        }
        None => Ok(Extraction::NotFound { hypothesis_holds }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::subgraph_bounded_by_cycle;
    use crate::generators::random_near_triangulation;
    use crate::holes::is_near_triangulation;
    use crate::plane::fixtures::*;

    fn found(g: &PlaneGraph, t: usize) -> (NearTriangulationWitness, Route) {
        match extract_near_triangulation(g, t).unwrap() {
            Extraction::Found { witness, route } => (witness, route),
            other => panic!("{other:?}"),
        }
    }

    /// A random near-triangulation with one edge between two inner faces
    /// removed.
    fn one_missing(n: usize, seed: u64) -> PlaneGraph {
        let g = random_near_triangulation(n, seed).unwrap();
        let outer = g.outer_face_id();
        let (a, b) = g
            .edges()
            .into_iter()
            .find(|&(a, b)| {
                g.face_of_dart(a, b) != Some(outer) && g.face_of_dart(b, a) != Some(outer)
            })
            .unwrap();
        g.without_edges(&[(a, b)]).unwrap()
    }

    #[test]
    fn near_triangulation_is_its_own_witness() {
        let g = random_near_triangulation(20, 3).unwrap();
        let (w, route) = found(&g, 4);
        assert_eq!(route, Route::Guided);
        assert_eq!(w.order, 20);
        assert_eq!(w.edges, g.edges());
        let (w, _) = found(&k4(), 4);
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hexagon_has_nothing() {
        assert_eq!(
            extract_near_triangulation(&cycle(6), 4).unwrap(),
            Extraction::NotFound {
                hypothesis_holds: false
            }
        );
    }

    #[test]
    fn one_missing_edge() {
        for seed in 0..20 {
            let g = one_missing(20, seed);
            assert_eq!(deficit(&g), 1);
            let (w, _) = found(&g, 4);
            assert!(w.order >= 4);
            assert!(check_witness(&g, &w, 4));
        }
    }

    #[test]
    fn hole_away_from_the_outer_cycle() {
        let g = hexagon_pentagon();
        let (w, route) = found(&g, 4);
        assert_eq!(route, Route::Guided);
        assert!(w.order >= 4);
    }

    #[test]
    fn errors() {
        assert_eq!(extract_near_triangulation(&k4(), 3), Err(Error::BadT(3)));
        assert_eq!(
            extract_near_triangulation(&bowtie(), 4),
            Err(Error::NotTwoConnected)
        );
        assert_eq!(
            extract_near_triangulation(&k4(), 5).unwrap(),
            Extraction::NotFound {
                hypothesis_holds: false
            }
        );
    }

    #[test]
    fn checker_rejects_bad_witnesses() {
        let g = random_near_triangulation(12, 1).unwrap();
        let (w, _) = found(&g, 4);
        assert!(check_witness(&g, &w, 12));
        assert!(!check_witness(&g, &w, 13));

        let p = pentagon_with_chord();
        let whole = NearTriangulationWitness::from_sub(host_digest(&p), &p, &[0, 1, 2, 3, 4]);
        assert!(!check_witness(&p, &whole, 4));

        let mut other = w.clone();
        other.host_sha256 = host_digest(&k4());
        assert!(!check_witness(&g, &other, 4));

        let mut short = w.clone();
        short.boundary.vertices.pop();
        assert!(!check_witness(&g, &short, 4));
    }

    #[test]
    fn certificate_round_trip() {
        let g = one_missing(16, 2);
        let (w, _) = found(&g, 5);
        let text = w.to_certificate(5);
        let (back, t) = NearTriangulationWitness::from_certificate(&text).unwrap();
        assert_eq!((back, t), (w, 5));
        assert!(matches!(
            NearTriangulationWitness::from_certificate("near-triangulation\nt x\nend\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn peripheral_example() {
        let g = single_touch();
        let (a, b) = peripheral_neighborhoods(&g, 0).unwrap();
        let mut seqs = [a.sequence.clone(), b.sequence.clone()];
        seqs.sort();
        assert_eq!(seqs, [vec![1, 2], vec![4, 3]]);
        assert_eq!(a.hole, b.hole);
        assert_eq!(g.faces()[a.hole].vertex_set(), [0, 2, 3, 6].into());
        assert!(matches!(
            peripheral_neighborhoods(&g, 1),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            peripheral_neighborhoods(&g, 6),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn connectors_around_inner_hole() {
        let g = hexagon_pentagon();
        let hole = g.inner_faces().find(|f| f.len() == 4).unwrap().id;
        let w = find_hole_connectors(&g, &OuterPath::Whole, hole).unwrap();
        assert!(connectors_are_valid(&g, &OuterPath::Whole, &w));
        assert!(w.l1.len() >= 2 && w.l2.len() >= 2);
        let boundary = w.region_boundary.clone().unwrap();
        let region = subgraph_bounded_by_cycle(&g, &boundary).unwrap();
        assert!(is_near_triangulation(&region.graph));
    }

    #[test]
    fn degenerate_connectors() {
        let g = pentagon_with_chord();
        let hole = g.inner_faces().find(|f| f.len() == 4).unwrap();
        let outer = g.outer_cycle();
        let on: Vec<usize> = outer
            .iter()
            .copied()
            .filter(|v| hole.contains_vertex(*v))
            .collect();
        let p = OuterPath::Path(on[..2].to_vec());
        let w = find_hole_connectors(&g, &p, hole.id).unwrap();
        assert!(connectors_are_valid(&g, &p, &w));
        assert_eq!((w.l1.len(), w.l2.len()), (1, 1));
        assert_eq!((w.x1, w.x2), (w.y1, w.y2));
        assert_eq!(
            find_hole_connectors(&k4(), &OuterPath::Whole, 0),
            Err(Error::IsNearTriangulation)
        );
        assert_eq!(
            find_hole_connectors(&g, &OuterPath::Whole, g.outer_face_id()),
            Err(Error::NoHole)
        );
    }
}
