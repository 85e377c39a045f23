//! Vertex-disjoint connectors from a stretch of the outer cycle to a hole,
//! and the descent that shrinks the region they cut off until it is
//! triangulated.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::holes::is_near_triangulation;
use crate::plane::{CycleRef, FaceId, PlaneGraph};

/// Which part of the outer cycle the connectors start from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuterPath {
    Whole,
    /// Consecutive outer-cycle vertices, in either direction.
    Path(Vec<usize>),
}

/// Two disjoint paths `l1 = x1..y1` and `l2 = x2..y2` from the outer path to
/// the hole `hole_id`. A path of one vertex means `x_i = y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectorWitness {
    pub hole_id: FaceId,
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    pub l1: Vec<usize>,
    pub l2: Vec<usize>,
    /// Boundary of the triangulated region closed off by the connectors,
    /// the hole and the outer path, when the descent reached one.
    pub region_boundary: Option<CycleRef>,
}

/// An ordered stretch of the outer cycle. When `closed`, the last vertex is
/// joined back to the first.
#[derive(Clone, Debug)]
pub(crate) struct Span {
    pub verts: Vec<usize>,
    pub closed: bool,
}

impl Span {
    fn index(&self, v: usize) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }

    /// Stretches from `from` to `to`, in the span's own direction.
    fn arcs(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        let (Some(i), Some(j)) = (self.index(from), self.index(to)) else {
            return Vec::new();
        };
        let k = self.verts.len();
        if !self.closed {
            let (a, b) = (i.min(j), i.max(j));
            let mut seg = self.verts[a..=b].to_vec();
            if i > j {
                seg.reverse();
            }
            return vec![seg];
        }
        let fwd: Vec<usize> = (0..k)
            .map(|s| self.verts[(i + s) % k])
            .take((j + k - i) % k + 1)
            .collect();
        let bwd: Vec<usize> = (0..k)
            .map(|s| self.verts[(i + k - s) % k])
            .take((i + k - j) % k + 1)
            .collect();
        vec![fwd, bwd]
    }
}

fn resolve_span(g: &PlaneGraph, p: &OuterPath) -> Result<Span> {
    let outer = g.outer_cycle();
    match p {
        OuterPath::Whole => Ok(Span {
            verts: outer,
            closed: true,
        }),
        OuterPath::Path(vs) => {
            let ok = vs.len() >= 2
                && vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
                && vs
                    .iter()
                    .all(|&v| v < g.vertex_count() && g.is_outer_vertex(v))
                && vs.windows(2).all(|w| {
                    g.has_edge(w[0], w[1])
                        && (g.face_of_dart(w[0], w[1]) == Some(g.outer_face_id())
                            || g.face_of_dart(w[1], w[0]) == Some(g.outer_face_id()))
                });
            if !ok {
                return Err(Error::NotApplicable(
                    "the path must run along the outer cycle".into(),
                ));
            }
            Ok(Span {
                verts: vs.clone(),
                closed: false,
            })
        }
    }
}

/// Unit-capacity flow network with split vertices.
struct Flow {
    to: Vec<usize>,
    cap: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow {
            to: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, a: usize, b: usize) {
        self.out[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(1);
        self.out[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.out[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut y = t;
        while y != s {
            let e = via[y];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            y = self.to[e ^ 1];
        }
        true
    }

    /// Original arcs leaving `x` that carry flow.
    fn used(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[x]
            .iter()
            .copied()
            .filter(|&e| e % 2 == 0 && self.cap[e] == 0)
            .map(|e| self.to[e])
    }
}

/// Two vertex-disjoint paths from `sources` to `sinks` over `edges`.
fn two_disjoint_paths(
    g: &PlaneGraph,
    edges: &BTreeSet<(usize, usize)>,
    sources: &[bool],
    sinks: &[bool],
) -> Option<[Vec<usize>; 2]> {
    let n = g.vertex_count();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut flow = Flow::new(2 * n + 2);
    for v in 0..n {
        if sources[v] {
            flow.arc(s, 2 * v);
        }
        flow.arc(2 * v, 2 * v + 1);
        if sinks[v] {
            flow.arc(2 * v + 1, t);
        }
    }
    for &(a, b) in edges {
        flow.arc(2 * a + 1, 2 * b);
        flow.arc(2 * b + 1, 2 * a);
    }
    if !(flow.augment(s, t) && flow.augment(s, t)) {
        return None;
    }
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for start in flow.used(s).collect::<Vec<_>>() {
        let mut path = vec![start / 2];
        let mut x = start + 1;
        loop {
            let next = flow.used(x).next().expect("flow is conserved");
            if next == t {
                break;
            }
            path.push(next / 2);
            x = next + 1;
        }
        paths.push(path);
    }
    let mut it = paths.into_iter();
    Some([it.next()?, it.next()?])
}

/// Cuts a source-to-sink path down to its last outer-path vertex and the
/// first hole vertex after it.
fn trim(path: &[usize], on_span: &[bool], on_hole: &[bool]) -> Vec<usize> {
    let x = path
        .iter()
        .rposition(|&v| on_span[v])
        .expect("starts on the span");
    let y = x + path[x..]
        .iter()
        .position(|&v| on_hole[v])
        .expect("ends on the hole");
    path[x..=y].to_vec()
}

fn face_edges(g: &PlaneGraph, faces: &[FaceId]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &f in faces {
        for (a, b) in g.faces()[f].darts() {
            out.insert((a.min(b), a.max(b)));
        }
    }
    out
}

/// Connectors inside the region spanned by `edges`, labelled so that `x2`
/// comes before `x1` along the span.
fn connect(
    g: &PlaneGraph,
    edges: &BTreeSet<(usize, usize)>,
    span: &Span,
    hole: FaceId,
) -> Option<ConnectorWitness> {
    let n = g.vertex_count();
    let mut on_span = vec![false; n];
    for &v in &span.verts {
        on_span[v] = true;
    }
    let mut on_hole = vec![false; n];
    for &v in &g.faces()[hole].walk {
        on_hole[v] = true;
    }
    let [p, q] = two_disjoint_paths(g, edges, &on_span, &on_hole)?;
    let (mut l1, mut l2) = (trim(&p, &on_span, &on_hole), trim(&q, &on_span, &on_hole));
    if span.index(l1[0]) < span.index(l2[0]) {
        std::mem::swap(&mut l1, &mut l2);
    }
    Some(ConnectorWitness {
        hole_id: hole,
        x1: l1[0],
        x2: l2[0],
        y1: *l1.last().expect("nonempty"),
        y2: *l2.last().expect("nonempty"),
        l1,
        l2,
        region_boundary: None,
    })
}

/// Closes `x1 L1 y1 (hole arc) y2 L2 x2 (span arc) x1` in every admissible
/// way and keeps the cycle whose inside avoids the hole and has the fewest
/// edges. Returns the cycle, its inside, and the span arc used.
fn close(
    g: &PlaneGraph,
    span: &Span,
    w: &ConnectorWitness,
) -> Option<(CycleRef, Vec<FaceId>, Vec<usize>)> {
    let walk = &g.faces()[w.hole_id].walk;
    let k = walk.len();
    let i = walk.iter().position(|&v| v == w.y1)?;
    let j = walk.iter().position(|&v| v == w.y2)?;
    let hole_arcs = [
        (0..k)
            .map(|s| walk[(i + s) % k])
            .take((j + k - i) % k + 1)
            .collect::<Vec<_>>(),
        (0..k)
            .map(|s| walk[(i + k - s) % k])
            .take((i + k - j) % k + 1)
            .collect(),
    ];
    let mut best: Option<(usize, CycleRef, Vec<FaceId>, Vec<usize>)> = None;
    for span_arc in span.arcs(w.x2, w.x1) {
        for hole_arc in &hole_arcs {
            let mut cyc = w.l1.clone();
            cyc.extend(&hole_arc[1..]);
            cyc.extend(w.l2.iter().rev().skip(1));
            cyc.extend(&span_arc[1..span_arc.len() - 1]);
            let cycle = CycleRef::new(cyc);
            let Ok(inside) = g.interior_faces(&cycle) else {
                continue;
            };
            if inside.contains(&w.hole_id) {
                continue;
            }
            let size = face_edges(g, &inside).len();
            if best.as_ref().is_none_or(|b| size < b.0) {
                best = Some((size, cycle, inside, span_arc.clone()));
            }
        }
    }
    best.map(|(_, c, f, a)| (c, f, a))
}

/// Result of the descent: the final connectors, the triangulated region
/// they close off and the hole they end on.
#[derive(Clone, Debug)]
pub(crate) struct Descent {
    pub witness: ConnectorWitness,
    pub faces: Vec<FaceId>,
}

/// Starting from `hole`, repeatedly re-routes the connectors into a hole of
/// the current region until the region has no hole. Each step strictly
/// shrinks the region, so this terminates.
pub(crate) fn descend(g: &PlaneGraph, span: &Span, hole: FaceId) -> Option<Descent> {
    let mut edges: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    let mut span = span.clone();
    let mut hole = hole;
    loop {
        let mut w = connect(g, &edges, &span, hole)?;
        let (cycle, inside, arc) = close(g, &span, &w)?;
        let next_hole = inside
            .iter()
            .map(|&f| &g.faces()[f])
            .filter(|f| f.len() >= 4)
            .min_by_key(|f| (f.len(), f.min_vertex(), f.id))
            .map(|f| f.id);
        let Some(next_hole) = next_hole else {
            w.region_boundary = Some(cycle);
            return Some(Descent {
                witness: w,
                faces: inside,
            });
        };
        // On a path span the arc from x2 to x1 keeps the span's direction.
        span = Span {
            verts: arc,
            closed: false,
        };
        edges = face_edges(g, &inside);
        hole = next_hole;
    }
}

/// Two disjoint connectors from `p` to the hole `f`. When no hole meets the
/// outer cycle in two or more vertices, the connectors are re-routed until
/// the region they close off is a near-triangulation, and its boundary is
/// reported; the hole may change along the way.
pub fn find_hole_connectors(g: &PlaneGraph, p: &OuterPath, f: FaceId) -> Result<ConnectorWitness> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    if is_near_triangulation(g) {
        return Err(Error::IsNearTriangulation);
    }
    let face = g.face(f).ok_or(Error::NoHole)?;
    if face.is_outer || face.len() < 4 {
        return Err(Error::NoHole);
    }
    let span = resolve_span(g, p)?;
    let outer: BTreeSet<usize> = g.outer_face().vertex_set();
    let touching = g
        .inner_faces()
        .filter(|h| h.len() >= 4)
        .any(|h| h.walk.iter().filter(|v| outer.contains(v)).count() >= 2);
    if !touching {
        if let Some(d) = descend(g, &span, f) {
            return Ok(d.witness);
        }
    }
    let edges: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    connect(g, &edges, &span, f)
        .ok_or_else(|| Error::Invariant("no two disjoint connectors".into()))
}

/// Checks the connector conditions directly: each `l_i` is a path of `g`
/// from `x_i` to `y_i`, the two share no vertex, `l_i` meets `p` only in
/// `x_i` and the hole only in `y_i`, and `x2` precedes `x1` along `p`.
pub fn connectors_are_valid(g: &PlaneGraph, p: &OuterPath, w: &ConnectorWitness) -> bool {
    let Ok(span) = resolve_span(g, p) else {
        return false;
    };
    let Some(face) = g.face(w.hole_id) else {
        return false;
    };
    let hole = face.vertex_set();
    let path_ok = |l: &[usize], x: usize, y: usize| {
        !l.is_empty()
            && l[0] == x
            && l[l.len() - 1] == y
            && l.iter().collect::<BTreeSet<_>>().len() == l.len()
            && l.windows(2).all(|e| g.has_edge(e[0], e[1]))
            && l.iter().filter(|v| span.verts.contains(v)).eq([&x])
            && l.iter().filter(|v| hole.contains(v)).eq([&y])
    };
    let ordered = span.closed || span.index(w.x2) < span.index(w.x1);
    path_ok(&w.l1, w.x1, w.y1)
        && path_ok(&w.l2, w.x2, w.y2)
        && w.l1.iter().all(|v| !w.l2.contains(v))
        && ordered
}
