//! Combinatorial embeddings.
//!
//! A [`PlaneGraph`] is a rotation system (for every vertex, its neighbors in
//! clockwise order) together with a designated outer face. Faces are the
//! orbits of the map `(u, v) -> (v, w)` where `w` is the neighbor immediately
//! before `u` in the clockwise rotation of `v`. With that rule every face lies
//! to the right of its darts, so inner faces are walked clockwise and the
//! outer face counter-clockwise.
//!
//! Vertices are dense `0..n` indices in memory. The file formats in
//! [`crate::io`] are 1-based.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub type FaceId = usize;

/// One face of a [`PlaneGraph`]: its boundary walk as the tails of
/// consecutive darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub walk: Vec<usize>,
    pub is_outer: bool,
}

impl Face {
    /// Number of dart slots in the boundary walk.
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.walk.contains(&v)
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.walk.iter().copied().collect()
    }

    /// Smallest vertex on the boundary.
    pub fn min_vertex(&self) -> usize {
        self.walk.iter().copied().min().unwrap_or(usize::MAX)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
}

/// A cycle of a host graph, given by its vertices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleRef {
    pub vertices: Vec<usize>,
}

impl CycleRef {
    pub fn new(vertices: Vec<usize>) -> Self {
        CycleRef { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn reversed(&self) -> CycleRef {
        let mut v = self.vertices.clone();
        v.reverse();
        CycleRef { vertices: v }
    }
}

/// A plane subgraph together with the map from its vertex ids to the ids of
/// the graph it was cut from.
#[derive(Clone, Debug)]
pub struct SubPlane {
    pub graph: PlaneGraph,
    pub to_parent: Vec<usize>,
}

impl SubPlane {
    pub fn parent_edges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (self.to_parent[a], self.to_parent[b]);
                (x.min(y), x.max(y))
            })
            .collect()
    }

    /// Compose with the parent's own map, giving ids in the grandparent.
    pub fn compose(&self, parent_to_host: &[usize]) -> Vec<usize> {
        self.to_parent.iter().map(|&p| parent_to_host[p]).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    rot: Vec<Vec<usize>>,
    offset: Vec<usize>,
    head: Vec<usize>,
    tail: Vec<usize>,
    twin: Vec<usize>,
    dart_face: Vec<FaceId>,
    faces: Vec<Face>,
    outer: FaceId,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rot == other.rot && self.faces[self.outer].walk == other.faces[other.outer].walk
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds a plane graph from clockwise rotations (0-based ids).
    ///
    /// The outer face is the face containing the dart `outer_hint`, or when
    /// no hint is given, the face whose sorted dart list is lexicographically
    /// smallest.
    pub fn new(rotations: Vec<Vec<usize>>, outer_hint: Option<(usize, usize)>) -> Result<Self> {
        let n = rotations.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut adj = Vec::with_capacity(n);
        for (v, r) in rotations.iter().enumerate() {
            if r.is_empty() && n >= 2 {
                return Err(Error::EmptyRotation(v));
            }
            let mut sorted = r.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::MultiEdge {
                        vertex: v,
                        neighbor: w[0],
                    });
                }
            }
            for &w in &sorted {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        neighbor: w,
                    });
                }
                if w == v {
                    return Err(Error::SelfLoop(v));
                }
            }
            adj.push(sorted);
        }
        for v in 0..n {
            for &w in &adj[v] {
                if adj[w].binary_search(&v).is_err() {
                    return Err(Error::InconsistentRotation { from: v, to: w });
                }
            }
        }

        let mut offset = Vec::with_capacity(n + 1);
        let mut total = 0;
        for r in &rotations {
            offset.push(total);
            total += r.len();
        }
        offset.push(total);
        let mut head = vec![0; total];
        let mut tail = vec![0; total];
        for v in 0..n {
            for (i, &w) in rotations[v].iter().enumerate() {
                tail[offset[v] + i] = v;
                head[offset[v] + i] = w;
            }
        }
        let mut twin = vec![0; total];
        for d in 0..total {
            let (u, v) = (tail[d], head[d]);
            let p = rotations[v]
                .iter()
                .position(|&x| x == u)
                .expect("symmetric");
            twin[d] = offset[v] + p;
        }

        let mut g = PlaneGraph {
            rot: rotations,
            offset,
            head,
            tail,
            twin,
            dart_face: vec![usize::MAX; total],
            faces: Vec::new(),
            outer: 0,
            adj,
            edge_count: total / 2,
        };

        if !g.connected() {
            return Err(Error::NotConnected);
        }

        let mut faces = Vec::new();
        if total == 0 {
            faces.push(Face {
                id: 0,
                walk: Vec::new(),
                is_outer: true,
            });
        }
        for start in 0..total {
            if g.dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                g.dart_face[d] = id;
                walk.push(g.tail[d]);
                d = g.next_dart_index(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face {
                id,
                walk,
                is_outer: false,
            });
        }
        let euler = n as i64 - g.edge_count as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::EulerViolation(euler));
        }

        let outer = match outer_hint {
            Some((u, v)) => {
                let d = g.dart(u, v).ok_or(Error::BadOuterHint(u, v))?;
                g.dart_face[d]
            }
            None if total == 0 => 0,
            // The dart (0, smallest neighbor of 0) is the globally smallest
            // dart, so its face has the lexicographically smallest sorted
            // dart list.
            None => g.dart_face[g.dart(0, g.adj[0][0]).expect("dart exists")],
        };
        faces[outer].is_outer = true;
        g.faces = faces;
        g.outer = outer;
        Ok(g)
    }

    fn connected(&self) -> bool {
        let n = self.rot.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    fn next_dart_index(&self, d: usize) -> usize {
        let v = self.head[d];
        let t = self.twin[d];
        let deg = self.rot[v].len();
        let p = t - self.offset[v];
        self.offset[v] + (p + deg - 1) % deg
    }

    fn dart(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.rot.len() {
            return None;
        }
        self.rot[u]
            .iter()
            .position(|&x| x == v)
            .map(|p| self.offset[u] + p)
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Clockwise rotation of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id)
    }

    pub fn outer_face_id(&self) -> FaceId {
        self.outer
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_outer)
    }

    /// The face lying to the right of the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<FaceId> {
        self.dart(u, v).map(|d| self.dart_face[d])
    }

    /// Successor of the dart `u -> v` along its face.
    pub fn next_dart(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        self.dart(u, v).map(|d| {
            let e = self.next_dart_index(d);
            (self.tail[e], self.head[e])
        })
    }

    /// The outer boundary walk listed clockwise (the reverse of the outer
    /// face's dart order).
    pub fn outer_cycle(&self) -> Vec<usize> {
        let walk = &self.faces[self.outer].walk;
        if walk.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(walk.len());
        out.push(walk[0]);
        out.extend(walk[1..].iter().rev());
        out
    }

    pub fn is_outer_vertex(&self, v: usize) -> bool {
        self.faces[self.outer].contains_vertex(v)
    }

    /// Faces sharing an edge with `f`, excluding `f` itself.
    pub fn adjacent_faces(&self, f: FaceId) -> Vec<FaceId> {
        let mut out: Vec<FaceId> = self.faces[f]
            .darts()
            .filter_map(|(u, v)| self.face_of_dart(v, u))
            .filter(|&g| g != f)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks that `cycle` is a cycle of this graph.
    pub fn validate_cycle(&self, cycle: &CycleRef) -> Result<()> {
        let k = cycle.len();
        if k < 3 {
            return Err(Error::NotACycle(format!("length {k} < 3")));
        }
        let mut seen = BTreeSet::new();
        for &v in &cycle.vertices {
            if v >= self.vertex_count() {
                return Err(Error::NotACycle(format!("vertex {v} out of range")));
            }
            if !seen.insert(v) {
                return Err(Error::NotACycle(format!("vertex {v} repeats")));
            }
        }
        for (a, b) in cycle.edges() {
            if !self.has_edge(a, b) {
                return Err(Error::NotACycle(format!("{a}-{b} is not an edge")));
            }
        }
        Ok(())
    }

    /// Faces on the bounded side of `cycle`. The cycle must be valid.
    pub fn interior_faces(&self, cycle: &CycleRef) -> Result<Vec<FaceId>> {
        self.validate_cycle(cycle)?;
        let (a, b) = (cycle.vertices[0], cycle.vertices[1]);
        let right = self.flood_side(cycle, self.face_of_dart(a, b).expect("edge"));
        if !right.contains(&self.outer) {
            return Ok(right);
        }
        let left = self.flood_side(cycle, self.face_of_dart(b, a).expect("edge"));
        if left.contains(&self.outer) {
            return Err(Error::Invariant(
                "both sides of a cycle contain the outer face".into(),
            ));
        }
        Ok(left)
    }

    /// Which way `cycle` runs around its interior.
    pub fn cycle_orientation(&self, cycle: &CycleRef) -> Result<Orientation> {
        self.validate_cycle(cycle)?;
        let (a, b) = (cycle.vertices[0], cycle.vertices[1]);
        let right = self.flood_side(cycle, self.face_of_dart(a, b).expect("edge"));
        Ok(if right.contains(&self.outer) {
            Orientation::CounterClockwise
        } else {
            Orientation::Clockwise
        })
    }

    fn flood_side(&self, cycle: &CycleRef, start: FaceId) -> Vec<FaceId> {
        let blocked: BTreeSet<(usize, usize)> =
            cycle.edges().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let mut seen = vec![false; self.faces.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(f) = queue.pop_front() {
            out.push(f);
            for (u, v) in self.faces[f].darts() {
                if blocked.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                let g = self.face_of_dart(v, u).expect("twin");
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgraph formed by the boundary edges of `faces`, with the
    /// inherited embedding.
    pub fn region(&self, faces: &[FaceId]) -> Result<SubPlane> {
        let mut edges = BTreeSet::new();
        for &f in faces {
            let face = self.faces.get(f).ok_or(Error::NoSuchFace(f))?;
            for (u, v) in face.darts() {
                edges.insert((u.min(v), u.max(v)));
            }
        }
        self.edge_subgraph(&edges)
    }

    /// The subgraph spanned by `edges` (given as `(min, max)` pairs) with the
    /// inherited rotation system, vertices renumbered in ascending order of
    /// their ids here. Its outer face is the face containing this graph's
    /// outer face.
    pub fn edge_subgraph(&self, edges: &BTreeSet<(usize, usize)>) -> Result<SubPlane> {
        let n = self.vertex_count();
        let mut keep = vec![false; n];
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::Invariant(format!("{u}-{v} is not an edge")));
            }
            keep[u] = true;
            keep[v] = true;
        }
        let to_parent: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        if to_parent.is_empty() {
            return Err(Error::Empty);
        }
        let mut to_sub = vec![usize::MAX; n];
        for (i, &v) in to_parent.iter().enumerate() {
            to_sub[v] = i;
        }
        let has = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
        let rot: Vec<Vec<usize>> = to_parent
            .iter()
            .map(|&v| {
                self.rot[v]
                    .iter()
                    .filter(|&&w| has(v, w))
                    .map(|&w| to_sub[w])
                    .collect()
            })
            .collect();
        let hint = self
            .lift_outer(&keep, &has)
            .map(|(a, b)| (to_sub[a], to_sub[b]));
        let graph = PlaneGraph::new(rot, hint)?;
        Ok(SubPlane { graph, to_parent })
    }

    /// Finds a dart of the subgraph (in this graph's ids) whose face contains
    /// this graph's outer face.
    fn lift_outer(
        &self,
        keep: &[bool],
        has: &dyn Fn(usize, usize) -> bool,
    ) -> Option<(usize, usize)> {
        let walk = &self.faces[self.outer].walk;
        if walk.is_empty() {
            return None;
        }
        let k = walk.len();
        let arrival = (0..k)
            .map(|i| (walk[i], walk[(i + 1) % k]))
            .find(|&(_, u)| keep[u])
            .or_else(|| {
                // Walk from the outer boundary through removed vertices until
                // the subgraph is reached; the path stays inside one face of
                // the subgraph.
                let n = self.vertex_count();
                let mut seen = vec![false; n];
                let mut queue: VecDeque<usize> = VecDeque::new();
                for &w in walk {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
                while let Some(x) = queue.pop_front() {
                    for &u in &self.adj[x] {
                        if keep[u] {
                            return Some((x, u));
                        }
                        if !seen[u] {
                            seen[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
                None
            })?;
        let (x, u) = arrival;
        let r = &self.rot[u];
        let p = r.iter().position(|&y| y == x).expect("adjacent");
        (0..r.len())
            .map(|i| r[(p + i) % r.len()])
            .find(|&b| has(u, b))
            .map(|b| (b, u))
    }

    /// Removes edges, keeping every vertex. The outer face of the result is
    /// the face containing the current outer face.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Result<PlaneGraph> {
        let drop: BTreeSet<(usize, usize)> =
            removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let kept: BTreeSet<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|e| !drop.contains(e))
            .collect();
        let sub = self.edge_subgraph(&kept)?;
        if sub.graph.vertex_count() != self.vertex_count() {
            return Err(Error::NotConnected);
        }
        Ok(sub.graph)
    }

    /// Inserts the edge `u`-`w` inside face `f`; both must lie on its
    /// boundary and be non-adjacent.
    pub fn with_edge_in_face(&self, f: FaceId, u: usize, w: usize) -> Result<PlaneGraph> {
        let face = self.faces.get(f).ok_or(Error::NoSuchFace(f))?;
        if u == w || self.has_edge(u, w) {
            return Err(Error::Invariant(format!("{u}-{w} cannot be inserted")));
        }
        let mut rot = self.rot.clone();
        for (a, b) in [(u, w), (w, u)] {
            // In face f the walk passes a as x -> a -> y, where y sits right
            // before x in a's clockwise rotation; b goes between them.
            let k = face.walk.len();
            let i = face
                .walk
                .iter()
                .position(|&z| z == a)
                .ok_or_else(|| Error::Invariant(format!("{a} is not on face {f}")))?;
            let x = face.walk[(i + k - 1) % k];
            let r = &mut rot[a];
            let px = r.iter().position(|&z| z == x).expect("adjacent");
            r.insert(px, b);
        }
        let hint = self.outer_hint_avoiding(f);
        PlaneGraph::new(rot, hint)
    }

    /// Adds a vertex inside the triangular face `f` joined to its corners.
    pub fn with_vertex_in_face(&self, f: FaceId) -> Result<PlaneGraph> {
        let face = self.faces.get(f).ok_or(Error::NoSuchFace(f))?;
        if face.len() != 3 {
            return Err(Error::Invariant(format!("face {f} is not a 3-face")));
        }
        let x = self.vertex_count();
        let mut rot = self.rot.clone();
        for i in 0..3 {
            let prev = face.walk[(i + 2) % 3];
            let r = &mut rot[face.walk[i]];
            let p = r.iter().position(|&z| z == prev).expect("adjacent");
            r.insert(p, x);
        }
        rot.push(face.walk.clone());
        PlaneGraph::new(rot, self.outer_hint_avoiding(f))
    }

    fn outer_hint_avoiding(&self, f: FaceId) -> Option<(usize, usize)> {
        if f == self.outer {
            return None;
        }
        self.faces[self.outer].darts().next()
    }

    /// A dart on the outer face, used to pin the outer face in file formats.
    pub fn outer_dart(&self) -> Option<(usize, usize)> {
        self.faces[self.outer].darts().min()
    }

    /// Relabels vertices by `perm` (old id -> new id).
    pub fn relabeled(&self, perm: &[usize]) -> Result<PlaneGraph> {
        let n = self.vertex_count();
        let mut rot = vec![Vec::new(); n];
        for v in 0..n {
            rot[perm[v]] = self.rot[v].iter().map(|&w| perm[w]).collect();
        }
        let hint = self.outer_dart().map(|(a, b)| (perm[a], perm[b]));
        PlaneGraph::new(rot, hint)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::PlaneGraph;

    /// K4 with outer triangle 0,1,2 and center 3.
    pub fn k4() -> PlaneGraph {
        PlaneGraph::new(
            vec![vec![1, 2, 3], vec![0, 3, 2], vec![1, 3, 0], vec![0, 2, 1]],
            Some((0, 1)),
        )
        .unwrap()
    }

    /// Plain k-cycle 0..k.
    pub fn cycle(k: usize) -> PlaneGraph {
        let rot = (0..k).map(|i| vec![(i + k - 1) % k, (i + 1) % k]).collect();
        PlaneGraph::new(rot, Some((0, 1))).unwrap()
    }

    /// Wheel: hub 0, rim 1..=k in order.
    pub fn wheel(k: usize) -> PlaneGraph {
        let mut rot = vec![(1..=k).rev().collect::<Vec<_>>()];
        for i in 1..=k {
            let prev = if i == 1 { k } else { i - 1 };
            let next = if i == k { 1 } else { i + 1 };
            rot.push(vec![prev, 0, next]);
        }
        let g = PlaneGraph::new(rot, None).unwrap();
        let rim = g
            .faces()
            .iter()
            .find(|f| f.len() == k && !f.contains_vertex(0))
            .unwrap()
            .walk
            .clone();
        PlaneGraph::new(g.rotations().to_vec(), Some((rim[0], rim[1]))).unwrap()
    }

    /// 5-cycle 0..5 with the chord 0-2; the outer face is the 5-cycle.
    pub fn pentagon_with_chord() -> PlaneGraph {
        let g = PlaneGraph::new(
            vec![
                vec![4, 2, 1],
                vec![0, 2],
                vec![1, 0, 3],
                vec![2, 4],
                vec![3, 0],
            ],
            None,
        )
        .unwrap();
        let outer = g
            .faces()
            .iter()
            .find(|f| f.len() == 5)
            .unwrap()
            .walk
            .clone();
        PlaneGraph::new(g.rotations().to_vec(), Some((outer[0], outer[1]))).unwrap()
    }

    /// Two triangles 0,1,2 and 0,3,4 sharing vertex 0.
    pub fn bowtie() -> PlaneGraph {
        PlaneGraph::new(
            vec![
                vec![1, 2, 3, 4],
                vec![2, 0],
                vec![0, 1],
                vec![4, 0],
                vec![0, 3],
            ],
            None,
        )
        .unwrap()
    }

    /// Two triangles 0,1,2 and 0,1,3 sharing the edge 0-1.
    pub fn diamond() -> PlaneGraph {
        PlaneGraph::new(
            vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1], vec![1, 0]],
            None,
        )
        .unwrap()
    }

    pub fn path3() -> PlaneGraph {
        PlaneGraph::new(vec![vec![1], vec![0, 2], vec![1]], None).unwrap()
    }

    /// Straight-line drawing to rotation system; the outer face is the one
    /// seen from the leftmost point.
    pub fn from_coords(pts: &[(f64, f64)], edges: &[(usize, usize)]) -> PlaneGraph {
        let n = pts.len();
        let mut rot = vec![Vec::new(); n];
        for &(a, b) in edges {
            rot[a].push(b);
            rot[b].push(a);
        }
        let angle = |v: usize, w: usize| (pts[w].1 - pts[v].1).atan2(pts[w].0 - pts[v].0);
        for (v, r) in rot.iter_mut().enumerate() {
            r.sort_by(|&x, &y| angle(v, y).partial_cmp(&angle(v, x)).unwrap());
        }
        let left = (0..n)
            .min_by(|&a, &b| pts[a].partial_cmp(&pts[b]).unwrap())
            .unwrap();
        let top = rot[left][0];
        PlaneGraph::new(rot, Some((top, left))).unwrap()
    }

    /// Hexagon 0..6 around a pentagon 6..11, the ring between them
    /// triangulated, the pentagon split by the chord 6-8 into a triangle and
    /// a 4-hole that misses the outer cycle.
    pub fn hexagon_pentagon() -> PlaneGraph {
        let mut pts = Vec::new();
        for i in 0..6 {
            let a = (90.0 - 60.0 * i as f64).to_radians();
            pts.push((3.0 * a.cos(), 3.0 * a.sin()));
        }
        for j in 0..5 {
            let a = (80.0 - 72.0 * j as f64).to_radians();
            pts.push((1.5 * a.cos(), 1.5 * a.sin()));
        }
        let mut edges = vec![(6, 8)];
        for i in 0..6 {
            edges.push((i, (i + 1) % 6));
        }
        for j in 0..5 {
            edges.push((6 + j, 6 + (j + 1) % 5));
        }
        // Ring spokes, zipped clockwise by angle.
        edges.extend([
            (0, 6),
            (6, 1),
            (1, 7),
            (7, 2),
            (2, 8),
            (8, 3),
            (3, 9),
            (9, 4),
            (4, 10),
            (10, 5),
            (5, 6),
        ]);
        from_coords(&pts, &edges)
    }

    /// Vertex 0 on the outer square 0,1,5,4 has degree 4; the 4-hole
    /// 0,2,6,3 meets the outer cycle only at 0, with 3-faces 0,1,2 and
    /// 0,3,4 on either side.
    pub fn single_touch() -> PlaneGraph {
        let pts = [
            (0.0, 2.0),
            (2.0, 0.0),
            (1.0, 0.3),
            (-1.0, 0.3),
            (-2.0, 0.0),
            (0.0, -2.0),
            (0.0, -0.5),
        ];
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 5),
            (2, 5),
            (2, 6),
            (3, 6),
            (3, 4),
            (3, 5),
            (4, 5),
            (5, 6),
        ];
        from_coords(&pts, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn face_lengths(g: &PlaneGraph) -> Vec<usize> {
        let mut v: Vec<usize> = g.faces().iter().map(|f| f.len()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn coordinate_fixtures() {
        let g = hexagon_pentagon();
        assert_eq!((g.vertex_count(), g.edge_count()), (11, 23));
        assert_eq!(
            face_lengths(&g),
            vec![3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 4, 6]
        );
        assert_eq!(g.outer_face().vertex_set(), (0..6).collect());
        let g = single_touch();
        assert_eq!(face_lengths(&g), vec![3, 3, 3, 3, 3, 3, 4, 4]);
        assert_eq!(g.outer_face().vertex_set(), [0, 1, 4, 5].into());
    }

    #[test]
    fn k4_has_four_triangles() {
        let g = k4();
        assert_eq!(g.face_count(), 4);
        assert_eq!(face_lengths(&g), vec![3, 3, 3, 3]);
        assert_eq!(g.outer_face().vertex_set(), [0, 1, 2].into());
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = cycle(3);
        assert_eq!(face_lengths(&g), vec![3, 3]);
    }

    #[test]
    fn pentagon_with_chord_faces() {
        let g = pentagon_with_chord();
        assert_eq!(face_lengths(&g), vec![3, 4, 5]);
        assert_eq!(g.outer_face().len(), 5);
    }

    #[test]
    fn inner_faces_run_clockwise() {
        let g = k4();
        for f in g.inner_faces() {
            let c = CycleRef::new(f.walk.clone());
            assert_eq!(g.cycle_orientation(&c).unwrap(), Orientation::Clockwise);
        }
        let outer = CycleRef::new(g.outer_face().walk.clone());
        assert_eq!(
            g.cycle_orientation(&outer).unwrap(),
            Orientation::CounterClockwise
        );
        let cw = CycleRef::new(g.outer_cycle());
        assert_eq!(g.cycle_orientation(&cw).unwrap(), Orientation::Clockwise);
    }

    #[test]
    fn rejects_asymmetric_rotation() {
        let err = PlaneGraph::new(vec![vec![1], vec![]], None).unwrap_err();
        assert!(matches!(err, Error::EmptyRotation(1)));
        let err = PlaneGraph::new(vec![vec![1, 2], vec![0], vec![1]], None).unwrap_err();
        assert!(matches!(err, Error::InconsistentRotation { .. }));
    }

    #[test]
    fn rejects_multi_edges_and_loops() {
        let err = PlaneGraph::new(vec![vec![1, 1], vec![0, 0]], None).unwrap_err();
        assert!(matches!(err, Error::MultiEdge { .. }));
        let err = PlaneGraph::new(vec![vec![0]], None).unwrap_err();
        assert!(matches!(err, Error::SelfLoop(0)));
    }

    #[test]
    fn rejects_disconnected() {
        let err = PlaneGraph::new(vec![vec![1], vec![0], vec![3], vec![2]], None).unwrap_err();
        assert_eq!(err, Error::NotConnected);
    }

    #[test]
    fn rejects_toroidal_rotation() {
        // K4 with one rotation flipped is not a sphere embedding.
        let err = PlaneGraph::new(
            vec![vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::EulerViolation(_)));
    }

    #[test]
    fn bad_outer_hint() {
        let err = PlaneGraph::new(cycle(4).rotations().to_vec(), Some((0, 2))).unwrap_err();
        assert_eq!(err, Error::BadOuterHint(0, 2));
    }

    #[test]
    fn default_outer_face_contains_smallest_dart() {
        let g = PlaneGraph::new(k4().rotations().to_vec(), None).unwrap();
        assert_eq!(g.outer_face_id(), g.face_of_dart(0, 1).unwrap());
    }

    #[test]
    fn single_vertex() {
        let g = PlaneGraph::new(vec![vec![]], None).unwrap();
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn interior_of_inner_triangle_of_k4() {
        let g = k4();
        let c = CycleRef::new(vec![0, 1, 3]);
        let inside = g.interior_faces(&c).unwrap();
        assert_eq!(inside.len(), 1);
        let sub = g.region(&inside).unwrap();
        assert_eq!(sub.graph.vertex_count(), 3);
        assert_eq!(sub.graph.edge_count(), 3);
        assert_eq!(sub.to_parent, vec![0, 1, 3]);
    }

    #[test]
    fn edge_insertion_splits_face() {
        let g = cycle(6);
        let inner = g.inner_faces().next().unwrap().id;
        let h = g.with_edge_in_face(inner, 0, 3).unwrap();
        assert_eq!(face_lengths(&h), vec![4, 4, 6]);
        assert_eq!(h.outer_face().len(), 6);
    }

    #[test]
    fn vertex_insertion_keeps_outer_face() {
        let g = cycle(3);
        let inner = g.inner_faces().next().unwrap().id;
        let h = g.with_vertex_in_face(inner).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(face_lengths(&h), vec![3, 3, 3, 3]);
        assert_eq!(h.outer_face().vertex_set(), [0, 1, 2].into());
    }

    #[test]
    fn removing_outer_edge_merges_outer_face() {
        let g = k4();
        let h = g.without_edges(&[(0, 1)]).unwrap();
        assert_eq!(h.outer_face().len(), 4);
        assert_eq!(h.face_count(), 3);
    }
}
