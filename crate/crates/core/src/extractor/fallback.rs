//! Exhaustive growth of triangulated disks from single 3-faces.
//!
//! A disk grows by a 3-face across one of its boundary edges, either with a
//! new apex vertex or as an ear over two consecutive boundary edges. Every
//! triangulated disk can be reached this way from any of its faces, so the
//! search finds an order-`t` disk whenever the graph has one.

use std::collections::HashSet;

use crate::plane::{FaceId, PlaneGraph};

struct Grow<'a> {
    g: &'a PlaneGraph,
    t: usize,
    seen: HashSet<Vec<FaceId>>,
    nodes: u64,
    limit: u64,
}

impl Grow<'_> {
    fn triangle(&self, f: FaceId) -> bool {
        let face = &self.g.faces()[f];
        !face.is_outer && face.len() == 3
    }

    /// `boundary` is the disk's boundary in the direction of its face walks.
    fn dfs(&mut self, faces: &mut Vec<FaceId>, boundary: &mut Vec<usize>, order: usize) -> bool {
        if order >= self.t {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        let mut key = faces.clone();
        key.sort_unstable();
        if !self.seen.insert(key) {
            return false;
        }
        let k = boundary.len();
        for i in 0..k {
            let (a, b) = (boundary[i], boundary[(i + 1) % k]);
            let Some(f) = self.g.face_of_dart(b, a) else {
                continue;
            };
            if !self.triangle(f) || faces.contains(&f) {
                continue;
            }
            let walk = &self.g.faces()[f].walk;
            let c = walk
                .iter()
                .copied()
                .find(|&x| x != a && x != b)
                .expect("3-face");
            if !boundary.contains(&c) && !self.inside(faces, c) {
                faces.push(f);
                boundary.insert(i + 1, c);
                if self.dfs(faces, boundary, order + 1) {
                    return true;
                }
                boundary.remove(i + 1);
                faces.pop();
            } else if k > 3 && (boundary[(i + 2) % k] == c || boundary[(i + k - 1) % k] == c) {
                // Ear: drop the boundary vertex shared by the two edges.
                let drop = if boundary[(i + 2) % k] == c {
                    (i + 1) % k
                } else {
                    i
                };
                let removed = boundary.remove(drop);
                faces.push(f);
                if self.dfs(faces, boundary, order) {
                    return true;
                }
                faces.pop();
                boundary.insert(drop, removed);
            }
        }
        false
    }

    fn inside(&self, faces: &[FaceId], c: usize) -> bool {
        faces.iter().any(|&f| self.g.faces()[f].contains_vertex(c))
    }
}

/// Faces of a triangulated disk with at least `t` vertices, if the search
/// finds one within `limit` expansions.
pub(crate) fn grow_disk(g: &PlaneGraph, t: usize, limit: u64) -> Option<Vec<FaceId>> {
    let mut grow = Grow {
        g,
        t,
        seen: HashSet::new(),
        nodes: 0,
        limit,
    };
    for f in g.inner_faces().filter(|f| f.len() == 3).map(|f| f.id) {
        let mut faces = vec![f];
        let mut boundary = g.faces()[f].walk.clone();
        if grow.dfs(&mut faces, &mut boundary, 3) {
            return Some(faces);
        }
        if grow.nodes > limit {
            return None;
        }
    }
    None
}
