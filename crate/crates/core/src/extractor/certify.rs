//! Near-triangulation certificates and their checker.
//!
//! The checker works from the host's rotations alone. It traces the
//! subgraph's faces itself, tests 2-connectivity by brute force and locates
//! the outer face through the host's dual, so it shares nothing with the
//! search that produced the certificate.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::write_text;
use crate::plane::{CycleRef, PlaneGraph};

/// A plane subgraph of a host, given by host ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearTriangulationWitness {
    pub host_sha256: String,
    /// Sorted.
    pub vertices: Vec<usize>,
    /// Sorted `(min, max)` pairs.
    pub edges: Vec<(usize, usize)>,
    /// The outer cycle, clockwise.
    pub boundary: CycleRef,
    pub order: usize,
}

/// SHA-256 of the graph's text serialization.
pub fn host_digest(g: &PlaneGraph) -> String {
    hex::encode(Sha256::digest(write_text(g).as_bytes()))
}

impl NearTriangulationWitness {
    /// Maps a subgraph back to host ids.
    pub(crate) fn from_sub(host_sha256: String, sub: &PlaneGraph, to_host: &[usize]) -> Self {
        let mut vertices: Vec<usize> = to_host.to_vec();
        vertices.sort_unstable();
        let mut edges: Vec<(usize, usize)> = sub
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (to_host[a], to_host[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let boundary = CycleRef::new(sub.outer_cycle().into_iter().map(|v| to_host[v]).collect());
        NearTriangulationWitness {
            host_sha256,
            order: vertices.len(),
            vertices,
            edges,
            boundary,
        }
    }

    /// Text block with 1-based ids.
    pub fn to_certificate(&self, t: usize) -> String {
        let join = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
        format!(
            "near-triangulation\nhost-sha256 {}\nt {}\norder {}\nvertices {}\nedges {}\nboundary {}\nend\n",
            self.host_sha256,
            t,
            self.order,
            join(&mut self.vertices.iter().map(|v| (v + 1).to_string())),
            join(&mut self.edges.iter().map(|(a, b)| format!("{}-{}", a + 1, b + 1))),
            join(&mut self.boundary.vertices.iter().map(|v| (v + 1).to_string())),
        )
    }

    /// Parses one block written by [`to_certificate`](Self::to_certificate),
    /// returning the witness and its `t`.
    pub fn from_certificate(text: &str) -> Result<(Self, usize)> {
        let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, "near-triangulation")) => {}
            Some((i, _)) => {
                return Err(Error::parse(
                    format!("line {i}"),
                    "expected 'near-triangulation'",
                ))
            }
            None => return Err(Error::parse("line 1", "empty certificate")),
        }
        for (i, line) in lines {
            if line == "end" {
                break;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            fields.insert(key, (i, rest.trim()));
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| Error::parse("end", format!("missing '{key}'")))
        };
        let number = |(i, s): (usize, &str)| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(format!("line {i}"), format!("bad number '{s}'")))
        };
        let id = |i: usize, s: &str| match s.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Error::parse(
                format!("line {i}"),
                format!("bad vertex '{s}'"),
            )),
        };
        let ids = |(i, s): (usize, &str)| {
            s.split_whitespace()
                .map(|w| id(i, w))
                .collect::<Result<Vec<_>>>()
        };
        let (ei, es) = get("edges")?;
        let edges = es
            .split_whitespace()
            .map(|w| {
                let (a, b) = w
                    .split_once('-')
                    .ok_or_else(|| Error::parse(format!("line {ei}"), format!("bad edge '{w}'")))?;
                Ok((id(ei, a)?, id(ei, b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let witness = NearTriangulationWitness {
            host_sha256: get("host-sha256")?.1.to_string(),
            vertices: ids(get("vertices")?)?,
            edges,
            boundary: CycleRef::new(ids(get("boundary")?)?),
            order: number(get("order")?)?,
        };
        Ok((witness, number(get("t")?)?))
    }
}

fn connected_without(adj: &[Vec<usize>], skip: Option<usize>) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&v| Some(v) != skip) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if Some(y) != skip && !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count == n - usize::from(skip.is_some())
}

/// True iff `w` describes a subgraph of `host` that, with the inherited
/// embedding, is 2-connected, has only 3-faces inside, has `boundary` as its
/// outer cycle, and has at least `t` vertices.
pub fn check_witness(host: &PlaneGraph, w: &NearTriangulationWitness, t: usize) -> bool {
    if w.host_sha256 != host_digest(host) {
        return false;
    }
    let n = w.vertices.len();
    if n != w.order || n < t || n < 3 || !w.vertices.windows(2).all(|p| p[0] < p[1]) {
        return false;
    }
    if w.vertices.last().is_some_and(|&v| v >= host.vertex_count()) {
        return false;
    }
    let local: HashMap<usize, usize> = w
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let edge_set: BTreeSet<(usize, usize)> = w.edges.iter().copied().collect();
    if edge_set.len() != w.edges.len() {
        return false;
    }
    let mut covered = vec![false; n];
    for &(a, b) in &edge_set {
        if a >= b || !host.has_edge(a, b) {
            return false;
        }
        match (local.get(&a), local.get(&b)) {
            (Some(&i), Some(&j)) => {
                covered[i] = true;
                covered[j] = true;
            }
            _ => return false,
        }
    }
    if covered.contains(&false) {
        return false;
    }
    let has = |a: usize, b: usize| edge_set.contains(&(a.min(b), a.max(b)));

    // Inherited clockwise rotations in local ids.
    let rot: Vec<Vec<usize>> = w
        .vertices
        .iter()
        .map(|&v| {
            host.rotation(v)
                .iter()
                .filter(|&&u| has(v, u))
                .map(|u| local[u])
                .collect()
        })
        .collect();
    if !connected_without(&rot, None) || !(0..n).all(|v| connected_without(&rot, Some(v))) {
        return false;
    }

    // Trace faces: after u -> v comes v -> x, x just before u around v.
    let mut face_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        for &v in &rot[u] {
            if face_of.contains_key(&(u, v)) {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while !face_of.contains_key(&(a, b)) {
                face_of.insert((a, b), id);
                walk.push(a);
                let r = &rot[b];
                let p = r.iter().position(|&x| x == a).expect("symmetric");
                let x = r[(p + r.len() - 1) % r.len()];
                (a, b) = (b, x);
            }
            faces.push(walk);
        }
    }
    if n as i64 - edge_set.len() as i64 + faces.len() as i64 != 2 {
        return false;
    }

    // The subgraph face holding the host's outer face: flood the host's
    // faces across edges missing from the subgraph until one borders it.
    let mut seen = vec![false; host.face_count()];
    let start = host.outer_face_id();
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut outer = None;
    'flood: while let Some(f) = queue.pop_front() {
        for (a, b) in host.faces()[f].darts() {
            if has(a, b) {
                outer = face_of.get(&(local[&a], local[&b])).copied();
                break 'flood;
            }
            if let Some(g) = host.face_of_dart(b, a) {
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
    }
    let Some(outer) = outer else {
        return false;
    };
    if faces
        .iter()
        .enumerate()
        .any(|(i, f)| i != outer && f.len() != 3)
    {
        return false;
    }

    // The stated boundary must be the outer walk, read in either direction.
    let walk: Vec<usize> = faces[outer].iter().map(|&i| w.vertices[i]).collect();
    let b = &w.boundary.vertices;
    if b.len() != walk.len() || b.iter().collect::<BTreeSet<_>>().len() != b.len() {
        return false;
    }
    let k = walk.len();
    let Some(s) = walk.iter().position(|&v| Some(&v) == b.first()) else {
        return false;
    };
    let fwd = (0..k).all(|i| walk[(s + i) % k] == b[i]);
    let bwd = (0..k).all(|i| walk[(s + k - i) % k] == b[i]);
    fwd || bwd
}
