//! Seeded and deterministic instance generators.
//!
//! Every stacked triangulation here starts from the triangle `0, 1, 2` whose
//! outer face contains the dart `0 -> 1`, so the default outer face chosen by
//! [`PlaneGraph::new`] is the original triangle and `planar_code` round trips
//! keep it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::glued_lobe_order;
use crate::connectivity::is_two_connected;
use crate::error::{Error, Result};
use crate::holes::deficit;
use crate::plane::PlaneGraph;

pub const MAX_LEVEL: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoonMoserSpec {
    pub level: usize,
    pub order: usize,
}

impl MoonMoserSpec {
    pub fn new(level: usize) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::LevelTooLarge(level));
        }
        Ok(MoonMoserSpec {
            level,
            order: moon_moser_order(level),
        })
    }
}

/// `(3^{level+1} + 5) / 2`.
pub fn moon_moser_order(level: usize) -> usize {
    (3usize.pow(level as u32 + 1) + 5) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluedSpec {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub t_copies: usize,
    pub remainder: usize,
    /// Orders of the lobes in gluing order.
    pub lobe_orders: Vec<usize>,
}

/// A triangulated disk grown by stacking vertices into inner triangles.
#[derive(Clone, Debug)]
struct Stacker {
    rot: Vec<Vec<usize>>,
    /// Inner faces as clockwise corner triples.
    tris: Vec<[usize; 3]>,
}

impl Stacker {
    fn triangle() -> Self {
        Stacker {
            rot: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            tris: vec![[0, 2, 1]],
        }
    }

    /// Puts a new vertex into inner face `i`; the three child faces replace
    /// it at `i` and at the end of the list.
    fn stack(&mut self, i: usize) -> usize {
        let [a, b, c] = self.tris[i];
        let x = self.rot.len();
        for (corner, prev) in [(a, c), (b, a), (c, b)] {
            let r = &mut self.rot[corner];
            let p = r.iter().position(|&z| z == prev).expect("triangle edge");
            r.insert(p, x);
        }
        self.rot.push(vec![a, b, c]);
        self.tris[i] = [a, b, x];
        self.tris.push([b, c, x]);
        self.tris.push([c, a, x]);
        x
    }

    /// Level-major order: every face of the previous level receives one
    /// vertex, in face order, and its children follow in the same order.
    fn grow_levels(&mut self, max_vertices: usize, levels: usize) {
        for _ in 0..levels {
            let old = std::mem::take(&mut self.tris);
            let mut next = Vec::with_capacity(old.len() * 3);
            for (j, t) in old.iter().enumerate() {
                if self.rot.len() >= max_vertices {
                    next.extend_from_slice(&old[j..]);
                    break;
                }
                self.tris = vec![*t];
                self.stack(0);
                next.append(&mut self.tris);
            }
            self.tris = next;
            if self.rot.len() >= max_vertices {
                break;
            }
        }
    }

    fn build(self) -> Result<PlaneGraph> {
        PlaneGraph::new(self.rot, None)
    }
}

/// The stacked triangulation of the given level: `K_4` at level 0, and each
/// further level puts a vertex into every inner triangle.
pub fn moon_moser(level: usize) -> Result<PlaneGraph> {
    let spec = MoonMoserSpec::new(level)?;
    moon_moser_subtriangulation(spec.order)
}

/// The first `n` vertices of the level-major stacking order.
pub fn moon_moser_subtriangulation(n: usize) -> Result<PlaneGraph> {
    if n < 3 || n > moon_moser_order(MAX_LEVEL) {
        return Err(Error::BadOrder(n));
    }
    let mut s = Stacker::triangle();
    s.grow_levels(n, MAX_LEVEL + 1);
    s.build()
}

/// Smallest level whose full order is at least `n`.
pub fn moon_moser_level_for(n: usize) -> usize {
    (0..=MAX_LEVEL)
        .find(|&l| moon_moser_order(l) >= n)
        .unwrap_or(MAX_LEVEL)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_stacker(n: usize, rng: &mut ChaCha8Rng) -> Result<Stacker> {
    if n < 4 {
        return Err(Error::BadOrder(n));
    }
    let mut s = Stacker::triangle();
    s.stack(0);
    while s.rot.len() < n {
        let i = rng.gen_range(0..s.tris.len());
        s.stack(i);
    }
    Ok(s)
}

/// Stacked triangulation of order `n` built by inserting into uniformly
/// chosen inner triangles of `K_4`.
pub fn random_near_triangulation(n: usize, seed: u64) -> Result<PlaneGraph> {
    random_stacker(n, &mut rng(seed))?.build()
}

/// A random near-triangulation with inner edges deleted until `m(G)`
/// reaches `target_m` or no edge can go. Returns the graph and the achieved
/// `m(G)`.
pub fn random_two_connected(n: usize, target_m: usize, seed: u64) -> Result<(PlaneGraph, usize)> {
    let mut r = rng(seed);
    let mut g = random_stacker(n, &mut r)?.build()?;
    let mut m = 0;
    while m < target_m {
        let mut candidates: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| {
                let outer = g.outer_face_id();
                g.face_of_dart(u, v) != Some(outer) && g.face_of_dart(v, u) != Some(outer)
            })
            .collect();
        candidates.shuffle(&mut r);
        let next = candidates.into_iter().find_map(|e| {
            let h = g.without_edges(&[e]).ok()?;
            is_two_connected(&h).then_some(h)
        });
        match next {
            Some(h) => {
                g = h;
                m += 1;
            }
            None => break,
        }
    }
    debug_assert_eq!(deficit(&g), m);
    Ok((g, m))
}

/// Lobe decomposition for the glued construction.
pub fn glued_spec(n: usize, k: usize) -> Result<GluedSpec> {
    let m = glued_lobe_order(k);
    if m <= 2 {
        return Err(Error::KTooSmall(k));
    }
    if n < m {
        return Err(Error::BadOrder(n));
    }
    let t = (n - 2) / (m - 2);
    let rem = (n - 2) % (m - 2);
    let mut lobe_orders = vec![m; t];
    match rem {
        0 => {}
        // No stacked triangulation has 1 or 2 vertices; the last lobe takes
        // the extra vertices instead.
        1 | 2 => *lobe_orders.last_mut().expect("t >= 1") += rem,
        _ => lobe_orders.push(rem + 2),
    }
    Ok(GluedSpec {
        k,
        n,
        m,
        t_copies: t,
        remainder: rem,
        lobe_orders,
    })
}

/// Stacked-triangulation lobes that pairwise share exactly the edge `0-1`,
/// embedded as a fan around it.
pub fn glued_construction(n: usize, k: usize) -> Result<(PlaneGraph, GluedSpec)> {
    let spec = glued_spec(n, k)?;
    let (u, w) = (0usize, 1usize);
    let mut rot: Vec<Vec<usize>> = vec![vec![w], vec![u]];
    let mut at_u: Vec<Vec<usize>> = Vec::new();
    let mut at_w: Vec<Vec<usize>> = Vec::new();
    for &order in &spec.lobe_orders {
        let lobe = moon_moser_subtriangulation(order)?;
        let base = rot.len();
        let map = |x: usize| match x {
            0 => u,
            1 => w,
            _ => base + x - 2,
        };
        let after = |r: &[usize], anchor: usize| -> Vec<usize> {
            let p = r.iter().position(|&z| z == anchor).expect("shared edge");
            (1..r.len()).map(|i| map(r[(p + i) % r.len()])).collect()
        };
        at_u.push(after(lobe.rotation(0), 1));
        at_w.push(after(lobe.rotation(1), 0));
        for x in 2..order {
            rot.push(lobe.rotation(x).iter().map(|&y| map(y)).collect());
        }
    }
    rot[u].extend(at_u.into_iter().flatten());
    rot[w].extend(at_w.into_iter().rev().flatten());
    let g = PlaneGraph::new(rot, None)?;
    debug_assert_eq!(g.vertex_count(), n);
    Ok((g, spec))
}

/// Vertex sets of the lobes of a glued construction, each containing the
/// shared edge `0-1`.
pub fn glued_lobes(spec: &GluedSpec) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut next = 2;
    for &order in &spec.lobe_orders {
        let mut vs = vec![0, 1];
        vs.extend(next..next + order - 2);
        next += order - 2;
        out.push(vs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holes::is_near_triangulation;

    #[test]
    fn moon_moser_orders() {
        for (level, order) in [(0, 4), (1, 7), (2, 16), (3, 43), (6, 1096)] {
            assert_eq!(moon_moser_order(level), order);
        }
        for level in 0..=3 {
            let g = moon_moser(level).unwrap();
            assert_eq!(g.vertex_count(), moon_moser_order(level));
            assert!(is_near_triangulation(&g));
            assert_eq!(g.outer_face().vertex_set(), [0, 1, 2].into());
        }
        assert_eq!(moon_moser(7), Err(Error::LevelTooLarge(7)));
    }

    #[test]
    fn subtriangulations() {
        assert_eq!(
            moon_moser_subtriangulation(4).unwrap(),
            moon_moser(0).unwrap()
        );
        assert_eq!(
            moon_moser_subtriangulation(7).unwrap(),
            moon_moser(1).unwrap()
        );
        let g5 = moon_moser_subtriangulation(5).unwrap();
        assert_eq!(g5.edge_count(), 9);
        // The first stacked vertex goes into the first inner face of K_4.
        assert_eq!(g5.neighbors(4), &[0, 2, 3]);
        assert_eq!(moon_moser_subtriangulation(3).unwrap().edge_count(), 3);
        assert_eq!(moon_moser_subtriangulation(2), Err(Error::BadOrder(2)));
    }

    #[test]
    fn random_generators_are_seeded() {
        let a = random_near_triangulation(20, 1).unwrap();
        let b = random_near_triangulation(20, 1).unwrap();
        assert_eq!(a, b);
        assert!(is_near_triangulation(&a));
        assert_eq!(
            random_near_triangulation(4, 9).unwrap(),
            moon_moser(0).unwrap()
        );
        let (g, m) = random_two_connected(20, 1, 1).unwrap();
        assert_eq!(m, 1);
        assert_eq!(crate::holes::missing_edge_count(&g), Ok(1));
        let (g0, m0) = random_two_connected(20, 0, 1).unwrap();
        assert_eq!(m0, 0);
        assert_eq!(g0, a);
    }

    #[test]
    fn deletion_stops_when_stuck() {
        let (_, m) = random_two_connected(4, 10, 3).unwrap();
        assert!(m < 10);
    }

    #[test]
    fn glued_k14_n30() {
        let (g, spec) = glued_construction(30, 14).unwrap();
        assert_eq!((spec.m, spec.t_copies, spec.remainder), (9, 4, 0));
        assert_eq!(g.vertex_count(), 30);
        assert!(g.edge_count() >= 74);
        assert!(is_two_connected(&g));
    }

    #[test]
    fn glued_book_graph() {
        let (g, spec) = glued_construction(10, 7).unwrap();
        assert_eq!(spec.m, 3);
        assert_eq!(spec.t_copies, 8);
        assert_eq!(g.edge_count(), 17);
        assert!(g.faces().iter().all(|f| f.len() <= 4));
    }

    #[test]
    fn glued_remainders() {
        for n in 9..=40 {
            let (g, spec) = glued_construction(n, 14).unwrap();
            assert_eq!(g.vertex_count(), n, "{spec:?}");
            let lobes = glued_lobes(&spec);
            for (i, a) in lobes.iter().enumerate() {
                for b in &lobes[i + 1..] {
                    let shared = a.iter().filter(|x| b.contains(x)).count();
                    assert_eq!(shared, 2);
                }
            }
        }
        assert_eq!(glued_construction(30, 5).unwrap_err(), Error::KTooSmall(5));
        assert_eq!(glued_construction(30, 6).unwrap_err(), Error::KTooSmall(6));
        assert_eq!(glued_construction(8, 14).unwrap_err(), Error::BadOrder(8));
    }
}
