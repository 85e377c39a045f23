//! Blocks, cut vertices, 2-cuts and the circuit-graph test.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::plane::{CycleRef, PlaneGraph, SubPlane};

/// Block / cut-vertex decomposition of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted, ordered by smallest vertex.
    pub blocks: Vec<Vec<usize>>,
    /// Cut vertices in ascending order.
    pub cut_vertices: Vec<usize>,
    /// Block-tree edges as `(block index, cut vertex)`.
    pub tree: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Indices of the blocks containing `v`.
    pub fn blocks_of_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].binary_search(&v).is_ok())
            .collect()
    }
}

/// Block decomposition of the graph given by `adj`, ignoring the vertices
/// flagged in `removed`. Isolated vertices form singleton blocks.
pub fn blocks_of(adj: &[Vec<usize>], removed: &[bool]) -> BlockDecomposition {
    let n = adj.len();
    let alive = |v: usize| !removed.get(v).copied().unwrap_or(false);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !alive(root) || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if adj[root].iter().all(|&w| !alive(w)) {
            blocks.push(vec![root]);
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if !alive(w) || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut set = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            set.insert(a);
                            set.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(set.into_iter().collect());
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();
    let mut tree = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if count[v] >= 2 {
                tree.push((i, v));
            }
        }
    }
    BlockDecomposition {
        blocks,
        cut_vertices,
        tree,
    }
}

pub fn blocks(g: &PlaneGraph) -> BlockDecomposition {
    blocks_of(g.adjacency(), &[])
}

/// Number of connected components after deleting the flagged vertices.
pub(crate) fn component_labels(adj: &[Vec<usize>], removed: &[bool]) -> (usize, Vec<usize>) {
    let n = adj.len();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if removed[s] || label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !removed[w] && label[w] == usize::MAX {
                    label[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (count, label)
}

pub fn is_two_connected(g: &PlaneGraph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    let d = blocks(g);
    d.blocks.len() == 1 && d.blocks[0].len() == n
}

/// All vertex pairs `(u, v)` with `u < v` whose removal disconnects `g`.
pub fn two_cuts(g: &PlaneGraph) -> Result<Vec<(usize, usize)>> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut removed = vec![false; n];
    for u in 0..n {
        removed[u] = true;
        for v in blocks_of(g.adjacency(), &removed).cut_vertices {
            if u < v {
                out.push((u, v));
            }
        }
        removed[u] = false;
    }
    Ok(out)
}

/// True iff every component left by every 2-cut reaches the outer face.
pub fn is_circuit_graph(g: &PlaneGraph) -> Result<bool> {
    let cuts = two_cuts(g)?;
    let n = g.vertex_count();
    let on_outer: Vec<bool> = (0..n).map(|v| g.is_outer_vertex(v)).collect();
    let mut removed = vec![false; n];
    for (u, v) in cuts {
        removed[u] = true;
        removed[v] = true;
        let (count, label) = component_labels(g.adjacency(), &removed);
        let mut reaches = vec![false; count];
        for w in 0..n {
            if !removed[w] && on_outer[w] {
                reaches[label[w]] = true;
            }
        }
        removed[u] = false;
        removed[v] = false;
        if reaches.iter().any(|&r| !r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The plane subgraph made of `cycle` and everything inside it. Its outer
/// face is bounded by `cycle`.
pub fn subgraph_bounded_by_cycle(g: &PlaneGraph, cycle: &CycleRef) -> Result<SubPlane> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let inside = g.interior_faces(cycle)?;
    let sub = g.region(&inside)?;
    if !is_two_connected(&sub.graph) {
        return Err(Error::Invariant(
            "subgraph bounded by a cycle is not 2-connected".into(),
        ));
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::fixtures::*;

    #[test]
    fn predicates_on_small_graphs() {
        assert!(is_two_connected(&k4()));
        assert!(!is_two_connected(&bowtie()));
        assert!(!is_two_connected(&path3()));
        assert!(is_two_connected(&cycle(5)));
    }

    #[test]
    fn two_cuts_examples() {
        assert!(two_cuts(&k4()).unwrap().is_empty());
        assert_eq!(two_cuts(&diamond()).unwrap(), vec![(0, 1)]);
        assert_eq!(two_cuts(&cycle(4)).unwrap(), vec![(0, 2), (1, 3)]);
        assert_eq!(two_cuts(&bowtie()), Err(Error::NotTwoConnected));
    }

    #[test]
    fn block_examples() {
        let d = blocks(&path3());
        assert_eq!(d.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(d.cut_vertices, vec![1]);
        assert_eq!(d.tree, vec![(0, 1), (1, 1)]);
        let d = blocks(&bowtie());
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![0, 3, 4]]);
        assert_eq!(d.cut_vertices, vec![0]);
        assert_eq!(blocks(&k4()).blocks.len(), 1);
    }

    #[test]
    fn circuit_graph_examples() {
        assert!(is_circuit_graph(&k4()).unwrap());
        // 4-cycle 0-1-2-3 with chord 0-2 and vertex 4 adjacent to 0 and 2
        // inside the triangle 0,1,2.
        let g = PlaneGraph::new(
            vec![
                vec![1, 4, 2, 3],
                vec![2, 0],
                vec![3, 0, 4, 1],
                vec![0, 2],
                vec![2, 0],
            ],
            None,
        )
        .unwrap();
        let outer = g
            .faces()
            .iter()
            .find(|f| f.vertex_set() == [0, 1, 2, 3].into())
            .unwrap()
            .walk
            .clone();
        let g = PlaneGraph::new(g.rotations().to_vec(), Some((outer[0], outer[1]))).unwrap();
        assert!(two_cuts(&g).unwrap().contains(&(0, 2)));
        assert!(!is_circuit_graph(&g).unwrap());
    }

    #[test]
    fn bounded_subgraph_examples() {
        let g = k4();
        let outer = CycleRef::new(g.outer_cycle());
        let sub = subgraph_bounded_by_cycle(&g, &outer).unwrap();
        assert_eq!(sub.graph, g);
        let tri = subgraph_bounded_by_cycle(&g, &CycleRef::new(vec![0, 1, 3])).unwrap();
        assert_eq!(tri.graph.edge_count(), 3);
        // Wheel with hub 0 and rim 1..=5.
        let w = wheel(5);
        let sub = subgraph_bounded_by_cycle(&w, &CycleRef::new(vec![1, 2, 3, 0])).unwrap();
        assert_eq!(sub.graph.vertex_count(), 4);
        assert_eq!(sub.graph.edge_count(), 5);
        assert!(sub.parent_edges().contains(&(0, 2)));
        assert_eq!(sub.graph.outer_face().len(), 4);
        let bad = subgraph_bounded_by_cycle(&w, &CycleRef::new(vec![1, 3, 0]));
        assert!(matches!(bad, Err(Error::NotACycle(_))));
    }
}
