//! Exact cycle oracles: circumference, cycles of a given length, and pairs of
//! disjoint cycles.
//!
//! All searches are exact. A [`Budget`] bounds long runs; when it runs out
//! the caller gets the best cycle seen and a proven upper bound instead of a
//! guess.

mod search;

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plane::PlaneGraph;
use search::Kernel;

/// Limits on a search. `None` means unlimited.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(Duration::from_millis(ms)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Distinct vertices, at least three, consecutive ones adjacent.
    pub fn is_valid_in(&self, adj: &[Vec<usize>]) -> bool {
        let k = self.vertices.len();
        if k < 3 {
            return false;
        }
        let mut seen = HashSet::new();
        self.vertices
            .iter()
            .all(|&v| v < adj.len() && seen.insert(v))
            && (0..k).all(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
                adj[a].contains(&b)
            })
    }

    pub fn is_valid(&self, g: &PlaneGraph) -> bool {
        self.is_valid_in(g.adjacency())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointCyclePairWitness {
    pub first: CycleWitness,
    pub second: CycleWitness,
}

impl DisjointCyclePairWitness {
    pub fn is_valid(&self, g: &PlaneGraph) -> bool {
        self.first.is_valid(g)
            && self.second.is_valid(g)
            && self
                .first
                .vertices
                .iter()
                .all(|v| !self.second.vertices.contains(v))
    }
}

/// Outcome of a circumference search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Circumference {
    /// The search finished; `length` is 0 for forests.
    Exact {
        length: usize,
        witness: Option<CycleWitness>,
    },
    /// The budget ran out. No cycle is longer than `upper_bound`.
    BudgetExceeded {
        best: Option<CycleWitness>,
        upper_bound: usize,
    },
}

impl Circumference {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Circumference::Exact { length, .. } => Some(*length),
            Circumference::BudgetExceeded { .. } => None,
        }
    }
}

/// Node cap for the greedy pass that seeds the exact search.
const SEED_NODES: u64 = 20_000;

/// Longest cycle of the graph given by sorted adjacency lists.
///
/// A short capped search first supplies a long cycle. Then, from the block
/// bound downwards, each length above it is either refuted or found.
pub fn longest_cycle_in(adj: &[Vec<usize>], budget: Budget) -> Circumference {
    let n = adj.len();
    // The seed pass must not outlast a caller's smaller cap.
    let seed_budget = Budget {
        max_nodes: Some(budget.max_nodes.map_or(SEED_NODES, |m| m.min(SEED_NODES))),
        max_time: budget.max_time,
    };
    let mut seed = Kernel::new(adj, vec![false; n], seed_budget);
    let mut lb = 0;
    let mut best = None;
    for s in 0..n {
        if lb >= n - s
            || seed
                .longest_from(s, &mut lb, &mut best, usize::MAX)
                .is_break()
        {
            break;
        }
    }
    if !seed.exceeded {
        return Circumference::Exact {
            length: lb,
            witness: best.map(|vertices| CycleWitness { vertices }),
        };
    }
    let mut kernel = Kernel::new(adj, vec![false; n], budget);
    let ub = (0..n).map(|s| kernel.start_bound(s)).max().unwrap_or(0);
    for target in (lb + 1..=ub).rev() {
        let mut len = target - 1;
        let mut found = None;
        for s in 0..n {
            if n - s < target {
                break;
            }
            if kernel
                .longest_from(s, &mut len, &mut found, target)
                .is_break()
            {
                break;
            }
        }
        if let Some(vertices) = found {
            return Circumference::Exact {
                length: len,
                witness: Some(CycleWitness { vertices }),
            };
        }
        if kernel.exceeded {
            return Circumference::BudgetExceeded {
                best: best.map(|vertices| CycleWitness { vertices }),
                upper_bound: target,
            };
        }
    }
    Circumference::Exact {
        length: lb,
        witness: best.map(|vertices| CycleWitness { vertices }),
    }
}

pub fn longest_cycle(g: &PlaneGraph, budget: Budget) -> Circumference {
    longest_cycle_in(g.adjacency(), budget)
}

/// Decides whether every cycle is shorter than `bound`. `Ok(false)` comes
/// with a found cycle of length at least `bound` behind it.
pub fn circumference_upper_check_in(
    adj: &[Vec<usize>],
    bound: usize,
    budget: Budget,
) -> Result<bool> {
    let n = adj.len();
    // Every cycle has at least three vertices.
    let bound = bound.max(3);
    let mut kernel = Kernel::new(adj, vec![false; n], budget);
    let mut best_len = bound - 1;
    let mut best = None;
    for s in 0..n {
        if n - s < bound {
            break;
        }
        if kernel
            .longest_from(s, &mut best_len, &mut best, bound)
            .is_break()
        {
            if best.is_some() {
                return Ok(false);
            }
            return Err(Error::BudgetExceeded);
        }
    }
    Ok(best.is_none())
}

pub fn circumference_upper_check(g: &PlaneGraph, bound: usize, budget: Budget) -> Result<bool> {
    circumference_upper_check_in(g.adjacency(), bound, budget)
}

/// Visits every `k`-cycle avoiding `excluded`, each once, in the order of
/// (smallest vertex, lexicographic path).
fn for_each_k_cycle(
    adj: &[Vec<usize>],
    excluded: Vec<bool>,
    k: usize,
    budget: Budget,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let n = adj.len();
    if k < 3 || k > n {
        return Ok(ControlFlow::Continue(()));
    }
    let mut kernel = Kernel::new(adj, excluded, budget);
    for s in 0..=(n - k) {
        if kernel.exact_from(s, k, visit).is_break() {
            if kernel.exceeded {
                return Err(Error::BudgetExceeded);
            }
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

fn first_k_cycle(
    adj: &[Vec<usize>],
    excluded: Vec<bool>,
    k: usize,
    budget: Budget,
) -> Result<Option<CycleWitness>> {
    let mut found = None;
    let _ = for_each_k_cycle(adj, excluded, k, budget, &mut |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|vertices| CycleWitness { vertices }))
}

/// A cycle on exactly `k` vertices, if one exists.
pub fn cycle_of_length_exactly_in(adj: &[Vec<usize>], k: usize) -> Option<CycleWitness> {
    first_k_cycle(adj, vec![false; adj.len()], k, Budget::unlimited()).expect("unlimited budget")
}

pub fn cycle_of_length_exactly(g: &PlaneGraph, k: usize) -> Option<CycleWitness> {
    cycle_of_length_exactly_in(g.adjacency(), k)
}

/// Up to `limit` distinct cycles, taking at most `per_length` of each length
/// from 3 upwards, in search order.
pub fn sample_cycles(
    g: &PlaneGraph,
    per_length: usize,
    limit: usize,
    budget: Budget,
) -> Result<Vec<CycleWitness>> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for k in 3..=adj.len() {
        if out.len() >= limit {
            break;
        }
        let mut taken = 0;
        let _ = for_each_k_cycle(adj, vec![false; adj.len()], k, budget, &mut |c| {
            out.push(CycleWitness {
                vertices: c.to_vec(),
            });
            taken += 1;
            if taken >= per_length || out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
    }
    Ok(out)
}

/// Two vertex-disjoint `k`-cycles, if they exist, within `budget`.
pub fn two_disjoint_k_cycles_within(
    g: &PlaneGraph,
    k: usize,
    budget: Budget,
) -> Result<Option<DisjointCyclePairWitness>> {
    let adj = g.adjacency();
    let n = adj.len();
    if k < 3 || 2 * k > n {
        return Ok(None);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut pair = None;
    let mut inner_error = None;
    let outer = for_each_k_cycle(adj, vec![false; n], k, budget, &mut |c| {
        let mut key = c.to_vec();
        key.sort_unstable();
        if !seen.insert(key) {
            return ControlFlow::Continue(());
        }
        let mut excluded = vec![false; n];
        for &v in c {
            excluded[v] = true;
        }
        match first_k_cycle(adj, excluded, k, budget) {
            Ok(Some(second)) => {
                pair = Some(DisjointCyclePairWitness {
                    first: CycleWitness {
                        vertices: c.to_vec(),
                    },
                    second,
                });
                ControlFlow::Break(())
            }
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => {
                inner_error = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = inner_error {
        return Err(e);
    }
    let _ = outer?;
    Ok(pair)
}

pub fn two_disjoint_k_cycles(g: &PlaneGraph, k: usize) -> Option<DisjointCyclePairWitness> {
    two_disjoint_k_cycles_within(g, k, Budget::unlimited()).expect("unlimited budget")
}
