//! Branch-and-bound path search shared by the cycle oracles.
//!
//! Cycles are grown as paths from their smallest vertex `s`, so only
//! vertices `>= s` are allowed. At a path ending in `v`, every completion is
//! a `v`-`s` path avoiding the path interior; together with the virtual edge
//! `vs` it forms a cycle, so it stays inside the block `U` of that edge. An
//! independent set `I` of `U - {v, s}` then caps the number of new vertices:
//! no two of them are consecutive, so at most `2 |U - {v, s} - I| + 1`.
//!
//! Each cycle is taken in the direction where the neighbor of `s` that
//! follows it is smaller than the one that precedes it.

use std::ops::ControlFlow;
use std::time::Instant;

use super::Budget;

pub(crate) struct Kernel<'a> {
    adj: &'a [Vec<usize>],
    allowed: Vec<bool>,
    excluded: Vec<bool>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    // scratch for the block and independent-set bound
    mark: Vec<u32>,
    gen: u32,
    disc: Vec<u32>,
    low: Vec<u32>,
    vstack: Vec<usize>,
    cstack: Vec<(usize, usize, usize)>,
    in_block: Vec<u32>,
    picked: Vec<u32>,
    order: Vec<(usize, usize)>,
    chosen: Vec<usize>,
    load: Vec<usize>,
    mate: Vec<usize>,
    seen: Vec<u64>,
    round: u64,
    queue: Vec<usize>,
    dist: Vec<u32>,
    // budget
    nodes: u64,
    budget: Budget,
    started: Instant,
    pub(crate) exceeded: bool,
}

impl<'a> Kernel<'a> {
    pub(crate) fn new(adj: &'a [Vec<usize>], excluded: Vec<bool>, budget: Budget) -> Self {
        let n = adj.len();
        Kernel {
            adj,
            allowed: vec![false; n],
            excluded,
            on_path: vec![false; n],
            path: Vec::with_capacity(n),
            mark: vec![0; n],
            gen: 0,
            disc: vec![0; n],
            low: vec![0; n],
            vstack: Vec::with_capacity(n),
            cstack: Vec::with_capacity(n),
            in_block: vec![0; n],
            picked: vec![0; n],
            order: Vec::with_capacity(n),
            chosen: Vec::with_capacity(n),
            load: vec![0; n],
            mate: vec![usize::MAX; n],
            seen: vec![0; n],
            round: 0,
            queue: Vec::with_capacity(n),
            dist: vec![0; n],
            nodes: 0,
            budget,
            started: Instant::now(),
            exceeded: false,
        }
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(cap) = self.budget.max_nodes {
            if self.nodes > cap {
                self.exceeded = true;
            }
        }
        if self.nodes.is_multiple_of(256) {
            if let Some(limit) = self.budget.max_time {
                if self.started.elapsed() > limit {
                    self.exceeded = true;
                }
            }
        }
        self.exceeded
    }

    fn next_gen(&mut self) -> u32 {
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.mark.fill(0);
            self.in_block.fill(0);
            self.picked.fill(0);
            self.gen = 1;
        }
        self.gen
    }

    /// Restricts the search to cycles whose smallest vertex is `s`.
    fn set_start(&mut self, s: usize) {
        for x in 0..self.adj.len() {
            self.allowed[x] = x >= s && !self.excluded[x];
        }
    }

    fn usable(&self, x: usize) -> bool {
        self.allowed[x] && !self.on_path[x]
    }

    /// Upper bound on the number of vertices a completion of the current
    /// path can still add.
    fn extra_bound(&mut self) -> usize {
        let s = self.path[0];
        let v = *self.path.last().expect("path");
        let first = self.path[1];
        let g = self.next_gen();
        self.mark[s] = g;
        self.disc[s] = 0;
        self.mark[v] = g;
        self.disc[v] = 1;
        self.low[v] = 1;
        let mut time = 2;
        self.vstack.clear();
        self.vstack.push(v);
        self.cstack.clear();
        self.cstack.push((v, s, 0));
        while let Some(top) = self.cstack.last_mut() {
            let (u, parent, i) = *top;
            if i < self.adj[u].len() {
                top.2 += 1;
                let w = self.adj[u][i];
                if w == parent {
                    continue;
                }
                if w == s && u < first {
                    // Closing edges into s are only taken from vertices
                    // above path[1]; the mirror image covers the rest.
                    continue;
                }
                if self.mark[w] == g {
                    self.low[u] = self.low[u].min(self.disc[w]);
                } else if self.usable(w) {
                    self.mark[w] = g;
                    self.disc[w] = time;
                    self.low[w] = time;
                    time += 1;
                    self.vstack.push(w);
                    self.cstack.push((w, u, 0));
                }
            } else {
                self.cstack.pop();
                if parent == s {
                    break;
                }
                self.low[parent] = self.low[parent].min(self.low[u]);
                if self.low[u] >= self.disc[parent] {
                    while let Some(x) = self.vstack.pop() {
                        if x == u {
                            break;
                        }
                    }
                }
            }
        }
        // vstack now holds U - {s}, starting with v.
        let inner = self.vstack.len() - 1;
        if inner == 0 {
            return 0;
        }
        let b = g;
        self.in_block[s] = b;
        for &x in &self.vstack {
            self.in_block[x] = b;
        }
        self.order.clear();
        self.load[s] = 0;
        for &x in &self.vstack {
            self.load[x] = 0;
        }
        for j in 1..self.vstack.len() {
            let x = self.vstack[j];
            let d = self.adj[x]
                .iter()
                .filter(|&&y| self.in_block[y] == b && !(y == s && x < first))
                .count();
            self.order.push((d, x));
        }
        // A vertex with two usable neighbors needs both of them, and each
        // vertex can serve at most two such (v and s only one).
        let mut overload = 0usize;
        for j in 0..self.order.len() {
            let (d, x) = self.order[j];
            if d == 2 {
                for &y in &self.adj[x] {
                    if self.in_block[y] == b && !(y == s && x < first) {
                        self.load[y] += 1;
                        let cap = if y == s || y == v { 1 } else { 2 };
                        if self.load[y] > cap {
                            overload += 1;
                        }
                    }
                }
            }
        }
        let skipped = overload.div_ceil(2);
        self.order.sort_unstable();
        self.chosen.clear();
        for j in 0..self.order.len() {
            let x = self.order[j].1;
            if self.adj[x].iter().all(|&y| self.picked[y] != b) {
                self.picked[x] = b;
                self.chosen.push(x);
            }
        }
        let rest = inner - self.chosen.len();
        // Each chosen vertex on the completion has its own predecessor
        // outside the set, so a matching into predecessors also caps them.
        let matched = self.predecessor_matching(s, b);
        (inner - skipped).min(rest + matched.min(rest + 1))
    }

    /// Maximum matching from `chosen` into block vertices other than `s`.
    fn predecessor_matching(&mut self, s: usize, b: u32) -> usize {
        for &x in &self.vstack {
            self.mate[x] = usize::MAX;
        }
        let mut size = 0;
        for j in 0..self.chosen.len() {
            let y = self.chosen[j];
            self.round = self.round.wrapping_add(1);
            if self.augment(y, s, b) {
                size += 1;
            }
        }
        size
    }

    fn augment(&mut self, y: usize, s: usize, b: u32) -> bool {
        for i in 0..self.adj[y].len() {
            let x = self.adj[y][i];
            if x == s || self.in_block[x] != b || self.seen[x] == self.round {
                continue;
            }
            self.seen[x] = self.round;
            let m = self.mate[x];
            if m == usize::MAX || self.augment(m, s, b) {
                self.mate[x] = y;
                return true;
            }
        }
        false
    }

    /// Number of interior vertices on a shortest completion, if any.
    fn completion_distance(&mut self) -> Option<usize> {
        let s = self.path[0];
        let v = *self.path.last().expect("path");
        if self.adjacent(v, s) {
            return Some(0);
        }
        let first = self.path[1];
        let g = self.next_gen();
        self.queue.clear();
        self.queue.push(v);
        self.mark[v] = g;
        self.dist[v] = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &y in &self.adj[x] {
                if y == s && x > first {
                    return Some(self.dist[x] as usize);
                }
                if self.mark[y] != g && self.usable(y) {
                    self.mark[y] = g;
                    self.dist[y] = self.dist[x] + 1;
                    self.queue.push(y);
                }
            }
        }
        None
    }

    /// Usable neighbors of `v`, those with fewer usable neighbors first and
    /// then by id.
    fn successors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<(usize, usize)> = self.adj[v]
            .iter()
            .filter(|&&w| self.usable(w))
            .map(|&w| (self.adj[w].iter().filter(|&&y| self.usable(y)).count(), w))
            .collect();
        out.sort_unstable();
        out.into_iter().map(|(_, w)| w).collect()
    }

    /// Upper bound on the length of any cycle whose smallest vertex is `s`.
    pub(crate) fn start_bound(&mut self, s: usize) -> usize {
        if self.excluded[s] {
            return 0;
        }
        self.set_start(s);
        let mut best = 0;
        self.path.clear();
        self.path.push(s);
        self.on_path[s] = true;
        for i in 0..self.adj[s].len() {
            let x = self.adj[s][i];
            if !self.usable(x) {
                continue;
            }
            self.path.push(x);
            self.on_path[x] = true;
            let extra = self.extra_bound();
            if extra > 0 {
                best = best.max(2 + extra);
            }
            self.on_path[x] = false;
            self.path.pop();
        }
        self.on_path[s] = false;
        self.path.clear();
        best
    }

    /// Longest cycle with smallest vertex `s` that is longer than `*best_len`.
    /// Stops early once a cycle of length `stop_at` is found.
    pub(crate) fn longest_from(
        &mut self,
        s: usize,
        best_len: &mut usize,
        best: &mut Option<Vec<usize>>,
        stop_at: usize,
    ) -> ControlFlow<()> {
        if self.excluded[s] {
            return ControlFlow::Continue(());
        }
        self.set_start(s);
        self.path.clear();
        self.path.push(s);
        self.on_path[s] = true;
        let r = self.dfs_longest(best_len, best, stop_at);
        for &x in &self.path {
            self.on_path[x] = false;
        }
        self.path.clear();
        r
    }

    fn dfs_longest(
        &mut self,
        best_len: &mut usize,
        best: &mut Option<Vec<usize>>,
        stop_at: usize,
    ) -> ControlFlow<()> {
        if self.tick() {
            return ControlFlow::Break(());
        }
        let s = self.path[0];
        let v = *self.path.last().expect("path");
        let p = self.path.len();
        if p >= 3 && p > *best_len && v > self.path[1] && self.adjacent(v, s) {
            *best_len = p;
            *best = Some(self.path.clone());
            if p >= stop_at {
                return ControlFlow::Break(());
            }
        }
        if p >= 2 && p + self.extra_bound() <= *best_len {
            return ControlFlow::Continue(());
        }
        for w in self.successors(v) {
            self.path.push(w);
            self.on_path[w] = true;
            let r = self.dfs_longest(best_len, best, stop_at);
            self.on_path[w] = false;
            self.path.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    /// Calls `visit` on every `k`-cycle with smallest vertex `s`, each once.
    pub(crate) fn exact_from(
        &mut self,
        s: usize,
        k: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        // Excluded vertices may not start a cycle either.
        if self.excluded[s] {
            return ControlFlow::Continue(());
        }
        self.set_start(s);
        if self.allowed.iter().filter(|&&a| a).count() < k {
            return ControlFlow::Continue(());
        }
        self.path.clear();
        self.path.push(s);
        self.on_path[s] = true;
        let r = self.dfs_exact(k, visit);
        for &x in &self.path {
            self.on_path[x] = false;
        }
        self.path.clear();
        r
    }

    fn dfs_exact(
        &mut self,
        k: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.tick() {
            return ControlFlow::Break(());
        }
        let s = self.path[0];
        let v = *self.path.last().expect("path");
        let p = self.path.len();
        if p == k {
            if self.adjacent(v, s) && self.path[1] < v {
                return visit(&self.path);
            }
            return ControlFlow::Continue(());
        }
        if p >= 2 {
            match self.completion_distance() {
                Some(d) if p + d <= k => {}
                _ => return ControlFlow::Continue(()),
            }
            if p + self.extra_bound() < k {
                return ControlFlow::Continue(());
            }
        }
        for w in self.successors(v) {
            self.path.push(w);
            self.on_path[w] = true;
            let r = self.dfs_exact(k, visit);
            self.on_path[w] = false;
            self.path.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}
