//! Polynomial-time k-plex lower bound.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::Peeler;
use crate::{Budget, Graph};

/// Largest residual graph of a minimum-degree peeling that is a k-plex.
/// Also returns the full peeling order and the core numbers.
pub(super) fn peel_residual(g: &Graph, k: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut peeler = Peeler::new(g);
    let mut order = Vec::with_capacity(n);
    let mut core = vec![0; n];
    let mut running = 0;
    let mut found = 0;
    while let Some((v, d)) = peeler.peek() {
        let r = peeler.remaining();
        // residuals only shrink, so the first k-plex residual is the largest
        if found == 0 && d + k >= r {
            found = r;
        }
        peeler.pop();
        running = running.max(d);
        core[v] = running;
        order.push(v);
    }
    let residual = order[n - found..].to_vec();
    (residual, order, core)
}

/// Reusable per-start state for greedy growth.
struct Grower {
    in_set: Vec<bool>,
    dead: Vec<bool>,
    adj: Vec<usize>,
    touched: Vec<usize>,
    hist: Vec<usize>,
}

impl Grower {
    fn new(n: usize) -> Self {
        Grower {
            in_set: vec![false; n],
            dead: vec![false; n],
            adj: vec![0; n],
            touched: Vec::new(),
            hist: vec![0; n + 1],
        }
    }

    fn reset(&mut self, members: &[usize]) {
        for &v in self.touched.iter().chain(members) {
            self.in_set[v] = false;
            self.dead[v] = false;
            self.adj[v] = 0;
        }
        for h in self.hist.iter_mut().take(members.len() + 1) {
            *h = 0;
        }
        self.touched.clear();
    }

    /// Grows `{start}` by repeatedly adding the valid candidate with the most
    /// neighbors in the set (smallest id on ties). `work` is decremented per
    /// adjacency entry scanned; growth stops early when it runs out, which
    /// still leaves a valid k-plex.
    fn grow(&mut self, g: &Graph, k: usize, start: usize, work: &mut usize) -> Vec<usize> {
        let mut set = Vec::new();
        let mut heap: BinaryHeap<(usize, Reverse<usize>)> = BinaryHeap::new();
        self.add(g, start, &mut set, &mut heap, work);
        while let Some((a, Reverse(c))) = heap.pop() {
            if *work == 0 {
                break;
            }
            *work -= 1;
            if self.in_set[c] || self.dead[c] || self.adj[c] != a {
                continue;
            }
            if self.valid(g, k, c, set.len(), work) {
                self.add(g, c, &mut set, &mut heap, work);
            } else {
                // non-neighbor counts inside the set never go down, so this is final
                self.dead[c] = true;
            }
        }
        set
    }

    fn valid(&self, g: &Graph, k: usize, c: usize, size: usize, work: &mut usize) -> bool {
        // c itself may miss at most k-1 members
        if self.adj[c] + k < size + 1 {
            return false;
        }
        // members already missing k-1 others must be adjacent to c
        if size < k {
            return true;
        }
        let critical = self.hist[size - k];
        if critical == 0 {
            return true;
        }
        *work = work.saturating_sub(g.degree(c));
        let seen = g
            .neighbors(c)
            .iter()
            .filter(|&&u| {
                let u = u as usize;
                self.in_set[u] && self.adj[u] + k == size
            })
            .count();
        seen == critical
    }

    fn add(
        &mut self,
        g: &Graph,
        v: usize,
        set: &mut Vec<usize>,
        heap: &mut BinaryHeap<(usize, Reverse<usize>)>,
        work: &mut usize,
    ) {
        self.in_set[v] = true;
        set.push(v);
        self.hist[self.adj[v]] += 1;
        *work = work.saturating_sub(g.degree(v));
        for &w in g.neighbors(v) {
            let w = w as usize;
            if self.adj[w] == 0 && !self.in_set[w] {
                self.touched.push(w);
            }
            self.adj[w] += 1;
            if self.in_set[w] {
                self.hist[self.adj[w] - 1] -= 1;
                self.hist[self.adj[w]] += 1;
            } else if !self.dead[w] {
                heap.push((self.adj[w], Reverse(w)));
            }
        }
    }
}

/// Best of the peeling residual and greedy growth from the last `starts`
/// vertices of the peeling order (highest cores first).
pub(super) fn heuristic(g: &Graph, k: usize, starts: usize, budget: &dyn Budget) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let (mut best, order, core) = peel_residual(g, k);
    let mut grower = Grower::new(n);
    let mut work = 16 * (n + 2 * g.m()) + 4096;
    for &v in order.iter().rev().take(starts) {
        if work == 0 || budget.expired() {
            break;
        }
        // a plex through v has minimum degree at most core(v), so at most
        // core(v) + k members; cores only fall from here on
        if core[v] + k <= best.len() {
            break;
        }
        let set = grower.grow(g, k, v, &mut work);
        if set.len() > best.len() {
            best = set.clone();
        }
        grower.reset(&set);
    }
    best.sort_unstable();
    debug_assert!(
        best.is_empty() || crate::graph::is_kplex(g, &best.iter().copied().collect(), k) == Ok(true),
        "heuristic produced a non-plex"
    );
    best
}
