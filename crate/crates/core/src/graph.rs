//! Immutable undirected simple graphs in CSR form, plus the degree and core
//! machinery every solver shares.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::{Error, Gamma};

/// Undirected simple graph. Vertices are `0..n`; each neighbor list is
/// strictly ascending and the adjacency relation is symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<u32>,
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops and repeated edges are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter("vertex count exceeds u32 range"));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                pairs.push((u as u32, v as u32));
                pairs.push((v as u32, u as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let adj = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Graph {
            offsets,
            adj,
            labels: None,
        })
    }

    /// Builds a graph from edges over arbitrary integer ids. Ids are compacted
    /// to `0..n` in ascending order and kept as labels.
    pub fn from_labeled_edges<I>(edges: I) -> Graph
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let raw: Vec<(u64, u64)> = edges.into_iter().collect();
        let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index = |x: u64| ids.binary_search(&x).expect("id collected above");
        let compact: Vec<(usize, usize)> = raw.iter().map(|&(u, v)| (index(u), index(v))).collect();
        let mut g = Graph::from_edges(ids.len(), compact).expect("ids are in range");
        g.labels = Some(ids);
        g
    }

    /// Attaches external ids to the vertices.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Graph, Error> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter("label count must equal vertex count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn empty() -> Graph {
        Graph {
            offsets: vec![0],
            adj: Vec::new(),
            labels: None,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor slice of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// External id of `v`; the vertex index itself when no labels are attached.
    pub fn label(&self, v: usize) -> u64 {
        match &self.labels {
            Some(l) => l[v],
            None => v as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `2m / (n(n-1))`; reporting only.
    pub fn density(&self) -> f64 {
        let n = self.n() as f64;
        if n < 2.0 {
            return 0.0;
        }
        2.0 * self.m() as f64 / (n * (n - 1.0))
    }

    /// Subgraph induced by `keep` (ascending, distinct). Vertex `i` of the
    /// result is `keep[i]`; labels carry through to the parent's labels.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut map = vec![u32::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i as u32;
        }
        let mut offsets = Vec::with_capacity(keep.len() + 1);
        offsets.push(0);
        let mut adj = Vec::new();
        for &v in keep {
            // parent lists are sorted and `map` is monotone on `keep`
            adj.extend(
                self.neighbors(v)
                    .iter()
                    .map(|&w| map[w as usize])
                    .filter(|&w| w != u32::MAX),
            );
            offsets.push(adj.len());
        }
        let labels = Some(keep.iter().map(|&v| self.label(v)).collect());
        Graph {
            offsets,
            adj,
            labels,
        }
    }

    /// Checks the structural invariants. Intended for tests and debug builds.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        if self.offsets[0] != 0 || self.offsets[n] != self.adj.len() || self.adj.len() % 2 != 0 {
            return false;
        }
        for v in 0..n {
            let nb = self.neighbors(v);
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &w in nb {
                let w = w as usize;
                if w == v || w >= n || !self.has_edge(w, v) {
                    return false;
                }
            }
        }
        self.labels.as_ref().map_or(true, |l| l.len() == n)
    }
}

/// Distinct vertex ids, kept sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Validates that every id is below `n`. Duplicates are merged.
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<VertexSet, Error> {
        let set: VertexSet = members.into_iter().collect();
        match set.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(set),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Maps every member through `f` (e.g. from a reduced graph back to the
    /// graph it was cut from).
    pub fn map(&self, f: impl Fn(usize) -> usize) -> VertexSet {
        self.0.iter().map(|&v| f(v)).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

/// `|N(v) ∩ s|`
pub fn induced_degree(g: &Graph, s: &VertexSet, v: usize) -> Result<usize, Error> {
    if !s.contains(v) {
        return Err(Error::VertexNotInSet(v));
    }
    Ok(count_in(g, s, v))
}

fn count_in(g: &Graph, s: &VertexSet, v: usize) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&w| s.contains(w as usize))
        .count()
}

fn check_members(g: &Graph, s: &VertexSet) -> Result<(), Error> {
    if s.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    match s.as_slice().last() {
        Some(&v) if v >= g.n() => Err(Error::VertexOutOfRange { vertex: v, n: g.n() }),
        _ => Ok(()),
    }
}

/// Every member has at least `⌈γ(|s|-1)⌉` neighbors inside `s`.
pub fn is_quasi_clique(g: &Graph, s: &VertexSet, gamma: Gamma) -> Result<bool, Error> {
    check_members(g, s)?;
    let need = gamma.degree_threshold(s.len());
    Ok(s.iter().all(|v| count_in(g, s, v) >= need))
}

/// Every member has at least `|s| - k` neighbors inside `s`.
pub fn is_kplex(g: &Graph, s: &VertexSet, k: usize) -> Result<bool, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    check_members(g, s)?;
    let need = s.len().saturating_sub(k);
    Ok(s.iter().all(|v| count_in(g, s, v) >= need))
}

/// Core numbers and the peeling order that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core: Vec<usize>,
    pub peel_order: Vec<usize>,
    pub max_core: usize,
    pub degeneracy: usize,
}

impl CoreInfo {
    /// Every vertex has at least `core(u)` neighbors whose core is at least `core(u)`.
    pub fn witnesses_hold(&self, g: &Graph) -> bool {
        (0..g.n()).all(|u| {
            let c = self.core[u];
            g.neighbors(u)
                .iter()
                .filter(|&&w| self.core[w as usize] >= c)
                .count()
                >= c
        })
    }
}

/// Repeated removal of a minimum-degree vertex, smallest id first among ties.
///
/// Buckets are indexed by current degree and hold lazily invalidated entries,
/// so a vertex may appear in several buckets but is only valid in the one
/// matching its current degree.
pub(crate) struct Peeler<'g> {
    g: &'g Graph,
    degree: Vec<usize>,
    removed: Vec<bool>,
    buckets: Vec<BinaryHeap<Reverse<u32>>>,
    min_bucket: usize,
    remaining: usize,
}

impl<'g> Peeler<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let maxd = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<BinaryHeap<Reverse<u32>>> = (0..=maxd).map(|_| BinaryHeap::new()).collect();
        for (v, &d) in degree.iter().enumerate() {
            buckets[d].push(Reverse(v as u32));
        }
        Peeler {
            g,
            degree,
            removed: vec![false; n],
            buckets,
            min_bucket: 0,
            remaining: n,
        }
    }

    pub(crate) fn remaining(&self) -> usize {
        self.remaining
    }

    pub(crate) fn is_alive(&self, v: usize) -> bool {
        !self.removed[v]
    }

    /// Current minimum-degree vertex and its degree, without removing it.
    pub(crate) fn peek(&mut self) -> Option<(usize, usize)> {
        while self.min_bucket < self.buckets.len() {
            let bucket = &mut self.buckets[self.min_bucket];
            match bucket.peek() {
                Some(&Reverse(v)) => {
                    let v = v as usize;
                    if self.removed[v] || self.degree[v] != self.min_bucket {
                        bucket.pop();
                    } else {
                        return Some((v, self.min_bucket));
                    }
                }
                None => self.min_bucket += 1,
            }
        }
        None
    }

    /// Removes `v`, calling `on_decrement(w, new_degree)` for each live neighbor.
    pub(crate) fn remove_with(&mut self, v: usize, mut on_decrement: impl FnMut(usize, usize)) {
        debug_assert!(!self.removed[v]);
        self.removed[v] = true;
        self.remaining -= 1;
        let d = self.degree[v];
        for &w in self.g.neighbors(v) {
            let w = w as usize;
            if !self.removed[w] {
                self.degree[w] -= 1;
                let nd = self.degree[w];
                self.buckets[nd].push(Reverse(w as u32));
                on_decrement(w, nd);
            }
        }
        self.min_bucket = self.min_bucket.min(d.saturating_sub(1));
    }

    pub(crate) fn pop(&mut self) -> Option<(usize, usize)> {
        let (v, d) = self.peek()?;
        self.remove_with(v, |_, _| {});
        Some((v, d))
    }
}

/// Core decomposition by minimum-degree peeling.
pub fn core_decompose(g: &Graph) -> CoreInfo {
    let mut peeler = Peeler::new(g);
    let mut core = vec![0; g.n()];
    let mut peel_order = Vec::with_capacity(g.n());
    let mut running = 0;
    while let Some((v, d)) = peeler.pop() {
        running = running.max(d);
        core[v] = running;
        peel_order.push(v);
    }
    CoreInfo {
        core,
        peel_order,
        max_core: running,
        degeneracy: running,
    }
}

/// Cascading removal of every vertex whose live degree is below `threshold`.
/// Returns the survivor mask (the `threshold`-core) and the number of survivors.
pub(crate) fn threshold_core(g: &Graph, threshold: usize) -> (Vec<bool>, usize) {
    let n = g.n();
    let mut alive = vec![true; n];
    if threshold == 0 {
        return (alive, n);
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < threshold).collect();
    for &v in &stack {
        alive[v] = false;
    }
    let mut survivors = n - stack.len();
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                degree[w] -= 1;
                if degree[w] < threshold {
                    alive[w] = false;
                    survivors -= 1;
                    stack.push(w);
                }
            }
        }
    }
    (alive, survivors)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    /// K4 without the edge (2,3).
    pub fn k4_minus_edge() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }
}
