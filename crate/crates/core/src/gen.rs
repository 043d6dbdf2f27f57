//! Seeded synthetic graphs: scale-free (preferential attachment) and
//! small-world (rewired ring lattice). All randomness comes from ChaCha8
//! seeded with the caller's `u64`, so output is identical across platforms.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Graph};

/// Random generator used for every seeded choice in this crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Preferential attachment. Starts from a star on `w` vertices (center 0),
/// then each new vertex links to `w` distinct existing vertices drawn with
/// probability proportional to degree. Has `(w-1) + (n-w)·w` edges.
pub fn gen_sf(n: usize, w: usize, seed: u64) -> Result<Graph, Error> {
    if w == 0 || w >= n {
        return Err(Error::InvalidParameter("scale-free graphs need 1 <= w < n"));
    }
    let mut rng = rng(seed);
    let mut edges: Vec<(usize, usize)> = (1..w).map(|v| (0, v)).collect();
    // every edge contributes both endpoints, so a uniform pick is degree-weighted
    let mut ends: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut picked: Vec<usize> = Vec::with_capacity(w);
    for v in w..n {
        picked.clear();
        while picked.len() < w {
            let t = if ends.is_empty() {
                rng.gen_range(0..v)
            } else {
                ends[rng.gen_range(0..ends.len())]
            };
            if !picked.contains(&t) {
                picked.push(t);
            }
        }
        for &t in &picked {
            edges.push((t, v));
            ends.push(t);
            ends.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Ring lattice rewired with probability `p`. Vertex `i` links to its
/// `⌈d/2⌉` predecessors and `⌊d/2⌋` successors on the ring, so odd `d`
/// gives every vertex both neighbors at distance `⌈d/2⌉`. Each lattice edge
/// `(u, u+j)` is then visited once, and with probability `p` its far end is
/// moved to a uniform vertex not already adjacent to `u`. Edge count is
/// unchanged by rewiring.
pub fn gen_sw(n: usize, d: usize, p: f64, seed: u64) -> Result<Graph, Error> {
    if d == 0 || d >= n {
        return Err(Error::InvalidParameter("small-world graphs need 0 < d < n"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("rewiring probability must lie in [0, 1]"));
    }
    let reach = d.div_ceil(2);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut lattice = Vec::new();
    for j in 1..=reach {
        for u in 0..n {
            let v = (u + j) % n;
            if adj[u].insert(v) {
                adj[v].insert(u);
                lattice.push((u, v));
            }
        }
    }
    let mut rng = rng(seed);
    for (u, v) in lattice {
        if !rng.gen_bool(p) || adj[u].len() + 1 >= n || !adj[u].contains(&v) {
            continue;
        }
        let w = loop {
            let w = rng.gen_range(0..n);
            if w != u && !adj[u].contains(&w) {
                break w;
            }
        };
        adj[u].remove(&v);
        adj[v].remove(&u);
        adj[u].insert(w);
        adj[w].insert(u);
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, edges)
}

/// G(n, p): each of the `n(n-1)/2` pairs is an edge independently with
/// probability `p`, decided in lexicographic pair order.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("edge probability must lie in [0, 1]"));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Subgraph induced by `count` vertices drawn uniformly without replacement.
pub fn sample_subgraph(g: &Graph, count: usize, seed: u64) -> Graph {
    let mut ids: Vec<usize> = (0..g.n()).collect();
    let count = count.min(g.n());
    ids.partial_shuffle(&mut rng(seed), count);
    let mut keep = ids[..count].to_vec();
    keep.sort_unstable();
    g.induced_subgraph(&keep)
}
