//! Exhaustive reference answers for small graphs.
//!
//! Vertex sets are bitmasks over at most 26 vertices. Sizes are tried from
//! largest to smallest and the first size with a feasible subset wins; among
//! those the lexicographically smallest sorted vertex list is reported.

use alloc::vec::Vec;

use crate::{Error, Gamma, Graph, VertexSet};

/// Vertex-count cap for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    max_n: usize,
}

impl OracleLimit {
    /// Largest cap accepted.
    pub const CEILING: usize = 26;

    pub fn new(max_n: usize) -> Result<Self, Error> {
        if max_n > Self::CEILING {
            return Err(Error::InvalidParameter("oracle limit may not exceed 26"));
        }
        Ok(OracleLimit { max_n })
    }

    pub fn max_n(self) -> usize {
        self.max_n
    }

    fn admit(self, g: &Graph) -> Result<(), Error> {
        if g.n() > self.max_n {
            Err(Error::TooLarge {
                n: g.n(),
                max: self.max_n,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit { max_n: 20 }
    }
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Whether `a` precedes `b` as sorted vertex lists (same popcount).
fn lex_less(a: u32, b: u32) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

/// Largest subset passing `feasible`, ties to the lexicographically smallest.
fn largest(n: usize, feasible: impl Fn(u32, usize) -> bool) -> (usize, VertexSet) {
    for size in (1..=n).rev() {
        let mut found: Option<u32> = None;
        // Gosper's hack walks all masks of this popcount in increasing order
        let mut mask: u32 = (1u32 << size) - 1;
        let limit: u64 = 1u64 << n;
        while (mask as u64) < limit {
            if feasible(mask, size) && found.map_or(true, |f| lex_less(mask, f)) {
                found = Some(mask);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask.wrapping_add(c);
            if r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
        if let Some(f) = found {
            return (size, (0..n).filter(|&v| f >> v & 1 == 1).collect());
        }
    }
    (0, VertexSet::default())
}

/// Maximum γ-quasi-clique by enumeration, with the default vertex cap.
pub fn brute_max_qc(g: &Graph, gamma: Gamma) -> Result<(usize, VertexSet), Error> {
    brute_max_qc_with(g, gamma, OracleLimit::default())
}

pub fn brute_max_qc_with(g: &Graph, gamma: Gamma, limit: OracleLimit) -> Result<(usize, VertexSet), Error> {
    limit.admit(g)?;
    let adj = masks(g);
    Ok(largest(g.n(), |mask, size| {
        let need = gamma.degree_threshold(size) as u32;
        members(mask).all(|v| (adj[v] & mask).count_ones() >= need)
    }))
}

/// Maximum k-plex by enumeration, with the default vertex cap.
pub fn brute_max_kplex(g: &Graph, k: usize) -> Result<(usize, VertexSet), Error> {
    brute_max_kplex_with(g, k, OracleLimit::default())
}

pub fn brute_max_kplex_with(g: &Graph, k: usize, limit: OracleLimit) -> Result<(usize, VertexSet), Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    limit.admit(g)?;
    let adj = masks(g);
    Ok(largest(g.n(), |mask, size| {
        let need = size.saturating_sub(k) as u32;
        members(mask).all(|v| (adj[v] & mask).count_ones() >= need)
    }))
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Maximum clique size by Bron–Kerbosch with Tomita pivoting. Independent of
/// the subset enumeration above, so the two can cross-check each other.
pub fn max_clique_size(g: &Graph) -> Result<usize, Error> {
    OracleLimit::new(OracleLimit::CEILING)?.admit(g)?;
    fn bk(adj: &[u32], r: usize, mut p: u32, mut x: u32, best: &mut usize) {
        if p == 0 {
            if x == 0 {
                *best = (*best).max(r);
            }
            return;
        }
        let pivot = members(p | x)
            .max_by_key(|&u| (adj[u] & p).count_ones())
            .expect("p is nonempty");
        for v in members(p & !adj[pivot]) {
            bk(adj, r + 1, p & adj[v], x & adj[v], best);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let adj = masks(g);
    let mut best = 0;
    let all = (1u32 << g.n()) - 1;
    bk(&adj, 0, all, 0, &mut best);
    Ok(best)
}
