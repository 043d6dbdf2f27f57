//! Maximum k-plex subproblems.
//!
//! A k-plex is a vertex set in which every member is adjacent to all but at
//! most `k` members, itself included. Unlike quasi-cliques, k-plexes are
//! closed under taking subsets, so branch-and-bound works directly.

mod bnb;
mod heuristic;

use alloc::vec::Vec;

use crate::{Budget, Error, Graph, Unlimited, VertexSet};

/// Tuning knobs for the k-plex routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlexConfig {
    /// Greedy-growth starts tried by the heuristic, taken from the top of the
    /// degeneracy order.
    pub heu_starts: usize,
    /// Drop candidates farther than two hops from every solution member.
    /// Only sound when any plex of interest has diameter at most two, which
    /// holds for γ-quasi-cliques with γ ≥ 0.5.
    pub qc_diameter_filter: bool,
}

impl Default for PlexConfig {
    fn default() -> Self {
        PlexConfig {
            heu_starts: 100,
            qc_diameter_filter: false,
        }
    }
}

/// Result of [`plex_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlexOutcome {
    /// Size floor handed to the exact search.
    pub pseudo_lb: usize,
    /// Size of `witness`; 0 iff no k-plex of size at least `pseudo_lb` exists.
    pub pseudo_size: usize,
    pub witness: VertexSet,
    /// Size of the heuristic solution.
    pub lb_plex: usize,
    /// Whether the exact search ran (it is skipped when the heuristic meets `ub_plex`).
    pub used_brb: bool,
    /// False if the budget ran out; the other fields then describe the best
    /// plex seen and carry no optimality guarantee.
    pub complete: bool,
}

/// Work counters accumulated by a [`PlexSolver`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlexStats {
    pub heu_calls: u64,
    pub brb_calls: u64,
    pub bnb_nodes: u64,
}

/// k-plex routines sharing a configuration, a budget and counters.
pub struct PlexSolver<'b> {
    pub config: PlexConfig,
    pub stats: PlexStats,
    budget: &'b dyn Budget,
}

impl<'b> PlexSolver<'b> {
    pub fn new(config: PlexConfig, budget: &'b dyn Budget) -> Self {
        PlexSolver {
            config,
            stats: PlexStats::default(),
            budget,
        }
    }

    /// A large k-plex found greedily, sorted by vertex id.
    pub fn heuristic(&mut self, g: &Graph, k: usize) -> Vec<usize> {
        self.stats.heu_calls += 1;
        heuristic::heuristic(g, k, self.config.heu_starts, self.budget)
    }

    /// A maximum k-plex if one has at least `floor` vertices, else empty.
    /// `incumbent` must be a k-plex of `g`; it is returned unless something
    /// larger exists. The flag is false if the budget expired first.
    pub fn exact(
        &mut self,
        g: &Graph,
        k: usize,
        floor: usize,
        incumbent: Option<Vec<usize>>,
    ) -> (Vec<usize>, bool) {
        self.stats.brb_calls += 1;
        let floor = floor.max(1);
        let incumbent = incumbent.filter(|s| s.len() >= floor);
        let mut ex = bnb::Exact {
            k,
            target: incumbent.as_ref().map_or(floor, |s| s.len() + 1),
            best: incumbent,
            nodes: 0,
            aborted: false,
            qc_diameter_filter: self.config.qc_diameter_filter,
            budget: self.budget,
        };
        ex.solve(g);
        self.stats.bnb_nodes += ex.nodes;
        let mut best = ex.best.unwrap_or_default();
        best.sort_unstable();
        (best, !ex.aborted)
    }

    /// Heuristic lower bound, then an exact search above a pseudo lower
    /// bound: the midpoint of heuristic size and `ub_plex` when `use_plb`,
    /// otherwise the heuristic size itself. `ub_plex` must bound the maximum
    /// k-plex size of `g`.
    pub fn search(&mut self, g: &Graph, k: usize, ub_plex: usize, use_plb: bool) -> PlexOutcome {
        let heu = self.heuristic(g, k);
        let lb_plex = heu.len();
        if lb_plex >= ub_plex {
            return PlexOutcome {
                pseudo_lb: lb_plex,
                pseudo_size: lb_plex,
                witness: heu.into_iter().collect(),
                lb_plex,
                used_brb: false,
                complete: !self.budget.expired(),
            };
        }
        let pseudo_lb = if use_plb { pseudo_lb(lb_plex, ub_plex) } else { lb_plex };
        let (best, complete) = self.exact(g, k, pseudo_lb, Some(heu));
        PlexOutcome {
            pseudo_lb,
            pseudo_size: best.len(),
            witness: best.into_iter().collect(),
            lb_plex,
            used_brb: true,
            complete,
        }
    }
}

/// Midpoint `⌊(lb + ub)/2⌋` used as the exact search floor.
pub fn pseudo_lb(lb_plex: usize, ub_plex: usize) -> usize {
    (lb_plex + ub_plex) / 2
}

fn check_k(k: usize) -> Result<(), Error> {
    if k == 0 {
        Err(Error::InvalidK)
    } else {
        Ok(())
    }
}

/// Greedy k-plex; empty only for the empty graph.
pub fn plex_heu(g: &Graph, k: usize) -> Result<VertexSet, Error> {
    check_k(k)?;
    Ok(PlexSolver::new(PlexConfig::default(), &Unlimited)
        .heuristic(g, k)
        .into_iter()
        .collect())
}

/// A maximum k-plex of `g` if it has at least `floor` vertices, else the empty set.
pub fn plex_brb(g: &Graph, k: usize, floor: usize) -> Result<VertexSet, Error> {
    check_k(k)?;
    if floor == 0 {
        return Err(Error::InvalidParameter("floor must be at least 1"));
    }
    let (best, _) = PlexSolver::new(PlexConfig::default(), &Unlimited).exact(g, k, floor, None);
    Ok(best.into_iter().collect())
}

/// See [`PlexSolver::search`]; always uses the midpoint pseudo lower bound.
pub fn plex_search(g: &Graph, k: usize, ub_plex: usize) -> Result<PlexOutcome, Error> {
    check_k(k)?;
    if ub_plex == 0 {
        return Err(Error::InvalidParameter("ub_plex must be at least 1"));
    }
    Ok(PlexSolver::new(PlexConfig::default(), &Unlimited).search(g, k, ub_plex, true))
}
