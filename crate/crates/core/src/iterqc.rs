//! The iterative driver: bound the optimum by peeling, then shrink it through
//! a sequence of maximum k-plex problems until `k` stops changing.
//!
//! Every γ-quasi-clique of size `x` is a `get_k(x)`-plex, and a `get_k(s)`-plex
//! with at least `s` vertices is a γ-quasi-clique. So with `s ≥ s*` the
//! maximum `get_k(s)`-plex size is again at least `s*`, and equality of `k`
//! across one step certifies the answer.

use alloc::vec::Vec;

use crate::graph::{is_quasi_clique, Peeler};
use crate::kplex::{PlexConfig, PlexSolver};
use crate::{get_bounds, reduce_graph, BoundsResult, Budget, Error, Gamma, Graph, VertexSet};

/// `⌊(1-γ)(x-1)⌋ + 1`, the k-plex relaxation of a γ-quasi-clique of size `x`.
pub fn get_k(x: usize, gamma: Gamma) -> Result<usize, Error> {
    if x == 0 {
        return Err(Error::InvalidParameter("get_k needs x >= 1"));
    }
    Ok(gamma.floor_complement_mul(x - 1) + 1)
}

fn k_of(x: usize, gamma: Gamma) -> usize {
    gamma.floor_complement_mul(x.max(1) - 1) + 1
}

/// Which iteration scheme stage two runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Start from `n` and solve each k-plex problem exactly.
    Basic,
    /// Start from the preprocessing upper bound and use a pseudo lower bound.
    #[default]
    Improved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Peeling bounds and degree reduction before the iterations.
    pub use_pp: bool,
    /// Midpoint pseudo lower bound in each k-plex search (improved mode).
    pub use_plb: bool,
    pub mode: Mode,
    pub plex: PlexConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            use_pp: true,
            use_plb: true,
            mode: Mode::Improved,
            plex: PlexConfig::default(),
        }
    }
}

/// One step of the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterTraceEntry {
    pub i: usize,
    pub k: usize,
    pub s: usize,
    /// Improved mode only.
    pub pseudo_lb: Option<usize>,
    pub pseudo_size: Option<usize>,
    /// Time since the solve started, per the budget's clock.
    pub elapsed_ms: u64,
}

/// Work counters of one solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub heu_calls: u64,
    pub brb_calls: u64,
    pub bnb_nodes: u64,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub gamma: Gamma,
    /// Optimum size if `optimal`, otherwise the best size found.
    pub s_star: usize,
    /// Vertices of the input graph; use [`Graph::label`] for external ids.
    pub witness: VertexSet,
    pub trace: Vec<IterTraceEntry>,
    /// Present iff preprocessing ran.
    pub bounds: Option<BoundsResult>,
    /// The starting value `s_0` of the iteration.
    pub ub: usize,
    pub red_v_pct: f64,
    pub red_e_pct: f64,
    pub options: SolveOptions,
    /// False if the budget expired before the answer was certified.
    pub optimal: bool,
    pub total_ms: u64,
    pub stats: SolveStats,
}

/// Stage-two state shared by both iteration schemes.
struct Iteration<'b> {
    gamma: Gamma,
    plex: PlexSolver<'b>,
    budget: &'b dyn Budget,
    trace: Vec<IterTraceEntry>,
    /// Largest quasi-clique seen, as a fallback when time runs out.
    best_qc: Vec<usize>,
}

struct Outcome {
    s: usize,
    witness: Vec<usize>,
    complete: bool,
}

impl<'b> Iteration<'b> {
    fn new(gamma: Gamma, config: PlexConfig, budget: &'b dyn Budget) -> Self {
        Iteration {
            gamma,
            plex: PlexSolver::new(config, budget),
            budget,
            trace: Vec::new(),
            best_qc: Vec::new(),
        }
    }

    /// Keeps `set` as the fallback if it beats the current one, after peeling
    /// minimum-degree members until what is left is a quasi-clique.
    fn offer(&mut self, g: &Graph, set: &[usize]) {
        if set.len() <= self.best_qc.len() {
            return;
        }
        let s: VertexSet = set.iter().copied().collect();
        if is_quasi_clique(g, &s, self.gamma).unwrap_or(false) {
            self.best_qc = s.into_vec();
            return;
        }
        let members = s.into_vec();
        let h = g.induced_subgraph(&members);
        let mut peeler = Peeler::new(&h);
        while let Some((_, d)) = peeler.peek() {
            if d >= self.gamma.degree_threshold(peeler.remaining()) {
                break;
            }
            peeler.pop();
        }
        if peeler.remaining() > self.best_qc.len() {
            self.best_qc = (0..h.n()).filter(|&v| peeler.is_alive(v)).map(|v| members[v]).collect();
        }
    }

    fn push(&mut self, k: usize, s: usize, pseudo: Option<(usize, usize)>) {
        self.trace.push(IterTraceEntry {
            i: self.trace.len() + 1,
            k,
            s,
            pseudo_lb: pseudo.map(|p| p.0),
            pseudo_size: pseudo.map(|p| p.1),
            elapsed_ms: self.budget.elapsed_ms(),
        });
    }

    fn timed_out(&self) -> Outcome {
        Outcome {
            s: self.best_qc.len(),
            witness: self.best_qc.clone(),
            complete: false,
        }
    }

    fn basic(&mut self, g: &Graph, s0: usize) -> Outcome {
        let mut prev = s0;
        loop {
            let k = k_of(prev, self.gamma);
            // prev bounds the maximum k-plex, so a heuristic hit is already optimal
            let heu = self.plex.heuristic(g, k);
            self.offer(g, &heu);
            let (plex, complete) = if heu.len() >= prev {
                (heu, true)
            } else {
                self.plex.exact(g, k, 1, Some(heu))
            };
            self.offer(g, &plex);
            if !complete {
                return self.timed_out();
            }
            let s = plex.len();
            self.push(k, s, None);
            if k == k_of(s, self.gamma) {
                return Outcome {
                    s,
                    witness: plex,
                    complete: true,
                };
            }
            prev = s;
        }
    }

    fn improved(&mut self, g: &Graph, s0: usize, use_plb: bool) -> Outcome {
        let mut prev = s0;
        loop {
            let k = k_of(prev, self.gamma);
            let out = self.plex.search(g, k, prev, use_plb);
            let witness = out.witness.into_vec();
            self.offer(g, &witness);
            if !out.complete {
                return self.timed_out();
            }
            let s = out.pseudo_lb.max(out.pseudo_size);
            self.push(k, s, Some((out.pseudo_lb, out.pseudo_size)));
            if k == k_of(s, self.gamma) && out.pseudo_size >= out.pseudo_lb {
                return Outcome {
                    s,
                    witness,
                    complete: true,
                };
            }
            prev = s;
        }
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            heu_calls: self.plex.stats.heu_calls,
            brb_calls: self.plex.stats.brb_calls,
            bnb_nodes: self.plex.stats.bnb_nodes,
        }
    }
}

fn check_gamma(gamma: Gamma) -> Result<(), Error> {
    if gamma.in_solver_range() {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange)
    }
}

/// The basic scheme from `s_0 = n`; each k-plex problem is solved exactly.
pub fn basic_iterate(
    g: &Graph,
    gamma: Gamma,
    budget: &dyn Budget,
) -> Result<(usize, VertexSet, Vec<IterTraceEntry>), Error> {
    check_gamma(gamma)?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut it = Iteration::new(gamma, PlexConfig::default(), budget);
    let out = it.basic(g, g.n());
    Ok((out.s, out.witness.into_iter().collect(), it.trace))
}

/// The improved scheme from `s_0 = ub`, which must bound the optimum.
pub fn improved_iter_search(
    g: &Graph,
    gamma: Gamma,
    ub: usize,
    budget: &dyn Budget,
) -> Result<(usize, VertexSet, Vec<IterTraceEntry>), Error> {
    check_gamma(gamma)?;
    if g.is_empty() {
        return Ok((0, VertexSet::default(), Vec::new()));
    }
    if ub == 0 {
        return Err(Error::InvalidParameter("ub must be at least 1"));
    }
    let mut it = Iteration::new(gamma, PlexConfig::default(), budget);
    let out = it.improved(g, ub, true);
    Ok((out.s, out.witness.into_iter().collect(), it.trace))
}

/// Finds a maximum γ-quasi-clique of `g`.
///
/// If the budget expires the result is flagged non-optimal and carries the
/// largest quasi-clique seen so far.
pub fn solve(g: &Graph, gamma: Gamma, opts: SolveOptions, budget: &dyn Budget) -> Result<SolveResult, Error> {
    check_gamma(gamma)?;
    let mut res = SolveResult {
        gamma,
        s_star: 0,
        witness: VertexSet::default(),
        trace: Vec::new(),
        bounds: None,
        ub: g.n(),
        red_v_pct: 0.0,
        red_e_pct: 0.0,
        options: opts,
        optimal: true,
        total_ms: 0,
        stats: SolveStats::default(),
    };
    if g.is_empty() {
        res.total_ms = budget.elapsed_ms();
        return Ok(res);
    }

    let mut it = Iteration::new(gamma, opts.plex, budget);
    let reduction = if opts.use_pp {
        let b = get_bounds(g, gamma)?;
        res.ub = b.ub;
        let lb_witness = b.lb_witness.clone();
        let short = b.lb == b.ub;
        let lb = b.lb;
        res.bounds = Some(b);
        if short {
            res.s_star = lb;
            res.witness = lb_witness;
            res.total_ms = budget.elapsed_ms();
            return Ok(res);
        }
        let r = reduce_graph(g, gamma, lb)?;
        res.red_v_pct = r.red_v_pct();
        res.red_e_pct = r.red_e_pct();
        // the lower-bound witness survives the reduction
        let local: Vec<usize> = lb_witness
            .iter()
            .map(|v| r.kept.binary_search(&v).expect("lb witness survives reduction"))
            .collect();
        it.offer(&r.graph, &local);
        Some(r)
    } else {
        it.offer(g, &[0]);
        None
    };
    let work = reduction.as_ref().map_or(g, |r| &r.graph);

    let out = match opts.mode {
        Mode::Basic => it.basic(work, work.n()),
        Mode::Improved => it.improved(work, res.ub, opts.use_plb),
    };
    let lift = |v: usize| reduction.as_ref().map_or(v, |r| r.kept[v]);
    res.s_star = out.s;
    res.witness = out.witness.iter().map(|&v| lift(v)).collect();
    res.optimal = out.complete;
    res.trace = core::mem::take(&mut it.trace);
    res.stats = it.stats();
    res.total_ms = budget.elapsed_ms();
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::Unlimited;

    fn g(s: &str) -> Gamma {
        Gamma::parse(s).unwrap()
    }

    #[test]
    fn get_k_anchors() {
        let gm = g("0.55");
        assert_eq!(get_k(8, gm).unwrap(), 4);
        assert_eq!(get_k(7, gm).unwrap(), 3);
        assert_eq!(get_k(6, gm).unwrap(), 3);
        for x in 1..50 {
            assert_eq!(get_k(x, Gamma::ONE).unwrap(), 1);
        }
        assert!(get_k(0, gm).is_err());
    }

    #[test]
    fn clique_in_one_iteration() {
        for n in 1..7 {
            let (s, w, trace) = basic_iterate(&complete(n), g("0.8"), &Unlimited).unwrap();
            assert_eq!((s, w.len(), trace.len()), (n, n, 1));
        }
        let (s, _, trace) = improved_iter_search(&complete(6), g("0.75"), 6, &Unlimited).unwrap();
        assert_eq!((s, trace.len()), (6, 1));
    }

    #[test]
    fn k4_minus_edge_everywhere() {
        let gr = k4_minus_edge();
        let gm = g("0.75");
        assert_eq!(basic_iterate(&gr, gm, &Unlimited).unwrap().0, 3);
        assert_eq!(improved_iter_search(&gr, gm, 4, &Unlimited).unwrap().0, 3);
        for mode in [Mode::Basic, Mode::Improved] {
            for use_pp in [true, false] {
                for use_plb in [true, false] {
                    let opts = SolveOptions {
                        use_pp,
                        use_plb,
                        mode,
                        ..SolveOptions::default()
                    };
                    let r = solve(&gr, gm, opts, &Unlimited).unwrap();
                    assert_eq!(r.s_star, 3);
                    assert!(r.optimal);
                    assert!(is_quasi_clique(&gr, &r.witness, gm).unwrap());
                }
            }
        }
    }

    #[test]
    fn single_vertex_and_empty() {
        let one = Graph::from_edges(1, []).unwrap();
        assert_eq!(solve(&one, g("0.9"), SolveOptions::default(), &Unlimited).unwrap().s_star, 1);
        let r = solve(&Graph::empty(), g("0.9"), SolveOptions::default(), &Unlimited).unwrap();
        assert_eq!(r.s_star, 0);
        assert!(basic_iterate(&Graph::empty(), g("0.9"), &Unlimited).is_err());
        assert_eq!(improved_iter_search(&Graph::empty(), g("0.9"), 3, &Unlimited).unwrap().0, 0);
    }

    #[test]
    fn rejects_gamma_below_half() {
        let r = solve(&triangle(), g("0.4"), SolveOptions::default(), &Unlimited);
        assert_eq!(r.unwrap_err(), Error::GammaOutOfRange);
    }
}
