//! Preprocessing: lower and upper bounds on the optimum from a single peeling
//! pass, and the degree-threshold reduction driven by the lower bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{threshold_core, Peeler};
use crate::{Error, Gamma, Graph, VertexSet};

/// Bounds on the maximum γ-quasi-clique size `s*`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsResult {
    /// Size of the first residual graph that was a γ-quasi-clique (0 if none).
    pub lb: usize,
    /// The residual graph that produced `lb`; empty iff `lb == 0`.
    pub lb_witness: VertexSet,
    pub ub: usize,
    /// Largest minimum degree seen while peeling, i.e. the degeneracy.
    pub max_core: usize,
}

/// A minimum-degree peeling in progress, with an O(1) test for whether the
/// residual graph is currently a γ-quasi-clique.
///
/// The test keeps a histogram of residual degrees and a count of residual
/// vertices whose degree is below `⌈γ(r-1)⌉`. Both are patched in O(deg) per
/// removal; when `r` shrinks the threshold can only drop, releasing whole
/// histogram buckets.
pub struct PeelingState<'g> {
    peeler: Peeler<'g>,
    gamma: Gamma,
    hist: Vec<usize>,
    threshold: usize,
    violations: usize,
}

impl<'g> PeelingState<'g> {
    pub fn new(g: &'g Graph, gamma: Gamma) -> Self {
        let peeler = Peeler::new(g);
        // indexed up to the largest threshold, ⌈γ(n-1)⌉ ≤ n - 1
        let mut hist = vec![0usize; g.n().max(g.max_degree() + 1)];
        for v in 0..g.n() {
            hist[g.degree(v)] += 1;
        }
        let threshold = gamma.degree_threshold(g.n());
        let violations = hist.iter().take(threshold).sum();
        PeelingState {
            peeler,
            gamma,
            hist,
            threshold,
            violations,
        }
    }

    /// Vertices still present.
    pub fn remaining(&self) -> usize {
        self.peeler.remaining()
    }

    /// Whether the residual graph is a γ-quasi-clique.
    pub fn check_qc_incremental(&self) -> bool {
        self.remaining() > 0 && self.violations == 0
    }

    /// The vertex the next step will remove and its current degree.
    pub fn next_min(&mut self) -> Option<(usize, usize)> {
        self.peeler.peek()
    }

    /// Removes the current minimum-degree vertex.
    pub fn step(&mut self) -> Option<(usize, usize)> {
        let (u, du) = self.peeler.peek()?;
        let threshold = self.threshold;
        let hist = &mut self.hist;
        let mut violations = self.violations;
        hist[du] -= 1;
        if du < threshold {
            violations -= 1;
        }
        self.peeler.remove_with(u, |_, nd| {
            hist[nd + 1] -= 1;
            hist[nd] += 1;
            if nd + 1 == threshold {
                violations += 1;
            }
        });
        let target = self.gamma.degree_threshold(self.peeler.remaining());
        while self.threshold > target {
            self.threshold -= 1;
            violations -= self.hist[self.threshold];
        }
        self.violations = violations;
        Some((u, du))
    }

    fn residual(&self, g: &Graph) -> VertexSet {
        (0..g.n()).filter(|&v| self.peeler.is_alive(v)).collect()
    }
}

/// Peels `g` to exhaustion, tracking `max_core`, the upper bound
/// `min(1 + ⌈max_core/γ⌉, |V(residual)|)` and the first residual graph that
/// is a γ-quasi-clique.
pub fn get_bounds(g: &Graph, gamma: Gamma) -> Result<BoundsResult, Error> {
    if !gamma.in_solver_range() {
        return Err(Error::GammaOutOfRange);
    }
    let mut state = PeelingState::new(g, gamma);
    let mut out = BoundsResult::default();
    while let Some((_, d)) = state.next_min() {
        out.max_core = out.max_core.max(d);
        let cand = (1 + gamma.ceil_div(out.max_core)).min(state.remaining());
        out.ub = out.ub.max(cand);
        if out.lb == 0 && state.check_qc_incremental() {
            out.lb = state.remaining();
            out.lb_witness = state.residual(g);
        }
        state.step();
    }
    Ok(out)
}

/// Result of [`reduce_graph`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: Graph,
    /// `kept[i]` is the vertex of the input graph that became vertex `i`.
    pub kept: Vec<usize>,
    pub threshold: usize,
    pub removed_vertices: usize,
    pub removed_edges: usize,
}

impl Reduction {
    /// Share of removed vertices, in percent (Red-V).
    pub fn red_v_pct(&self) -> f64 {
        pct(self.removed_vertices, self.removed_vertices + self.graph.n())
    }

    /// Share of removed edges, in percent (Red-E).
    pub fn red_e_pct(&self) -> f64 {
        pct(self.removed_edges, self.removed_edges + self.graph.m())
    }

    /// Maps a set in the reduced graph back to input-graph vertices.
    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        s.map(|v| self.kept[v])
    }

    /// A reduction that removed nothing.
    pub fn identity(g: &Graph) -> Reduction {
        Reduction {
            graph: g.clone(),
            kept: (0..g.n()).collect(),
            threshold: 0,
            removed_vertices: 0,
            removed_edges: 0,
        }
    }
}

fn pct(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Repeatedly deletes vertices of degree below `⌊(lb-1)·γ⌋`. Any γ-quasi-clique
/// with at least `lb` vertices survives, since its members have internal
/// degree at least `⌈γ(lb-1)⌉`.
pub fn reduce_graph(g: &Graph, gamma: Gamma, lb: usize) -> Result<Reduction, Error> {
    if lb == 0 {
        return Err(Error::InvalidParameter("lb must be at least 1"));
    }
    let threshold = gamma.floor_mul(lb - 1);
    let (alive, _) = threshold_core(g, threshold);
    let kept: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let graph = g.induced_subgraph(&kept);
    Ok(Reduction {
        removed_vertices: g.n() - graph.n(),
        removed_edges: g.m() - graph.m(),
        graph,
        kept,
        threshold,
    })
}
