//! Exact maximum k-plex search above a size floor.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::graph::{core_decompose, threshold_core};
use crate::{Budget, Graph};

/// Local graphs up to this many vertices use bit-matrix rows.
const DENSE_LIMIT: usize = 4096;

/// Adjacency of a subproblem over local ids `0..len`.
enum LocalGraph {
    Dense { rows: Vec<u64>, words: usize },
    Sparse { offsets: Vec<usize>, adj: Vec<u32> },
}

impl LocalGraph {
    /// Subgraph of `g` induced by `members`; local id `i` is `members[i]`.
    /// `slot` must map every vertex to `u32::MAX` on entry and does so again on exit.
    fn build(g: &Graph, members: &[usize], slot: &mut [u32]) -> LocalGraph {
        let len = members.len();
        for (i, &v) in members.iter().enumerate() {
            slot[v] = i as u32;
        }
        let local = if len <= DENSE_LIMIT {
            let words = len.div_ceil(64).max(1);
            let mut rows = vec![0u64; words * len];
            for (i, &v) in members.iter().enumerate() {
                let row = &mut rows[i * words..(i + 1) * words];
                for &w in g.neighbors(v) {
                    let j = slot[w as usize];
                    if j != u32::MAX {
                        row[j as usize / 64] |= 1 << (j % 64);
                    }
                }
            }
            LocalGraph::Dense { rows, words }
        } else {
            let mut offsets = Vec::with_capacity(len + 1);
            offsets.push(0);
            let mut adj = Vec::new();
            for &v in members {
                let start = adj.len();
                adj.extend(
                    g.neighbors(v)
                        .iter()
                        .map(|&w| slot[w as usize])
                        .filter(|&j| j != u32::MAX),
                );
                adj[start..].sort_unstable();
                offsets.push(adj.len());
            }
            LocalGraph::Sparse { offsets, adj }
        };
        for &v in members {
            slot[v] = u32::MAX;
        }
        local
    }

    fn neighbors_sparse(&self, x: usize) -> &[u32] {
        match self {
            LocalGraph::Sparse { offsets, adj } => &adj[offsets[x]..offsets[x + 1]],
            LocalGraph::Dense { .. } => unreachable!(),
        }
    }

    fn degree_in(&self, x: usize, set: &BitSet) -> usize {
        match self {
            LocalGraph::Dense { rows, words } => rows[x * words..(x + 1) * words]
                .iter()
                .zip(set.words())
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum(),
            LocalGraph::Sparse { .. } => self
                .neighbors_sparse(x)
                .iter()
                .filter(|&&w| set.contains(w as usize))
                .count(),
        }
    }

    /// `set ∩= N(x)`
    fn retain_neighbors(&self, x: usize, set: &mut BitSet) {
        match self {
            LocalGraph::Dense { rows, words } => {
                for (a, b) in set.words_mut().iter_mut().zip(&rows[x * words..(x + 1) * words]) {
                    *a &= b;
                }
            }
            LocalGraph::Sparse { .. } => {
                let keep: Vec<u32> = self
                    .neighbors_sparse(x)
                    .iter()
                    .copied()
                    .filter(|&w| set.contains(w as usize))
                    .collect();
                set.words_mut().iter_mut().for_each(|w| *w = 0);
                for w in keep {
                    set.insert(w as usize);
                }
            }
        }
    }

    /// `set \= N(x)`
    fn remove_neighbors(&self, x: usize, set: &mut BitSet) {
        match self {
            LocalGraph::Dense { rows, words } => {
                for (a, b) in set.words_mut().iter_mut().zip(&rows[x * words..(x + 1) * words]) {
                    *a &= !b;
                }
            }
            LocalGraph::Sparse { .. } => {
                for &w in self.neighbors_sparse(x) {
                    set.remove(w as usize);
                }
            }
        }
    }

    fn for_each_neighbor_in(&self, x: usize, set: &BitSet, mut f: impl FnMut(usize)) {
        match self {
            LocalGraph::Dense { rows, words } => {
                for (i, (a, b)) in rows[x * words..(x + 1) * words].iter().zip(set.words()).enumerate() {
                    let mut w = a & b;
                    while w != 0 {
                        f(i * 64 + w.trailing_zeros() as usize);
                        w &= w - 1;
                    }
                }
            }
            LocalGraph::Sparse { .. } => {
                for &w in self.neighbors_sparse(x) {
                    if set.contains(w as usize) {
                        f(w as usize);
                    }
                }
            }
        }
    }

    fn adjacent(&self, x: usize, y: usize) -> bool {
        match self {
            LocalGraph::Dense { rows, words } => rows[x * words + y / 64] >> (y % 64) & 1 == 1,
            LocalGraph::Sparse { .. } => self.neighbors_sparse(x).binary_search(&(y as u32)).is_ok(),
        }
    }

    /// Whether `x` and `y` share a neighbor inside `set`.
    fn common_neighbor_in(&self, x: usize, y: usize, set: &BitSet) -> bool {
        match self {
            LocalGraph::Dense { rows, words } => {
                let rx = &rows[x * words..(x + 1) * words];
                let ry = &rows[y * words..(y + 1) * words];
                rx.iter().zip(ry).zip(set.words()).any(|((a, b), c)| a & b & c != 0)
            }
            LocalGraph::Sparse { .. } => self
                .neighbors_sparse(x)
                .iter()
                .any(|&w| set.contains(w as usize) && self.adjacent(y, w as usize)),
        }
    }
}

/// Shared state across the subproblems of one exact call.
pub(super) struct Exact<'b> {
    pub(super) k: usize,
    /// Only plexes of at least this size are of interest; raised past every
    /// solution found.
    pub(super) target: usize,
    pub(super) best: Option<Vec<usize>>,
    pub(super) nodes: u64,
    pub(super) aborted: bool,
    pub(super) qc_diameter_filter: bool,
    pub(super) budget: &'b dyn Budget,
}

/// Branch-and-bound over one local graph.
struct Search<'a, 'b> {
    ctx: &'a mut Exact<'b>,
    g: &'a LocalGraph,
    members: &'a [usize],
    /// Per local vertex: members of `p` it is not adjacent to (itself excluded).
    nn: Vec<usize>,
    p: Vec<usize>,
    p_set: BitSet,
    deg: Vec<usize>,
}

impl Search<'_, '_> {
    fn tick(&mut self) -> bool {
        self.ctx.nodes += 1;
        if self.ctx.nodes % 256 == 0 && self.ctx.budget.expired() {
            self.ctx.aborted = true;
        }
        self.ctx.aborted
    }

    fn include(&mut self, v: usize, pc: &BitSet) -> BitSet {
        let mut missed = pc.clone();
        self.g.remove_neighbors(v, &mut missed);
        missed.remove(v);
        for y in missed.iter() {
            self.nn[y] += 1;
        }
        self.p.push(v);
        self.p_set.insert(v);
        missed
    }

    fn exclude_last(&mut self, missed: &BitSet) {
        let v = self.p.pop().expect("include/exclude are paired");
        self.p_set.remove(v);
        for y in missed.iter() {
            self.nn[y] -= 1;
        }
    }

    fn record(&mut self, pc: &BitSet) {
        let found: Vec<usize> = pc.iter().map(|x| self.members[x]).collect();
        self.ctx.target = found.len() + 1;
        self.ctx.best = Some(found);
    }

    /// Explores all k-plexes `P ∪ X` with `X ⊆ c`.
    fn expand(&mut self, mut c: BitSet) {
        let k = self.ctx.k;
        loop {
            if self.tick() {
                return;
            }
            // candidates must keep P ∪ {c} a k-plex
            for i in 0..self.p.len() {
                let u = self.p[i];
                if self.nn[u] + 1 == k {
                    self.g.retain_neighbors(u, &mut c);
                }
            }
            let stale: Vec<usize> = c.iter().filter(|&x| self.nn[x] + 1 > k).collect();
            for x in stale {
                c.remove(x);
            }
            if self.ctx.qc_diameter_filter && !self.p.is_empty() {
                let mut pc = self.p_set.clone();
                pc.union_with(&c);
                let far: Vec<usize> = c
                    .iter()
                    .filter(|&x| {
                        self.p.iter().any(|&u| !self.g.adjacent(u, x) && !self.g.common_neighbor_in(u, x, &pc))
                    })
                    .collect();
                for x in far {
                    c.remove(x);
                }
            }

            // a member of a plex of size >= target has degree >= target - k in it
            let target = self.ctx.target;
            let mut pc = self.p_set.clone();
            pc.union_with(&c);
            let mut queue = Vec::new();
            for x in pc.iter() {
                self.deg[x] = self.g.degree_in(x, &pc);
                if self.deg[x] + k < target {
                    queue.push(x);
                }
            }
            while let Some(x) = queue.pop() {
                if !pc.contains(x) {
                    continue;
                }
                if self.p_set.contains(x) {
                    return;
                }
                pc.remove(x);
                c.remove(x);
                let deg = &mut self.deg;
                self.g.for_each_neighbor_in(x, &pc, |w| {
                    deg[w] -= 1;
                    if deg[w] + k + 1 == target {
                        queue.push(w);
                    }
                });
            }

            let size = self.p.len() + c.count();
            if size < target {
                return;
            }
            let (xmin, dmin) = pc
                .iter()
                .map(|x| (x, self.deg[x]))
                .min_by_key(|&(x, d)| (d, x))
                .expect("size >= target >= 1");
            if dmin + k >= size {
                self.record(&pc);
                return;
            }
            if self.upper_bound(&c, target) < target || self.deficit_prunes(&c, target) {
                return;
            }

            // a member of P with no spare degree needs all of its candidate
            // neighbors, so there is nothing to branch on
            let forced = self.p.iter().find_map(|&u| {
                if self.deg[u] + k > target {
                    return None;
                }
                let mut nb = c.clone();
                self.g.retain_neighbors(u, &mut nb);
                nb.first()
            });
            if let Some(x) = forced {
                c.remove(x);
                let missed = self.include(x, &pc);
                self.expand(c);
                self.exclude_last(&missed);
                return;
            }

            let pivot = if c.contains(xmin) {
                xmin
            } else {
                let mut far = c.clone();
                self.g.remove_neighbors(xmin, &mut far);
                far.iter()
                    .min_by_key(|&x| (self.deg[x], x))
                    .expect("a P vertex below the plex degree has a non-neighbor in C")
            };
            c.remove(pivot);
            let missed = self.include(pivot, &pc);
            self.expand(c.clone());
            self.exclude_last(&missed);
            if self.ctx.aborted {
                return;
            }
        }
    }

    /// Any plex of size at least `target` around `P` shrinks to one of size
    /// exactly `target`, which adds a set `A` of `target - |P|` candidates.
    /// Each `u` in `P` still needs `target - k - deg_P(u)` neighbors in `A`,
    /// while a candidate supplies at most one per adjacent member of `P`.
    fn deficit_prunes(&self, c: &BitSet, target: usize) -> bool {
        let k = self.ctx.k;
        let p = self.p.len();
        if p == 0 || target <= p {
            return false;
        }
        let want = target.saturating_sub(k);
        let need: usize = self
            .p
            .iter()
            .map(|&u| want.saturating_sub(p - 1 - self.nn[u]))
            .sum();
        if need == 0 {
            return false;
        }
        let mut supply: Vec<usize> = c.iter().map(|x| p - self.nn[x]).collect();
        let add = target - p;
        if supply.len() > add {
            supply.select_nth_unstable_by(add - 1, |a, b| b.cmp(a));
            supply.truncate(add);
        }
        supply.iter().sum::<usize>() < need
    }

    /// Non-neighbor partition of `c` over the members of `P`, then a greedy
    /// independent-set cover of what remains; an independent set contributes
    /// at most `k` vertices to any k-plex.
    fn upper_bound(&self, c: &BitSet, target: usize) -> usize {
        let k = self.ctx.k;
        let mut rest = c.clone();
        let mut ub = self.p.len();
        for &u in &self.p {
            let slack = k - 1 - self.nn[u];
            let mut missed = rest.clone();
            self.g.remove_neighbors(u, &mut missed);
            let cnt = missed.count();
            if cnt > slack {
                ub += slack;
                rest.difference_with(&missed);
            }
        }
        let left = rest.count();
        if ub + left < target || left <= k {
            return ub + left;
        }
        let mut q = BitSet::new(0);
        while !rest.is_empty() {
            if ub + rest.count() < target {
                break;
            }
            q.clone_from(&rest);
            let mut class = 0;
            while let Some(x) = q.first() {
                q.remove(x);
                self.g.remove_neighbors(x, &mut q);
                rest.remove(x);
                class += 1;
            }
            ub += class.min(k);
            if ub >= target {
                return ub + rest.count();
            }
        }
        ub + rest.count()
    }
}

fn run(ctx: &mut Exact<'_>, g: &Graph, members: &[usize], root: Option<usize>, slot: &mut [u32]) {
    let local = LocalGraph::build(g, members, slot);
    let len = members.len();
    let mut search = Search {
        ctx,
        g: &local,
        members,
        nn: vec![0; len],
        p: Vec::new(),
        p_set: BitSet::new(len),
        deg: vec![0; len],
    };
    let mut all = BitSet::new(len);
    for i in 0..len {
        all.insert(i);
    }
    match root {
        Some(r) => {
            all.remove(r);
            let mut pc = all.clone();
            pc.insert(r);
            search.include(r, &pc);
            search.expand(all);
        }
        None => search.expand(all),
    }
}

impl Exact<'_> {
    /// Searches `g` for a k-plex of size at least `self.target`, keeping the largest.
    pub(super) fn solve(&mut self, g: &Graph) {
        let k = self.k;
        if self.target > g.n() {
            return;
        }
        let (alive, survivors) = threshold_core(g, self.target.saturating_sub(k));
        if survivors < self.target {
            return;
        }
        let kept: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
        let h = g.induced_subgraph(&kept);
        // a k-plex S has minimum degree at least |S| - k, and no subgraph of h
        // beats its degeneracy
        let info = core_decompose(&h);
        if self.target > k + info.degeneracy {
            return;
        }
        let mut slot = vec![u32::MAX; h.n()];

        if self.target + 1 < 2 * k {
            // small targets relative to k: no distance-2 property to exploit
            let prev = self.best.take();
            let all: Vec<usize> = (0..h.n()).collect();
            run(self, &h, &all, None, &mut slot);
            self.best = match self.best.take() {
                Some(b) => Some(b.iter().map(|&v| kept[v]).collect()),
                None => prev,
            };
            return;
        }

        // Every plex of size >= 2k-1 has diameter <= 2. Split by the first
        // member in degeneracy order; the rest lie within two hops, later in
        // the order.
        let order = info.peel_order;
        let mut pos = vec![0usize; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut live = vec![true; h.n()];
        let mut deg: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
        let mut cnt = vec![0usize; h.n()];
        let mut is_nbr = vec![false; h.n()];
        let mut touched = Vec::new();
        let mut found_here: Option<Vec<usize>> = None;
        let mut cut = self.target.saturating_sub(k);

        for &v in order.iter().rev() {
            if self.aborted {
                break;
            }
            if !live[v] {
                continue;
            }
            let target = self.target;
            let later_nbrs: Vec<usize> = h
                .neighbors(v)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| live[w] && pos[w] > pos[v])
                .collect();
            for &w in &later_nbrs {
                is_nbr[w] = true;
            }
            for &w in &later_nbrs {
                for &u in h.neighbors(w) {
                    let u = u as usize;
                    if u != v && live[u] && pos[u] > pos[v] {
                        if cnt[u] == 0 {
                            touched.push(u);
                        }
                        cnt[u] += 1;
                    }
                }
            }
            let mut members = vec![v];
            // adjacent members share >= target-2k common neighbors with v,
            // non-adjacent ones >= target-2k+2
            members.extend(later_nbrs.iter().copied().filter(|&w| cnt[w] + 2 * k >= target));
            let close = members.len();
            if k > 1 {
                members.extend(
                    touched
                        .iter()
                        .copied()
                        .filter(|&u| !is_nbr[u] && cnt[u] + 2 * k >= target + 2),
                );
            }
            for &u in &touched {
                cnt[u] = 0;
            }
            touched.clear();
            for &w in &later_nbrs {
                is_nbr[w] = false;
            }
            let far = members.len() - close;
            if close + far.min(k - 1) < target {
                continue;
            }
            members[1..].sort_unstable();
            let before = self.target;
            run(self, &h, &members, Some(0), &mut slot);
            if self.target > before {
                found_here = self.best.clone();
                let new_cut = self.target.saturating_sub(k);
                if new_cut > cut {
                    cut = new_cut;
                    let mut stack: Vec<usize> = (0..h.n()).filter(|&u| live[u] && deg[u] < cut).collect();
                    for &u in &stack {
                        live[u] = false;
                    }
                    while let Some(u) = stack.pop() {
                        for &w in h.neighbors(u) {
                            let w = w as usize;
                            if live[w] {
                                deg[w] -= 1;
                                if deg[w] < cut {
                                    live[w] = false;
                                    stack.push(w);
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some(b) = found_here {
            self.best = Some(b.iter().map(|&v| kept[v]).collect());
        }
    }
}
