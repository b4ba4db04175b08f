//! Exhaustive ground truth: breadth-first search over the solution graph,
//! full solution-graph enumeration and brute-force independence number.
//!
//! States are fixed-width bitsets. Moves out of a state are generated in
//! lexicographic `(from, to)` order, so every search is deterministic and
//! returns a shortest sequence.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{IndependentSet, Model, Move, ReconfigSequence};

/// Default bound on the number of stored states.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Largest graph [`brute_alpha`] accepts.
pub const ALPHA_MAX_N: usize = 25;

/// How a search treats one candidate move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Expand {
    /// Never take the move.
    Skip,
    /// Take the move only if it lands on a goal state.
    GoalOnly,
    /// Take the move and keep searching from the result.
    Full,
}

pub(crate) fn bitset(n: usize, vs: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for &v in vs {
        s.insert(v);
    }
    s
}

/// Valid single moves out of `cur`, in lexicographic order.
fn moves_from(g: &Graph, cur: &FixedBitSet, model: Model) -> Vec<Move> {
    let mut out = Vec::new();
    for u in cur.ones() {
        let mut try_target = |v: usize| {
            if !cur.contains(v) && !g.neighbors(v).iter().any(|&w| w != u && cur.contains(w)) {
                out.push(Move::new(u, v));
            }
        };
        match model {
            Model::Ts => g.neighbors(u).iter().for_each(|&v| try_target(v)),
            Model::Tj => (0..g.n()).filter(|&v| v != u).for_each(&mut try_target),
        }
    }
    out
}

/// Breadth-first search from `start`. A state is a goal as soon as it is
/// generated, which keeps the returned sequence shortest.
pub(crate) fn bfs<A, G>(
    g: &Graph,
    start: &[usize],
    model: Model,
    cap: usize,
    mut allow: A,
    goal: G,
) -> Result<Option<Vec<Move>>>
where
    A: FnMut(&Move) -> Expand,
    G: Fn(&FixedBitSet) -> bool,
{
    let s0 = bitset(g.n(), start);
    if goal(&s0) {
        return Ok(Some(Vec::new()));
    }
    let mut states = vec![s0.clone()];
    let mut parent: Vec<(usize, Move)> = vec![(usize::MAX, Move::new(0, 0))];
    let mut index = HashMap::from([(s0, 0usize)]);
    let trace = |parent: &[(usize, Move)], mut at: usize, last: Move| {
        let mut moves = vec![last];
        while parent[at].0 != usize::MAX {
            moves.push(parent[at].1);
            at = parent[at].0;
        }
        moves.reverse();
        moves
    };
    let mut head = 0;
    while head < states.len() {
        let cur = states[head].clone();
        for m in moves_from(g, &cur, model) {
            let kind = allow(&m);
            if kind == Expand::Skip {
                continue;
            }
            let mut next = cur.clone();
            next.set(m.from, false);
            next.insert(m.to);
            if index.contains_key(&next) {
                continue;
            }
            if goal(&next) {
                return Ok(Some(trace(&parent, head, m)));
            }
            if kind == Expand::GoalOnly {
                continue;
            }
            if states.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(next.clone(), states.len());
            states.push(next);
            parent.push((head, m));
        }
        head += 1;
    }
    Ok(None)
}

/// A shortest sequence from `i` to `j`, or `None` if `j` is unreachable
/// (or the sizes differ).
pub fn oracle_reachable(
    g: &Graph,
    i: &IndependentSet,
    j: &IndependentSet,
    model: Model,
    cap: usize,
) -> Result<Option<ReconfigSequence>> {
    if !i.is_bound_to(g) || !j.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    if i.len() != j.len() {
        return Ok(None);
    }
    let target = bitset(g.n(), j.vertices());
    let found = bfs(g, i.vertices(), model, cap, |_| Expand::Full, |s| *s == target)?;
    Ok(found.map(|moves| ReconfigSequence::new(model, i.clone(), moves)))
}

/// All independent sets of size `k` and the single moves between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionGraph {
    pub k: usize,
    pub model: Model,
    /// Sorted vertex sets in lexicographic order.
    pub nodes: Vec<Vec<usize>>,
    /// Pairs of node indices `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionGraphStats {
    pub k: usize,
    pub model: Model,
    pub nodes: usize,
    pub components: usize,
    /// Exact diameter of each component, in component order.
    pub diameters: Vec<usize>,
}

impl SolutionGraphStats {
    pub const CSV_HEADER: &'static str = "k,model,nodes,components,max_diameter";

    pub fn max_diameter(&self) -> usize {
        self.diameters.iter().copied().max().unwrap_or(0)
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.k, self.model, self.nodes, self.components, self.max_diameter())
    }
}

/// Independent sets of size `k` in lexicographic order.
pub fn independent_sets_of_size(g: &Graph, k: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn rec(
        g: &Graph,
        k: usize,
        from: usize,
        blocked: &mut Vec<u32>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if cur.len() == k {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(cur.clone());
            return Ok(());
        }
        for v in from..g.n() {
            if blocked[v] > 0 || g.n() - v < k - cur.len() {
                continue;
            }
            cur.push(v);
            for &w in g.neighbors(v) {
                blocked[w] += 1;
            }
            let r = rec(g, k, v + 1, blocked, cur, out, cap);
            for &w in g.neighbors(v) {
                blocked[w] -= 1;
            }
            cur.pop();
            r?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(g, k, 0, &mut vec![0; g.n()], &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

pub fn solution_graph(g: &Graph, k: usize, model: Model, cap: usize) -> Result<SolutionGraph> {
    let nodes = independent_sets_of_size(g, k, cap)?;
    let index: HashMap<FixedBitSet, usize> =
        nodes.iter().enumerate().map(|(a, s)| (bitset(g.n(), s), a)).collect();
    let mut edges = Vec::new();
    for (a, s) in nodes.iter().enumerate() {
        let cur = bitset(g.n(), s);
        for m in moves_from(g, &cur, model) {
            let mut next = cur.clone();
            next.set(m.from, false);
            next.insert(m.to);
            let b = index[&next];
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(SolutionGraph { k, model, nodes, edges })
}

impl SolutionGraph {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Node indices of each component, ordered by smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for &w in &adj[comp[k]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn stats(&self) -> SolutionGraphStats {
        let adj = self.adjacency();
        let comps = self.components();
        let mut dist = vec![usize::MAX; self.nodes.len()];
        let diameters = comps
            .iter()
            .map(|comp| {
                let mut best = 0;
                for &s in comp {
                    for &v in comp {
                        dist[v] = usize::MAX;
                    }
                    dist[s] = 0;
                    let mut queue = VecDeque::from([s]);
                    while let Some(u) = queue.pop_front() {
                        best = best.max(dist[u]);
                        for &w in &adj[u] {
                            if dist[w] == usize::MAX {
                                dist[w] = dist[u] + 1;
                                queue.push_back(w);
                            }
                        }
                    }
                }
                best
            })
            .collect();
        SolutionGraphStats { k: self.k, model: self.model, nodes: self.nodes.len(), components: comps.len(), diameters }
    }
}

pub fn solution_graph_stats(g: &Graph, k: usize, model: Model, cap: usize) -> Result<SolutionGraphStats> {
    Ok(solution_graph(g, k, model, cap)?.stats())
}

/// A maximum independent set by branch and bound over 64-bit masks.
pub(crate) fn max_independent_set(g: &Graph) -> Vec<usize> {
    assert!(g.n() <= 64, "bitmask search needs n <= 64");
    let nbr: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    fn rec(nbr: &[u64], cands: u64, cur: u64, best: &mut u64) {
        if cands == 0 {
            if cur.count_ones() > best.count_ones() {
                *best = cur;
            }
            return;
        }
        if cur.count_ones() + cands.count_ones() <= best.count_ones() {
            return;
        }
        let v = cands.trailing_zeros() as usize;
        let bit = 1u64 << v;
        rec(nbr, cands & !bit & !nbr[v], cur | bit, best);
        // skipping v only helps if some neighbor of v is still available
        if nbr[v] & cands != 0 {
            rec(nbr, cands & !bit, cur, best);
        }
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut best = 0u64;
    rec(&nbr, all, 0, &mut best);
    (0..g.n()).filter(|&v| best >> v & 1 == 1).collect()
}

/// Independence number by exhaustive search, for graphs with at most
/// [`ALPHA_MAX_N`] vertices.
pub fn brute_alpha(g: &Graph) -> Result<usize> {
    if g.n() > ALPHA_MAX_N {
        return Err(Error::Precondition(format!(
            "brute_alpha handles at most {ALPHA_MAX_N} vertices, got {}",
            g.n()
        )));
    }
    Ok(max_independent_set(g).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{independent_set_from_labels, validate_sequence};

    fn set(g: &Graph, labels: &[&str]) -> IndependentSet {
        independent_set_from_labels(g, labels).unwrap()
    }

    #[test]
    fn claw_two_tokens() {
        let g = fixtures::claw();
        let (i, j) = (set(&g, &["a", "b"]), set(&g, &["a", "c"]));
        assert!(oracle_reachable(&g, &i, &j, Model::Ts, DEFAULT_CAP).unwrap().is_none());
        let seq = oracle_reachable(&g, &i, &j, Model::Tj, DEFAULT_CAP).unwrap().unwrap();
        let b = g.vertex("b").unwrap();
        let c = g.vertex("c").unwrap();
        assert_eq!(seq.moves, vec![Move::new(b, c)]);
        validate_sequence(&g, &seq).unwrap();
    }

    #[test]
    fn c6_maximum_sets_are_frozen() {
        let g = fixtures::cycle(6);
        let i = set(&g, &["v0", "v2", "v4"]);
        let j = set(&g, &["v1", "v3", "v5"]);
        for model in [Model::Ts, Model::Tj] {
            assert!(oracle_reachable(&g, &i, &j, model, DEFAULT_CAP).unwrap().is_none());
        }
    }

    #[test]
    fn p4_shortest_sequence() {
        let g = fixtures::path(4);
        let i = set(&g, &["v0", "v2"]);
        let j = set(&g, &["v1", "v3"]);
        let seq = oracle_reachable(&g, &i, &j, Model::Ts, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(seq.len(), 2);
        validate_sequence(&g, &seq).unwrap();
        assert_eq!(seq.end(), j.vertices());
    }

    #[test]
    fn cap_is_reported() {
        let g = fixtures::path(12);
        let i = make(&g, &[0, 2]);
        let j = make(&g, &[9, 11]);
        assert_eq!(oracle_reachable(&g, &i, &j, Model::Tj, 3), Err(Error::CapExceeded { cap: 3 }));
    }

    fn make(g: &Graph, vs: &[usize]) -> IndependentSet {
        crate::model::make_independent_set(g, vs).unwrap()
    }

    #[test]
    fn solution_graph_examples() {
        let claw = fixtures::claw();
        let ts = solution_graph_stats(&claw, 2, Model::Ts, DEFAULT_CAP).unwrap();
        assert_eq!((ts.nodes, ts.components), (3, 3));
        let tj = solution_graph_stats(&claw, 2, Model::Tj, DEFAULT_CAP).unwrap();
        assert_eq!((tj.nodes, tj.components), (3, 1));
        assert_eq!(tj.max_diameter(), 1);
        let c6 = solution_graph_stats(&fixtures::cycle(6), 3, Model::Ts, DEFAULT_CAP).unwrap();
        assert_eq!((c6.nodes, c6.components), (2, 2));
        assert_eq!(c6.csv_row(), "3,TS,2,2,0");
    }

    #[test]
    fn node_count_matches_subset_enumeration() {
        let g = fixtures::fig1();
        for k in 0..=5 {
            let direct = (0u32..1 << g.n())
                .filter(|m| m.count_ones() as usize == k)
                .filter(|m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
                .count();
            assert_eq!(independent_sets_of_size(&g, k, DEFAULT_CAP).unwrap().len(), direct);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(brute_alpha(&fixtures::cycle(6)).unwrap(), 3);
        assert_eq!(brute_alpha(&fixtures::path(4)).unwrap(), 2);
        assert_eq!(brute_alpha(&fixtures::path(5)).unwrap(), 3);
        let g = fixtures::fig1();
        let direct = (0u32..1 << g.n())
            .filter(|m| g.edges().all(|(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(brute_alpha(&g).unwrap(), direct);
        assert!(brute_alpha(&fixtures::path(26)).is_err());
    }
}
