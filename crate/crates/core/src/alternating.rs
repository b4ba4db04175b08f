//! Free vertices and augmenting paths.
//!
//! An `I`-augmenting path is a chordless `I`-alternating path with at least
//! two edges whose endpoints are free. In a claw-free graph `I` is maximum
//! iff it dominates the graph and admits no augmenting path.
//!
//! The search below is exact depth-first backtracking over chordless
//! alternating extensions. It decides the same question as the polynomial
//! Minty/Sbihi procedures but carries no polynomial bound; it is meant for
//! graphs of at most a few dozen vertices.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::IndependentSet;

/// A chordless path alternating between a host set and its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    vertices: Vec<usize>,
}

impl AlternatingPath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    /// `host` with the path's host vertices swapped for its other vertices.
    pub fn swap(&self, host: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = host.iter().copied().filter(|v| !self.vertices.contains(v)).collect();
        out.extend(self.vertices.iter().copied().filter(|v| !host.contains(v)));
        out.sort_unstable();
        out
    }
}

/// Checks the alternating-path invariants: consecutive vertices adjacent,
/// exactly one of each consecutive pair in `host`, and no chords.
pub fn is_chordless_alternating(g: &Graph, host: &[bool], path: &[usize]) -> bool {
    for w in path.windows(2) {
        if !g.adjacent(w[0], w[1]) || host[w[0]] == host[w[1]] {
            return false;
        }
    }
    for (a, &u) in path.iter().enumerate() {
        for &v in path.iter().skip(a + 2) {
            if u == v || g.adjacent(u, v) {
                return false;
            }
        }
    }
    true
}

pub fn is_free(g: &Graph, in_i: &[bool], v: usize) -> bool {
    !in_i[v] && g.neighbors(v).iter().filter(|&&w| in_i[w]).count() <= 1
}

/// Vertices outside `i` with at most one neighbor in `i`, ascending.
pub fn free_vertices(g: &Graph, i: &IndependentSet) -> Vec<usize> {
    let in_i = i.mask(g.n());
    (0..g.n()).filter(|&v| is_free(g, &in_i, v)).collect()
}

/// True iff every vertex is in `s` or has a neighbor in `s`.
pub fn is_dominating(g: &Graph, s: &[usize]) -> bool {
    undominated(g, s).is_none()
}

/// Smallest vertex with no closed neighbor in `s`.
pub fn undominated(g: &Graph, s: &[usize]) -> Option<usize> {
    let mut covered = vec![false; g.n()];
    for &v in s {
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    covered.iter().position(|&c| !c)
}

/// An augmenting path from `x` to `y`, or `None` if there is none.
///
/// Errors if `x == y` or either endpoint is not free.
pub fn find_augmenting_path(g: &Graph, i: &IndependentSet, x: usize, y: usize) -> Result<Option<AlternatingPath>> {
    let in_i = i.mask(g.n());
    let allowed = vec![true; g.n()];
    if x == y || x >= g.n() || y >= g.n() {
        return Err(Error::Precondition("augmenting path needs two distinct vertices".into()));
    }
    for v in [x, y] {
        if !is_free(g, &in_i, v) {
            return Err(Error::Precondition(format!("vertex {} is not free", g.label(v))));
        }
    }
    Ok(augmenting_path_between(g, &in_i, &allowed, x, Some(y)).map(|vertices| AlternatingPath { vertices }))
}

/// Some augmenting path, trying start vertices in ascending order.
pub fn find_any_augmenting_path(g: &Graph, i: &IndependentSet) -> Option<AlternatingPath> {
    let in_i = i.mask(g.n());
    let allowed = vec![true; g.n()];
    (0..g.n())
        .filter(|&x| is_free(g, &in_i, x))
        .find_map(|x| augmenting_path_between(g, &in_i, &allowed, x, None))
        .map(|vertices| AlternatingPath { vertices })
}

/// `i` is maximum iff it dominates `g` and has no augmenting path.
/// Only meaningful for claw-free `g`.
pub fn is_maximum(g: &Graph, i: &IndependentSet) -> bool {
    is_dominating(g, i.vertices()) && find_any_augmenting_path(g, i).is_none()
}

pub(crate) fn is_maximum_raw(g: &Graph, i: &[usize]) -> bool {
    if !is_dominating(g, i) {
        return false;
    }
    let mut in_i = vec![false; g.n()];
    for &v in i {
        in_i[v] = true;
    }
    let allowed = vec![true; g.n()];
    !(0..g.n())
        .filter(|&x| is_free(g, &in_i, x))
        .any(|x| augmenting_path_between(g, &in_i, &allowed, x, None).is_some())
}

/// Depth-first search for a chordless `in_i`-alternating path inside the
/// `allowed` vertices, from `x` to `target` (or to any free vertex when
/// `target` is `None`). Freeness is measured against `in_i` only, so callers
/// restricting `allowed` must clear excluded vertices from `in_i` as well.
pub(crate) fn augmenting_path_between(
    g: &Graph,
    in_i: &[bool],
    allowed: &[bool],
    x: usize,
    target: Option<usize>,
) -> Option<Vec<usize>> {
    let host_nbrs = |v: usize| g.neighbors(v).iter().copied().filter(|&w| in_i[w] && allowed[w]);
    if !allowed[x] || in_i[x] {
        return None;
    }
    let mut first = host_nbrs(x);
    let v1 = first.next()?;
    if first.next().is_some() {
        return None;
    }
    if let Some(y) = target {
        if !allowed[y] || in_i[y] || host_nbrs(y).count() != 1 {
            return None;
        }
    }

    let n = g.n();
    let mut search = Search {
        g,
        in_i,
        allowed,
        target,
        path: Vec::new(),
        on_path: vec![false; n],
        touch: vec![0; n],
    };
    search.push(x);
    search.push(v1);
    if search.extend() {
        Some(search.path)
    } else {
        None
    }
}

struct Search<'a> {
    g: &'a Graph,
    in_i: &'a [bool],
    allowed: &'a [bool],
    target: Option<usize>,
    path: Vec<usize>,
    on_path: Vec<bool>,
    // number of path vertices adjacent to each vertex
    touch: Vec<u32>,
}

impl Search<'_> {
    fn push(&mut self, v: usize) {
        self.path.push(v);
        self.on_path[v] = true;
        for &w in self.g.neighbors(v) {
            self.touch[w] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.on_path[v] = false;
        for &w in self.g.neighbors(v) {
            self.touch[w] -= 1;
        }
    }

    /// The last path vertex is in the host set; try every non-host
    /// extension.
    fn extend(&mut self) -> bool {
        let last = *self.path.last().unwrap();
        let g = self.g;
        for &w in g.neighbors(last) {
            if !self.allowed[w] || self.in_i[w] || self.on_path[w] || self.touch[w] != 1 {
                continue;
            }
            let host_nbrs: Vec<usize> =
                g.neighbors(w).iter().copied().filter(|&u| self.in_i[u] && self.allowed[u]).collect();
            let is_end = match self.target {
                Some(y) => w == y,
                None => host_nbrs.len() == 1,
            };
            if is_end {
                self.push(w);
                return true;
            }
            if Some(w) == self.target || host_nbrs.len() != 2 {
                continue;
            }
            let next = if host_nbrs[0] == last { host_nbrs[1] } else { host_nbrs[0] };
            self.push(w);
            if !self.on_path[next] && self.touch[next] == 1 {
                self.push(next);
                if self.extend() {
                    return true;
                }
                self.pop();
            }
            self.pop();
        }
        false
    }
}
