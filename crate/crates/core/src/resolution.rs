//! Bad cycles: chordless `I`-alternating even cycles, their neighborhood
//! classes and layers, resolvability tests and the cycle-turning
//! construction.
//!
//! A cycle `C` with `I`-bipartition `[A, B]` is resolved by a set `I'` when
//! `G[I' ∪ B]` is a forest. Resolvability is always judged with respect to
//! the start set `I`.

use serde_json::{json, Value};

use crate::alternating::{augmenting_path_between, is_maximum_raw};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{apply_moves, check_moves, decompose_symdiff_raw, IndependentSet, Model, Move, ReconfigSequence};
use crate::oracle::{bfs, bitset, Expand, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadCycle {
    vertices: Vec<usize>,
    a: Vec<usize>,
    b: Vec<usize>,
    n0: Vec<usize>,
    n1: Vec<usize>,
    n2: Vec<usize>,
    layers: Vec<Vec<usize>>,
    in_a: Vec<bool>,
    in_b: Vec<bool>,
    // |N(v) ∩ B| for v outside B
    b_count: Vec<usize>,
    layer_of: Vec<Option<usize>>,
    position: Vec<Option<usize>>,
}

/// The class of a vertex outside `B`: the number of its `B`-neighbors.
pub type NeighborhoodClass = usize;

impl BadCycle {
    /// Validates `vertices` as `c_0..c_{2n-1}`, a chordless cycle with the
    /// even positions in `i` and the odd positions outside it.
    pub fn new(g: &Graph, i: &[usize], vertices: Vec<usize>) -> Result<Self> {
        let len = vertices.len();
        if len < 4 || len % 2 == 1 {
            return Err(Error::Precondition(format!("bad cycle needs even length >= 4, got {len}")));
        }
        let mut in_i = vec![false; g.n()];
        for &v in i {
            in_i[v] = true;
        }
        let mut seen = vec![false; g.n()];
        for (p, &v) in vertices.iter().enumerate() {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition("cycle vertices must be distinct graph vertices".into()));
            }
            if in_i[v] != (p % 2 == 0) {
                return Err(Error::Precondition(format!("cycle is not I-alternating at {}", g.label(v))));
            }
        }
        for p in 0..len {
            for q in p + 1..len {
                let consecutive = q == p + 1 || (p == 0 && q == len - 1);
                if g.adjacent(vertices[p], vertices[q]) != consecutive {
                    return Err(Error::Precondition(format!(
                        "cycle is not chordless at {} {}",
                        g.label(vertices[p]),
                        g.label(vertices[q])
                    )));
                }
            }
        }
        Ok(Self::build(g, vertices))
    }

    fn build(g: &Graph, vertices: Vec<usize>) -> Self {
        let n = g.n();
        let len = vertices.len();
        let mut in_a = vec![false; n];
        let mut in_b = vec![false; n];
        let mut position = vec![None; n];
        for (p, &v) in vertices.iter().enumerate() {
            position[v] = Some(p);
            if p % 2 == 0 {
                in_a[v] = true;
            } else {
                in_b[v] = true;
            }
        }
        let mut a: Vec<usize> = vertices.iter().step_by(2).copied().collect();
        let mut b: Vec<usize> = vertices.iter().skip(1).step_by(2).copied().collect();
        a.sort_unstable();
        b.sort_unstable();
        let b_count: Vec<usize> = (0..n).map(|v| g.neighbors(v).iter().filter(|&&w| in_b[w]).count()).collect();
        let class = |k: usize| -> Vec<usize> { (0..n).filter(|&v| !in_b[v] && b_count[v] == k).collect() };
        let (n0, n1, n2) = (class(0), class(1), class(2));

        let b_nbrs = |v: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&w| in_b[w]).collect() };
        let half = len / 2;
        let mut layer_of = vec![None; n];
        let mut layers = vec![Vec::new(); half];
        for (li, layer) in layers.iter_mut().enumerate() {
            let key = b_nbrs(vertices[2 * li]);
            for v in 0..n {
                if !in_b[v] && b_count[v] == key.len() && b_nbrs(v) == key {
                    layer.push(v);
                    layer_of[v] = Some(li);
                }
            }
        }
        BadCycle { vertices, a, b, n0, n1, n2, layers, in_a, in_b, b_count, layer_of, position }
    }

    /// `c_0..c_{2n-1}` in cycle order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Cycle length `2n`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `V(C) ∩ I`, sorted.
    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// `V(C) \ I`, sorted.
    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn n0(&self) -> &[usize] {
        &self.n0
    }

    pub fn n1(&self) -> &[usize] {
        &self.n1
    }

    pub fn n2(&self) -> &[usize] {
        &self.n2
    }

    /// `L_0..L_{n-1}`; `L_i` holds every vertex whose `B`-neighborhood equals
    /// that of `c_{2i}`.
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.layer_of[v]
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.in_a[v]
    }

    pub fn in_b(&self, v: usize) -> bool {
        self.in_b[v]
    }

    /// `|N(v) ∩ B|`, or `None` for `v ∈ B`.
    pub fn class(&self, v: usize) -> Option<NeighborhoodClass> {
        (!self.in_b[v]).then_some(self.b_count[v])
    }

    /// Position of `v` on the cycle.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.position[v]
    }

    /// `c_0, c_{2n-1}, ..., c_1`.
    pub fn reversed(&self, g: &Graph) -> BadCycle {
        let mut vs = vec![self.vertices[0]];
        vs.extend(self.vertices[1..].iter().rev());
        Self::build(g, vs)
    }

    /// True iff `G[set ∪ B]` is a forest.
    pub fn is_resolved_by(&self, g: &Graph, set: impl Fn(usize) -> bool) -> bool {
        is_forest(g, |v| self.in_b[v] || set(v))
    }

    /// `c_0..c_{2n-1}` with every `A`-vertex replaced by the token of
    /// `set` in the same layer, if each layer holds exactly one token.
    fn shifted(&self, g: &Graph, set: &[usize]) -> Option<BadCycle> {
        let mut vs = self.vertices.clone();
        let mut filled = vec![false; self.layers.len()];
        for &v in set {
            if let Some(li) = self.layer_of[v] {
                if std::mem::replace(&mut filled[li], true) {
                    return None;
                }
                vs[2 * li] = v;
            }
        }
        filled.iter().all(|&f| f).then(|| Self::build(g, vs))
    }
}

fn is_forest(g: &Graph, member: impl Fn(usize) -> bool) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for u in 0..g.n() {
        if !member(u) {
            continue;
        }
        for &w in g.neighbors(u) {
            if w < u && member(w) {
                let (ru, rw) = (root(&mut parent, u), root(&mut parent, w));
                if ru == rw {
                    return false;
                }
                parent[ru] = rw;
            }
        }
    }
    true
}

/// Results of the neighborhood scans that hold for every bad cycle in a
/// claw-free graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeighborhoodChecks {
    /// No vertex has three or more `B`-neighbors.
    pub no_high_classes: bool,
    /// No edge joins `N_2(B)` and `N_0(B)`.
    pub n2_n0_separated: bool,
    /// `N(B) \ A = N(A) \ B`.
    pub nb_equals_na: bool,
    /// `N(B) ∩ I = A`.
    pub nb_meets_i_in_a: bool,
}

impl NeighborhoodChecks {
    pub fn all(&self) -> bool {
        self.no_high_classes && self.n2_n0_separated && self.nb_equals_na && self.nb_meets_i_in_a
    }
}

pub fn neighborhood_checks(g: &Graph, i: &[usize], c: &BadCycle) -> NeighborhoodChecks {
    let n = g.n();
    let touches = |v: usize, side: &[bool]| g.neighbors(v).iter().any(|&w| side[w]);
    let no_high_classes = (0..n).all(|v| c.class(v).is_none_or(|k| k <= 2));
    let n2_n0_separated = g.edges().all(|(u, v)| {
        let (cu, cv) = (c.class(u), c.class(v));
        !matches!((cu, cv), (Some(2), Some(0)) | (Some(0), Some(2)))
    });
    let nb_equals_na = (0..n).all(|v| (touches(v, &c.in_b) && !c.in_a[v]) == (touches(v, &c.in_a) && !c.in_b[v]));
    let mut nb_i: Vec<usize> = i.iter().copied().filter(|&v| touches(v, &c.in_b)).collect();
    nb_i.sort_unstable();
    NeighborhoodChecks { no_high_classes, n2_n0_separated, nb_equals_na, nb_meets_i_in_a: nb_i == c.a }
}

/// Cycle components of `G[I Δ J]` as bad cycles with respect to `I`.
pub fn extract_bad_cycles(g: &Graph, i: &IndependentSet, j: &IndependentSet) -> Result<Vec<BadCycle>> {
    if !i.is_bound_to(g) || !j.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    extract_bad_cycles_raw(g, i.vertices(), j.vertices())
}

pub(crate) fn extract_bad_cycles_raw(g: &Graph, i: &[usize], j: &[usize]) -> Result<Vec<BadCycle>> {
    decompose_symdiff_raw(g, i, j)?.cycles.into_iter().map(|c| BadCycle::new(g, i, c)).collect()
}

/// Which moves a brute-force resolvability search may use before the
/// final, resolving move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveFilter {
    All,
    /// Both endpoints in `N_2(B)`.
    InternalOnly,
    /// Both endpoints in `N_0(B)`.
    ExternalOnly,
}

/// A shortest TS-sequence from `i` that resolves `c`, all of whose moves
/// except the last pass `filter`.
pub fn shortest_resolving_sequence(
    g: &Graph,
    i: &IndependentSet,
    c: &BadCycle,
    filter: MoveFilter,
    cap: usize,
) -> Result<Option<Vec<Move>>> {
    if !i.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    shortest_resolving_raw(g, i.vertices(), c, filter, cap)
}

pub(crate) fn shortest_resolving_raw(
    g: &Graph,
    i: &[usize],
    c: &BadCycle,
    filter: MoveFilter,
    cap: usize,
) -> Result<Option<Vec<Move>>> {
    let within = |m: &Move, k: usize| c.class(m.from) == Some(k) && c.class(m.to) == Some(k);
    let allow = |m: &Move| {
        let ok = match filter {
            MoveFilter::All => true,
            MoveFilter::InternalOnly => within(m, 2),
            MoveFilter::ExternalOnly => within(m, 0),
        };
        if ok {
            Expand::Full
        } else {
            Expand::GoalOnly
        }
    };
    bfs(g, i, Model::Ts, cap, allow, |s| c.is_resolved_by(g, |v| s.contains(v)))
}

/// Whether some TS-sequence with the given move restriction resolves `c`.
/// Exceeding `cap` is an error, never a `false`.
pub fn is_resolvable_brute(g: &Graph, i: &IndependentSet, c: &BadCycle, filter: MoveFilter, cap: usize) -> Result<bool> {
    Ok(shortest_resolving_sequence(g, i, c, filter, cap)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reversed,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Forward => "forward",
            Orientation::Reversed => "reversed",
        }
    }
}

/// The auxiliary digraph of a bad cycle of length at least 8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDigraph {
    pub orientation: Orientation,
    /// Sorted arcs.
    pub arcs: Vec<(usize, usize)>,
}

impl LayerDigraph {
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }
}

/// Out-neighbors of `u` in the digraph of the (already oriented) cycle `c`.
fn successors(g: &Graph, c: &BadCycle, u: usize) -> Vec<usize> {
    let half = c.layers.len();
    let target = if let Some(li) = c.layer_of[u] {
        Some((li + 1) % half)
    } else if c.class(u) == Some(1) {
        // the single B-neighbor sits at odd position 2i - 1; arcs go to L_i
        let p = g.neighbors(u).iter().find(|&&w| c.in_b[w]).and_then(|&w| c.position[w]).unwrap();
        Some(p.div_ceil(2) % half)
    } else {
        None
    };
    match target {
        Some(t) => c.layers[t].iter().copied().filter(|&v| v != u && !g.adjacent(u, v)).collect(),
        None => Vec::new(),
    }
}

pub fn build_layer_digraph(g: &Graph, c: &BadCycle, orientation: Orientation) -> Result<LayerDigraph> {
    if c.len() < 8 {
        return Err(Error::Precondition(format!("layer digraph needs cycle length >= 8, got {}", c.len())));
    }
    let oriented = match orientation {
        Orientation::Forward => c.clone(),
        Orientation::Reversed => c.reversed(g),
    };
    let mut arcs: Vec<(usize, usize)> =
        (0..g.n()).flat_map(|u| successors(g, &oriented, u).into_iter().map(move |v| (u, v))).collect();
    arcs.sort_unstable();
    Ok(LayerDigraph { orientation, arcs })
}

/// Evidence that a bad cycle is resolvable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionCertificate {
    /// An `(I \ A)`-augmenting path in `G - A - B` from `N_0(B)` to
    /// `N_1(B)`; `anchor` is the unique `A`-neighbor of its last vertex. A
    /// one-vertex path is the degenerate case where that last vertex has
    /// no other neighbor in `I`.
    External { path: Vec<usize>, anchor: usize },
    /// A shortest path `b = u_0, ..., u_m` in the layer digraph from an
    /// eligible `b ∈ N_1(B)` to `A`.
    InternalDigraph { orientation: Orientation, path: Vec<usize> },
    /// An explicit internal resolving sequence (cycles of length 4 or 6).
    InternalEnumeration { moves: Vec<Move> },
}

impl ResolutionCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            ResolutionCertificate::External { .. } => "external",
            ResolutionCertificate::InternalDigraph { .. } => "internal-digraph",
            ResolutionCertificate::InternalEnumeration { .. } => "internal-enumeration",
        }
    }

    pub fn is_external(&self) -> bool {
        matches!(self, ResolutionCertificate::External { .. })
    }

    /// `{"cycle": [...], "kind": ..., "witness": [...]}` with vertex labels.
    pub fn to_json(&self, g: &Graph, c: &BadCycle) -> Value {
        let names = |vs: &[usize]| vs.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>();
        let mut doc = json!({ "cycle": names(c.vertices()), "kind": self.kind() });
        match self {
            ResolutionCertificate::External { path, anchor } => {
                doc["witness"] = json!(names(path));
                doc["anchor"] = json!(g.label(*anchor));
            }
            ResolutionCertificate::InternalDigraph { orientation, path } => {
                doc["witness"] = json!(names(path));
                doc["orientation"] = json!(orientation.as_str());
            }
            ResolutionCertificate::InternalEnumeration { moves } => {
                let pairs: Vec<[&str; 2]> = moves.iter().map(|m| [g.label(m.from), g.label(m.to)]).collect();
                doc["witness"] = json!(pairs);
            }
        }
        doc
    }

    /// Replays the certificate into a TS-sequence from `i` whose last move
    /// resolves `c`.
    pub fn resolving_moves(&self, g: &Graph, c: &BadCycle) -> Result<Vec<Move>> {
        match self {
            ResolutionCertificate::External { path, anchor } => {
                let k = path.len() / 2;
                let mut moves: Vec<Move> = (0..k).map(|t| Move::new(path[2 * t + 1], path[2 * t])).collect();
                moves.push(Move::new(*anchor, path[2 * k]));
                Ok(moves)
            }
            ResolutionCertificate::InternalDigraph { orientation, path } => {
                let oriented = match orientation {
                    Orientation::Forward => c.clone(),
                    Orientation::Reversed => c.reversed(g),
                };
                internal_replay(g, &oriented, path)
            }
            ResolutionCertificate::InternalEnumeration { moves } => Ok(moves.clone()),
        }
    }
}

/// Extends the digraph path `b = u_0, ..., u_m` along the cycle and emits
/// the moves `u_{m-j+n} -> u_{m-j}` for `j = 1..m`.
fn internal_replay(g: &Graph, c: &BadCycle, path: &[usize]) -> Result<Vec<Move>> {
    let len = c.len();
    let half = len / 2;
    let m = path.len() - 1;
    let b = path[0];
    let p = g
        .neighbors(b)
        .iter()
        .find(|&&w| c.in_b[w])
        .and_then(|&w| c.position[w])
        .ok_or_else(|| Error::Internal("digraph path does not start in N_1(B)".into()))?;
    // relabel so that b's B-neighbor is c'_1
    let rel = |k: usize| c.vertices[(k + p + len - 1) % len];
    if rel(2 * m) != path[m] {
        return Err(Error::Internal("digraph path does not end on the expected A-vertex".into()));
    }
    let mut full = path.to_vec();
    full.extend((1..half).map(|j| rel(2 * (m + j))));
    Ok((1..=m).map(|j| Move::new(full[m - j + half], full[m - j])).collect())
}

/// External resolvability certificate. Requires `i` to be maximum.
pub fn externally_resolvable(g: &Graph, i: &IndependentSet, c: &BadCycle) -> Result<Option<ResolutionCertificate>> {
    if !i.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    if !is_maximum_raw(g, i.vertices()) {
        return Err(Error::Precondition("external characterization needs a maximum independent set".into()));
    }
    external_certificate(g, i.vertices(), c)
}

pub(crate) fn external_certificate(g: &Graph, i: &[usize], c: &BadCycle) -> Result<Option<ResolutionCertificate>> {
    let n = g.n();
    let mut in_i = vec![false; n];
    for &v in i {
        in_i[v] = true;
    }
    let a_nbrs = |y: usize| -> Vec<usize> { g.neighbors(y).iter().copied().filter(|&w| c.in_a[w]).collect() };
    for &y in &c.n1 {
        let i_nbrs: Vec<usize> = g.neighbors(y).iter().copied().filter(|&w| in_i[w]).collect();
        if let [w] = i_nbrs[..] {
            if c.in_a[w] {
                return Ok(Some(ResolutionCertificate::External { path: vec![y], anchor: w }));
            }
        }
    }
    let host: Vec<bool> = (0..n).map(|v| in_i[v] && !c.in_a[v]).collect();
    let allowed: Vec<bool> = (0..n).map(|v| !c.in_a[v] && !c.in_b[v]).collect();
    for &x in &c.n0 {
        if in_i[x] {
            continue;
        }
        for &y in &c.n1 {
            if let Some(path) = augmenting_path_between(g, &host, &allowed, x, Some(y)) {
                let anchor = match a_nbrs(y)[..] {
                    [w] => w,
                    _ => return Err(Error::Internal("augmenting path ends next to two A-vertices".into())),
                };
                return Ok(Some(ResolutionCertificate::External { path, anchor }));
            }
        }
    }
    Ok(None)
}

/// Internal resolvability certificate: the layer digraphs for cycles of
/// length at least 8, a bounded enumeration for lengths 4 and 6.
pub fn internally_resolvable(g: &Graph, i: &IndependentSet, c: &BadCycle) -> Result<Option<ResolutionCertificate>> {
    if !i.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    internal_certificate(g, i.vertices(), c)
}

pub(crate) fn internal_certificate(g: &Graph, i: &[usize], c: &BadCycle) -> Result<Option<ResolutionCertificate>> {
    if c.len() < 8 {
        let mut rest = vec![false; g.n()];
        for &v in i {
            rest[v] = !c.in_a[v];
        }
        let allow = |m: &Move| if rest[m.from] { Expand::Skip } else { Expand::Full };
        let found = bfs(g, i, Model::Ts, DEFAULT_CAP, allow, |s| c.is_resolved_by(g, |v| s.contains(v)))?;
        return Ok(found.map(|moves| ResolutionCertificate::InternalEnumeration { moves }));
    }
    let mut in_i = vec![false; g.n()];
    for &v in i {
        in_i[v] = true;
    }
    let eligible: Vec<usize> = c
        .n1
        .iter()
        .copied()
        .filter(|&b| g.neighbors(b).iter().all(|&w| !in_i[w] || c.in_a[w]))
        .collect();
    for orientation in [Orientation::Forward, Orientation::Reversed] {
        let oriented = match orientation {
            Orientation::Forward => c.clone(),
            Orientation::Reversed => c.reversed(g),
        };
        for &b in &eligible {
            if let Some(path) = digraph_path_to_a(g, &oriented, b) {
                return Ok(Some(ResolutionCertificate::InternalDigraph { orientation, path }));
            }
        }
    }
    Ok(None)
}

fn digraph_path_to_a(g: &Graph, c: &BadCycle, b: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[b] = b;
    let mut queue = std::collections::VecDeque::from([b]);
    while let Some(u) = queue.pop_front() {
        for v in successors(g, c, u) {
            if parent[v] != usize::MAX {
                continue;
            }
            parent[v] = u;
            if c.in_a[v] {
                let mut path = vec![v];
                let mut at = v;
                while at != b {
                    at = parent[at];
                    path.push(at);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

/// External test first (only when `maximum`), then internal.
pub(crate) fn find_certificate(
    g: &Graph,
    i: &[usize],
    c: &BadCycle,
    maximum: bool,
) -> Result<Option<ResolutionCertificate>> {
    if maximum {
        if let Some(cert) = external_certificate(g, i, c)? {
            return Ok(Some(cert));
        }
    }
    internal_certificate(g, i, c)
}

/// A TS-sequence from `i` to `i Δ V(C)` built from a certificate.
pub fn resolve_and_turn(
    g: &Graph,
    i: &IndependentSet,
    c: &BadCycle,
    cert: &ResolutionCertificate,
) -> Result<ReconfigSequence> {
    if !i.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    let resolving = cert.resolving_moves(g, c)?;
    let moves = turn_cycle(g, i.vertices(), c, &resolving)?;
    Ok(ReconfigSequence::new(Model::Ts, i.clone(), moves))
}

/// Turns `c` using any TS-sequence from `i` that resolves it at some point.
///
/// The sequence is cut at its first resolving move `u -> v`. Up to that
/// move every token on the cycle's neighborhood stays in its layer, so the
/// tokens there form a shifted copy `C'` of the cycle on the same `B`.
/// From the set before the cut, `C'` is turned by `u -> v`, then
/// `c'_{2n-1} -> c'_{2n}, ..., c'_3 -> c'_4`, then `v -> c'_2`, where
/// `c'_1 = u` and `c'_2` is the `B`-neighbor of `v`. Finally the earlier
/// moves inside `N_0(B)` are undone in reverse order.
pub(crate) fn turn_cycle(g: &Graph, i: &[usize], c: &BadCycle, resolving: &[Move]) -> Result<Vec<Move>> {
    check_moves(g, i, resolving, Model::Ts).map_err(|e| Error::Internal(format!("resolving sequence invalid: {e}")))?;
    let mut occupied = vec![false; g.n()];
    for &v in i {
        occupied[v] = true;
    }
    let mut cut = None;
    for (t, m) in resolving.iter().enumerate() {
        occupied[m.from] = false;
        occupied[m.to] = true;
        if c.is_resolved_by(g, |v| occupied[v]) {
            cut = Some(t);
            break;
        }
    }
    let cut = cut.ok_or_else(|| Error::Internal("sequence never resolves the cycle".into()))?;
    let prefix = &resolving[..cut];
    let last = resolving[cut];
    let before = apply_moves(i, prefix);

    if c.len() < 8 {
        return turn_short_cycle(g, i, c, prefix);
    }
    if c.class(last.from) != Some(2) || c.class(last.to) != Some(1) {
        return Err(Error::Internal("resolving move does not go from N_2(B) to N_1(B)".into()));
    }
    let shifted = c
        .shifted(g, &before)
        .ok_or_else(|| Error::Internal("tokens left their layers before resolution".into()))?;
    let len = c.len();
    let pu = shifted.position[last.from].ok_or_else(|| Error::Internal("resolving token is off the cycle".into()))?;
    let vb = g
        .neighbors(last.to)
        .iter()
        .find(|&&w| c.in_b[w])
        .and_then(|&w| shifted.position[w])
        .unwrap();
    let forward = vb == (pu + 1) % len;
    let rel = |k: usize| -> usize {
        let p = if forward { pu + k - 1 } else { pu + len * k - (k - 1) };
        shifted.vertices[p % len]
    };

    let mut moves = prefix.to_vec();
    moves.push(last);
    for k in (3..len).rev().step_by(2) {
        moves.push(Move::new(rel(k), rel(k + 1)));
    }
    moves.push(Move::new(last.to, rel(2)));
    for m in prefix.iter().rev() {
        if c.class(m.from) == Some(0) && c.class(m.to) == Some(0) {
            moves.push(m.reversed());
        }
    }

    finish_turn(g, i, c, moves)
}

/// Short cycles have at most three `A`-tokens and, for length 4, coinciding
/// layers. From the set before the resolving move, the tokens in `N_0(B)`
/// stay put while the others are routed to `B` by a search over the
/// `O(n^3)` sets that keep them fixed. The earlier `N_0(B)` moves are then
/// undone as in the long-cycle case.
fn turn_short_cycle(g: &Graph, i: &[usize], c: &BadCycle, prefix: &[Move]) -> Result<Vec<Move>> {
    let before = apply_moves(i, prefix);
    let mut fixed = vec![false; g.n()];
    for &v in &before {
        fixed[v] = c.class(v) == Some(0);
    }
    let mut target: Vec<usize> = before.iter().copied().filter(|&v| fixed[v]).chain(c.b.iter().copied()).collect();
    target.sort_unstable();
    let goal = bitset(g.n(), &target);
    let allow = |m: &Move| if fixed[m.from] { Expand::Skip } else { Expand::Full };
    let rotate = bfs(g, &before, Model::Ts, DEFAULT_CAP, allow, |s| *s == goal)?
        .ok_or_else(|| Error::Internal("short cycle cannot be turned after resolution".into()))?;
    let mut moves = prefix.to_vec();
    moves.extend(rotate);
    for m in prefix.iter().rev() {
        if c.class(m.from) == Some(0) && c.class(m.to) == Some(0) {
            moves.push(m.reversed());
        }
    }
    finish_turn(g, i, c, moves)
}

/// Checks that `moves` is a TS-sequence from `i` to `(I \ A) ∪ B`.
fn finish_turn(g: &Graph, i: &[usize], c: &BadCycle, moves: Vec<Move>) -> Result<Vec<Move>> {
    let end = check_moves(g, i, &moves, Model::Ts).map_err(|e| Error::Internal(format!("turn sequence invalid: {e}")))?;
    let mut expected: Vec<usize> = i.iter().copied().filter(|&v| !c.in_a[v]).chain(c.b.iter().copied()).collect();
    expected.sort_unstable();
    if end != expected {
        return Err(Error::Internal("turn sequence does not end at I Δ V(C)".into()));
    }
    Ok(moves)
}
