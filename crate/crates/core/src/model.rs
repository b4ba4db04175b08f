//! Independent sets, token moves, reconfiguration sequences and the
//! path/cycle structure of a symmetric difference.
//!
//! A sequence stores its start set and the moves only; intermediate sets are
//! recomputed whenever a sequence is validated or replayed.
//!
//! Token jumping between sets of size `k` is equivalent to token
//! addition/removal with threshold `k - 1`, so TAR questions can be answered
//! with [`Model::Tj`]; TAR sequences are not modelled separately.

use serde::{Deserialize, Serialize};

use crate::error::{Error, MoveViolation, Result, SequenceError};
use crate::graph::Graph;

/// A set of pairwise non-adjacent vertices, validated against one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndependentSet {
    vertices: Vec<usize>,
    graph_key: u64,
}

impl IndependentSet {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_bound_to(&self, g: &Graph) -> bool {
        self.graph_key == g.key()
    }

    /// Membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.vertices {
            m[v] = true;
        }
        m
    }

    /// Wraps a set the caller already knows to be independent in `g`.
    pub(crate) fn trusted(g: &Graph, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        debug_assert!(g.edge_within(&vertices).is_none());
        IndependentSet { vertices, graph_key: g.key() }
    }
}

/// Validates `vs` as an independent set of `g`. The error names the first
/// offending edge.
pub fn make_independent_set(g: &Graph, vs: &[usize]) -> Result<IndependentSet> {
    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
        return Err(crate::error::GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    if let Some((u, v)) = g.edge_within(vs) {
        return Err(Error::NotIndependent(u, v));
    }
    Ok(IndependentSet::trusted(g, vs.to_vec()))
}

/// Same as [`make_independent_set`] but takes vertex labels.
pub fn independent_set_from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<IndependentSet> {
    let vs = g.vertices_of(labels)?;
    make_independent_set(g, &vs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    /// Token sliding: tokens move along edges.
    #[serde(rename = "TS")]
    Ts,
    /// Token jumping: tokens move to any free vertex.
    #[serde(rename = "TJ")]
    Tj,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Ts => "TS",
            Model::Tj => "TJ",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "TS" => Ok(Model::Ts),
            "TJ" => Ok(Model::Tj),
            other => Err(format!("unknown model {other:?} (expected TS or TJ)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: usize,
    pub to: usize,
}

impl Move {
    pub fn new(from: usize, to: usize) -> Self {
        Move { from, to }
    }

    pub fn reversed(self) -> Self {
        Move { from: self.to, to: self.from }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigSequence {
    pub model: Model,
    pub start: IndependentSet,
    pub moves: Vec<Move>,
}

impl ReconfigSequence {
    pub fn new(model: Model, start: IndependentSet, moves: Vec<Move>) -> Self {
        ReconfigSequence { model, start, moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The set reached after all moves (sorted). Does not validate.
    pub fn end(&self) -> Vec<usize> {
        apply_moves(self.start.vertices(), &self.moves)
    }

    /// Certificate document with external labels.
    pub fn to_doc(&self, g: &Graph) -> SequenceDoc {
        SequenceDoc {
            model: self.model,
            start: self.start.vertices().iter().map(|&v| g.label(v).to_string()).collect(),
            moves: self
                .moves
                .iter()
                .map(|m| [g.label(m.from).to_string(), g.label(m.to).to_string()])
                .collect(),
        }
    }

    pub fn from_doc(g: &Graph, doc: &SequenceDoc) -> Result<Self> {
        let start = independent_set_from_labels(g, &doc.start)?;
        let moves = doc
            .moves
            .iter()
            .map(|[a, b]| {
                let from = g.vertex(a).ok_or_else(|| crate::error::GraphError::UnknownLabel(a.clone()))?;
                let to = g.vertex(b).ok_or_else(|| crate::error::GraphError::UnknownLabel(b.clone()))?;
                Ok(Move { from, to })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReconfigSequence { model: doc.model, start, moves })
    }
}

/// Certificate JSON: `{"model": "TS"|"TJ", "start": [..], "moves": [[from, to], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub model: Model,
    pub start: Vec<String>,
    pub moves: Vec<[String; 2]>,
}

/// Applies moves blindly and returns the sorted result.
pub fn apply_moves(start: &[usize], moves: &[Move]) -> Vec<usize> {
    let mut set: Vec<usize> = start.to_vec();
    for m in moves {
        if let Some(p) = set.iter().position(|&v| v == m.from) {
            set[p] = m.to;
        }
    }
    set.sort_unstable();
    set
}

/// Replays `moves` from `start` and checks every step. Returns the final
/// set, sorted. `start` must already be independent.
pub fn check_moves(
    g: &Graph,
    start: &[usize],
    moves: &[Move],
    model: Model,
) -> std::result::Result<Vec<usize>, SequenceError> {
    let n = g.n();
    let mut occupied = vec![false; n];
    for &v in start {
        occupied[v] = true;
    }
    for (step, m) in moves.iter().enumerate() {
        let fail = |violation| Err(SequenceError { step, violation });
        if m.from >= n || m.to >= n || m.from == m.to {
            return fail(MoveViolation::Degenerate);
        }
        if !occupied[m.from] {
            return fail(MoveViolation::FromEmpty);
        }
        if occupied[m.to] {
            return fail(MoveViolation::ToOccupied);
        }
        if model == Model::Ts && !g.adjacent(m.from, m.to) {
            return fail(MoveViolation::NotAnEdge);
        }
        if g.neighbors(m.to).iter().any(|&w| w != m.from && occupied[w]) {
            return fail(MoveViolation::Conflict);
        }
        occupied[m.from] = false;
        occupied[m.to] = true;
    }
    Ok((0..n).filter(|&v| occupied[v]).collect())
}

/// Checks that `seq` is a valid TS- or TJ-sequence in `g`.
pub fn validate_sequence(g: &Graph, seq: &ReconfigSequence) -> Result<()> {
    if !seq.start.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    check_moves(g, seq.start.vertices(), &seq.moves, seq.model)?;
    Ok(())
}

/// Components of `G[I Δ J]`.
///
/// Each path is listed from its smaller endpoint (isolated vertices are
/// one-vertex paths). Each cycle starts at its smallest vertex of `I \ J`
/// and continues towards the smaller of that vertex's two cycle neighbors.
/// Components appear in order of their smallest vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymDiffDecomposition {
    pub paths: Vec<Vec<usize>>,
    pub cycles: Vec<Vec<usize>>,
}

impl SymDiffDecomposition {
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty() && self.cycles.is_empty()
    }
}

pub fn decompose_symdiff(g: &Graph, i: &IndependentSet, j: &IndependentSet) -> Result<SymDiffDecomposition> {
    decompose_symdiff_raw(g, i.vertices(), j.vertices())
}

pub(crate) fn decompose_symdiff_raw(g: &Graph, i: &[usize], j: &[usize]) -> Result<SymDiffDecomposition> {
    let n = g.n();
    let mut in_i = vec![false; n];
    let mut in_j = vec![false; n];
    for &v in i {
        in_i[v] = true;
    }
    for &v in j {
        in_j[v] = true;
    }
    let in_d: Vec<bool> = (0..n).map(|v| in_i[v] != in_j[v]).collect();
    let nb = |v: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&w| in_d[w]).collect() };
    for v in (0..n).filter(|&v| in_d[v]) {
        if nb(v).len() > 2 {
            return Err(Error::NotClawFree(v));
        }
    }

    let mut out = SymDiffDecomposition::default();
    let mut seen = vec![false; n];
    for s in 0..n {
        if !in_d[s] || seen[s] {
            continue;
        }
        // collect the component
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            for w in nb(comp[k]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        let endpoint = comp.iter().copied().filter(|&v| nb(v).len() <= 1).min();
        let walk_from = |first: usize, second: Option<usize>| -> Vec<usize> {
            let mut order = vec![first];
            let mut prev = first;
            let mut cur = match second {
                Some(x) => x,
                None => return order,
            };
            while cur != first {
                order.push(cur);
                let next = nb(cur).into_iter().find(|&w| w != prev);
                match next {
                    Some(x) => {
                        prev = cur;
                        cur = x;
                    }
                    None => break,
                }
            }
            order
        };
        match endpoint {
            Some(e) => out.paths.push(walk_from(e, nb(e).first().copied())),
            None => {
                let start = comp.iter().copied().filter(|&v| in_i[v]).min().expect("cycles alternate");
                let second = nb(start).into_iter().min();
                out.cycles.push(walk_from(start, second));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(g: &Graph, labels: &[&str]) -> IndependentSet {
        independent_set_from_labels(g, labels).unwrap()
    }

    #[test]
    fn independent_set_validation() {
        let c6 = fixtures::cycle(6);
        assert!(make_independent_set(&c6, &[0, 2, 4]).is_ok());
        let p3 = fixtures::p3();
        assert_eq!(make_independent_set(&p3, &[0, 1]), Err(Error::NotIndependent(0, 1)));
        let fig1 = fixtures::fig1();
        assert!(independent_set_from_labels(&fig1, &["c0", "c2", "c4", "c6"]).is_ok());
    }

    #[test]
    fn sequence_validation() {
        let p3 = fixtures::p3();
        let seq = ReconfigSequence::new(Model::Ts, set(&p3, &["a"]), vec![Move::new(0, 1), Move::new(1, 2)]);
        assert!(validate_sequence(&p3, &seq).is_ok());
        assert_eq!(seq.end(), vec![2]);

        let claw = fixtures::claw();
        let (a, b, c) = (claw.vertex("a").unwrap(), claw.vertex("b").unwrap(), claw.vertex("c").unwrap());
        let tj = ReconfigSequence::new(Model::Tj, set(&claw, &["a", "b"]), vec![Move::new(b, c)]);
        assert!(validate_sequence(&claw, &tj).is_ok());
        let ts = ReconfigSequence { model: Model::Ts, ..tj.clone() };
        assert_eq!(
            validate_sequence(&claw, &ts),
            Err(Error::InvalidSequence(SequenceError { step: 0, violation: MoveViolation::NotAnEdge }))
        );
        let occupied = ReconfigSequence::new(Model::Tj, set(&claw, &["a", "b"]), vec![Move::new(b, a)]);
        assert!(matches!(
            validate_sequence(&claw, &occupied),
            Err(Error::InvalidSequence(SequenceError { violation: MoveViolation::ToOccupied, .. }))
        ));
    }

    #[test]
    fn validation_catches_conflicts_and_foreign_sets() {
        let p4 = fixtures::path(4);
        let seq = ReconfigSequence::new(Model::Ts, set(&p4, &["v0", "v3"]), vec![Move::new(0, 1), Move::new(1, 2)]);
        assert_eq!(
            validate_sequence(&p4, &seq),
            Err(Error::InvalidSequence(SequenceError { step: 1, violation: MoveViolation::Conflict }))
        );
        let other = fixtures::cycle(6);
        assert_eq!(validate_sequence(&other, &seq), Err(Error::GraphMismatch));
    }

    #[test]
    fn symdiff_shapes() {
        let c6 = fixtures::cycle(6);
        let d = decompose_symdiff(&c6, &set(&c6, &["v0", "v2", "v4"]), &set(&c6, &["v1", "v3", "v5"])).unwrap();
        assert!(d.paths.is_empty());
        assert_eq!(d.cycles, vec![vec![0, 1, 2, 3, 4, 5]]);

        let p4 = fixtures::path(4);
        let d = decompose_symdiff(&p4, &set(&p4, &["v0", "v2"]), &set(&p4, &["v1", "v3"])).unwrap();
        assert_eq!(d.paths, vec![vec![0, 1, 2, 3]]);
        assert!(d.cycles.is_empty());

        let i = set(&p4, &["v0", "v2"]);
        assert!(decompose_symdiff(&p4, &i, &i).unwrap().is_empty());
    }

    #[test]
    fn symdiff_flags_claw_centers() {
        let claw = fixtures::claw();
        let x = claw.vertex("x").unwrap();
        let i = set(&claw, &["x"]);
        let j = set(&claw, &["a", "b", "c"]);
        assert_eq!(decompose_symdiff(&claw, &i, &j), Err(Error::NotClawFree(x)));
    }

    #[test]
    fn certificate_doc_round_trip() {
        let p3 = fixtures::p3();
        let seq = ReconfigSequence::new(Model::Ts, set(&p3, &["a"]), vec![Move::new(0, 1), Move::new(1, 2)]);
        let doc = seq.to_doc(&p3);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"model":"TS","start":["a"],"moves":[["a","b"],["b","c"]]}"#);
        let back: SequenceDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(ReconfigSequence::from_doc(&p3, &back).unwrap(), seq);
    }
}
