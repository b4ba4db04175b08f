//! The decision procedure.
//!
//! 1. `|I| != |J|` is NO.
//! 2. A graph with a claw is REJECTED (or handed to the oracle on request).
//! 3. TJ with a non-maximum `I` is YES.
//! 4. Otherwise every connected component is handled on its own: equal token
//!    counts are required; a non-maximum restriction of `I` is YES; a
//!    maximum one is YES iff every cycle of `G[I Δ J]` is externally or
//!    internally resolvable.
//!
//! YES answers carry a validated move sequence, NO answers the offending
//! component or cycle.

use serde_json::{json, Value};

use crate::alternating::is_maximum_raw;
use crate::error::{Error, Result};
use crate::graph::{connected_components, diameter, find_claw, ClawWitness, Graph};
use crate::model::{make_independent_set, IndependentSet, Model, Move, ReconfigSequence};
use crate::oracle::{oracle_reachable, DEFAULT_CAP};
use crate::resolution::{external_certificate, extract_bad_cycles_raw, internal_certificate, BadCycle, ResolutionCertificate};
use crate::sequencer::{assemble_raw, expand_raw, nonmaximum_moves};

/// Version of the decision JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    /// The input is outside the algorithm's domain (a claw was found).
    Rejected,
    /// The oracle hit its state cap.
    Inconclusive,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Rejected => "REJECTED",
            Answer::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Sequence(ReconfigSequence),
    SizeMismatch { i: usize, j: usize },
    ComponentSizeMismatch { component: usize, i: usize, j: usize },
    /// A cycle of `G[I Δ J]` that is neither externally nor internally
    /// resolvable, in vertex ids of the whole graph.
    UnresolvableCycle { component: usize, cycle: Box<BadCycle> },
    /// The oracle exhausted the reachable sets without meeting `J`.
    Unreachable,
    Claw(ClawWitness),
    CapExceeded { cap: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecisionStats {
    pub cycles: usize,
    pub resolved_externally: usize,
    pub resolved_internally: usize,
    pub sequence_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: Answer,
    pub model: Model,
    pub certificate: Certificate,
    pub stats: DecisionStats,
    /// The certificate used for each resolved cycle, in vertex ids of the
    /// whole graph.
    pub resolutions: Vec<(BadCycle, ResolutionCertificate)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Answer claw-containing inputs with the oracle instead of rejecting.
    pub force_oracle: bool,
    /// State cap for the oracle.
    pub cap: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { force_oracle: false, cap: DEFAULT_CAP }
    }
}

impl Decision {
    fn new(answer: Answer, model: Model, certificate: Certificate) -> Self {
        Decision { answer, model, certificate, stats: DecisionStats::default(), resolutions: Vec::new() }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn sequence(&self) -> Option<&ReconfigSequence> {
        match &self.certificate {
            Certificate::Sequence(s) => Some(s),
            _ => None,
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let names = |vs: &[usize]| vs.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>();
        let certificate = match &self.certificate {
            Certificate::Sequence(seq) => {
                let mut doc = serde_json::to_value(seq.to_doc(g)).expect("sequence doc serializes");
                doc["kind"] = json!("sequence");
                let resolutions: Vec<Value> = self.resolutions.iter().map(|(c, r)| r.to_json(g, c)).collect();
                doc["resolutions"] = json!(resolutions);
                doc
            }
            Certificate::SizeMismatch { i, j } => json!({ "kind": "size-mismatch", "I": i, "J": j }),
            Certificate::ComponentSizeMismatch { component, i, j } => {
                json!({ "kind": "component-size-mismatch", "component": component, "I": i, "J": j })
            }
            Certificate::UnresolvableCycle { component, cycle } => json!({
                "kind": "unresolvable-cycle",
                "component": component,
                "cycle": names(cycle.vertices()),
            }),
            Certificate::Unreachable => json!({ "kind": "unreachable" }),
            Certificate::Claw(w) => json!({
                "kind": "claw",
                "center": g.label(w.center),
                "leaves": names(&w.leaves),
            }),
            Certificate::CapExceeded { cap } => json!({ "kind": "cap-exceeded", "cap": cap }),
        };
        json!({
            "schema": SCHEMA_VERSION,
            "answer": self.answer.as_str(),
            "model": self.model,
            "certificate": certificate,
            "stats": {
                "cycles": self.stats.cycles,
                "resolvedExternally": self.stats.resolved_externally,
                "resolvedInternally": self.stats.resolved_internally,
                "sequenceLength": self.stats.sequence_length,
            },
        })
    }
}

pub fn decide(g: &Graph, i: &IndependentSet, j: &IndependentSet, model: Model) -> Result<Decision> {
    decide_with(g, i, j, model, &DecideOptions::default())
}

/// Errors only for sets bound to another graph or on an internal invariant
/// breach; every other outcome is a [`Decision`].
pub fn decide_with(
    g: &Graph,
    i: &IndependentSet,
    j: &IndependentSet,
    model: Model,
    opts: &DecideOptions,
) -> Result<Decision> {
    if !i.is_bound_to(g) || !j.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    if i.len() != j.len() {
        return Ok(Decision::new(Answer::No, model, Certificate::SizeMismatch { i: i.len(), j: j.len() }));
    }
    if let Some(claw) = find_claw(g) {
        if opts.force_oracle {
            return decide_by_oracle(g, i, j, model, opts.cap);
        }
        return Ok(Decision::new(Answer::Rejected, model, Certificate::Claw(claw)));
    }
    if i == j {
        return Ok(yes(model, i, Vec::new(), DecisionStats::default(), Vec::new()));
    }
    if model == Model::Tj && !is_maximum_raw(g, i.vertices()) {
        let moves = nonmaximum_moves(g, i.vertices(), j.vertices())?;
        return Ok(yes(model, i, moves, DecisionStats::default(), Vec::new()));
    }
    per_component(g, i, j, model)
}

fn yes(
    model: Model,
    i: &IndependentSet,
    moves: Vec<Move>,
    mut stats: DecisionStats,
    resolutions: Vec<(BadCycle, ResolutionCertificate)>,
) -> Decision {
    stats.sequence_length = moves.len();
    let seq = ReconfigSequence::new(model, i.clone(), moves);
    Decision { answer: Answer::Yes, model, certificate: Certificate::Sequence(seq), stats, resolutions }
}

fn map_cert(cert: ResolutionCertificate, map: &[usize]) -> ResolutionCertificate {
    let vs = |p: Vec<usize>| p.into_iter().map(|v| map[v]).collect();
    match cert {
        ResolutionCertificate::External { path, anchor } => {
            ResolutionCertificate::External { path: vs(path), anchor: map[anchor] }
        }
        ResolutionCertificate::InternalDigraph { orientation, path } => {
            ResolutionCertificate::InternalDigraph { orientation, path: vs(path) }
        }
        ResolutionCertificate::InternalEnumeration { moves } => ResolutionCertificate::InternalEnumeration {
            moves: moves.into_iter().map(|m| Move::new(map[m.from], map[m.to])).collect(),
        },
    }
}

fn per_component(g: &Graph, i: &IndependentSet, j: &IndependentSet, model: Model) -> Result<Decision> {
    let mut stats = DecisionStats::default();
    let mut moves: Vec<Move> = Vec::new();
    let mut resolutions = Vec::new();
    for (cid, comp) in connected_components(g).into_iter().enumerate() {
        let (sub, map) = g.induced_subgraph(&comp);
        let mut local = vec![usize::MAX; g.n()];
        for (k, &v) in map.iter().enumerate() {
            local[v] = k;
        }
        let restrict = |s: &IndependentSet| -> Vec<usize> {
            s.vertices().iter().filter(|&&v| local[v] != usize::MAX).map(|&v| local[v]).collect()
        };
        let (ic, jc) = (restrict(i), restrict(j));
        if ic.len() != jc.len() {
            let cert = Certificate::ComponentSizeMismatch { component: cid, i: ic.len(), j: jc.len() };
            return Ok(Decision { stats, ..Decision::new(Answer::No, model, cert) });
        }
        if ic == jc {
            continue;
        }
        let local_moves = if !is_maximum_raw(&sub, &ic) {
            let jumps = nonmaximum_moves(&sub, &ic, &jc)?;
            expand_raw(&sub, diameter(&sub)?, &ic, &jumps)?
        } else {
            let mut resolved = Vec::new();
            for c in extract_bad_cycles_raw(&sub, &ic, &jc)? {
                stats.cycles += 1;
                let cert = if let Some(cert) = external_certificate(&sub, &ic, &c)? {
                    stats.resolved_externally += 1;
                    cert
                } else if let Some(cert) = internal_certificate(&sub, &ic, &c)? {
                    stats.resolved_internally += 1;
                    cert
                } else {
                    let cycle = BadCycle::new(g, i.vertices(), c.vertices().iter().map(|&v| map[v]).collect())?;
                    let cert = Certificate::UnresolvableCycle { component: cid, cycle: Box::new(cycle) };
                    return Ok(Decision { stats, ..Decision::new(Answer::No, model, cert) });
                };
                resolved.push((c, cert));
            }
            let local_moves = assemble_raw(&sub, &ic, &jc, &resolved)?;
            for (c, cert) in resolved {
                let cycle = BadCycle::new(g, i.vertices(), c.vertices().iter().map(|&v| map[v]).collect())?;
                resolutions.push((cycle, map_cert(cert, &map)));
            }
            local_moves
        };
        moves.extend(local_moves.into_iter().map(|m| Move::new(map[m.from], map[m.to])));
    }
    Ok(yes(model, i, moves, stats, resolutions))
}

/// Answers with a shortest oracle sequence; works on any graph.
pub fn decide_by_oracle(g: &Graph, i: &IndependentSet, j: &IndependentSet, model: Model, cap: usize) -> Result<Decision> {
    if i.len() != j.len() {
        return Ok(Decision::new(Answer::No, model, Certificate::SizeMismatch { i: i.len(), j: j.len() }));
    }
    match oracle_reachable(g, i, j, model, cap) {
        Ok(Some(seq)) => Ok(yes(model, i, seq.moves, DecisionStats::default(), Vec::new())),
        Ok(None) => Ok(Decision::new(Answer::No, model, Certificate::Unreachable)),
        Err(Error::CapExceeded { cap }) => Ok(Decision::new(Answer::Inconclusive, model, Certificate::CapExceeded { cap })),
        Err(e) => Err(e),
    }
}

/// Decides reconfiguration of vertex covers through their complements.
/// Fails with the offending edge if a complement is not independent.
pub fn decide_vertex_cover(g: &Graph, cov_i: &[usize], cov_j: &[usize], model: Model) -> Result<Decision> {
    let complement = |cov: &[usize]| -> Result<IndependentSet> {
        let mut in_cov = vec![false; g.n()];
        for &v in cov {
            if v >= g.n() {
                return Err(crate::error::GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
            }
            in_cov[v] = true;
        }
        let rest: Vec<usize> = (0..g.n()).filter(|&v| !in_cov[v]).collect();
        make_independent_set(g, &rest)
    };
    let (i, j) = (complement(cov_i)?, complement(cov_j)?);
    decide(g, &i, &j, model)
}
