//! Seeded random instances and the decide-versus-oracle cross-check.
//!
//! Instance `idx` of a run with seed `s` is drawn from a ChaCha8 stream
//! seeded with `s` on stream `idx`, so every instance can be regenerated on
//! its own and parallel runs stay bit-reproducible.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decider::{decide_by_oracle, decide_with, Answer, DecideOptions};
use crate::error::Result;
use crate::graph::{find_claw, repair_claws, Graph};
use crate::instance::Instance;
use crate::model::{make_independent_set, validate_sequence, Model};
use crate::oracle::DEFAULT_CAP;

/// How `I` and `J` are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// Two unrelated random independent sets of equal size.
    RandomSets,
    /// `J` is the end of a random sliding walk from `I`.
    Walk,
    /// The graph is grown around a chordless even cycle `C` and
    /// `J = I Δ V(C)`.
    CycleSeeded,
}

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub index: u64,
    pub kind: InstanceKind,
    pub graph: Graph,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl FuzzInstance {
    pub fn to_instance(&self, model: Model) -> Instance {
        Instance::from_parts(&self.graph, &self.i, &self.j, model)
    }
}

/// The RNG of instance `index` in the run seeded by `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A connected claw-free instance with at most `max_n` vertices (and at
/// least 2) and `1 <= |I| = |J| <= max_k`.
pub fn random_instance(seed: u64, index: u64, max_n: usize, max_k: usize) -> FuzzInstance {
    let max_n = max_n.max(2);
    let max_k = max_k.max(1);
    let mut rng = instance_rng(seed, index);
    let kind = match rng.gen_range(0..3) {
        0 => InstanceKind::RandomSets,
        1 => InstanceKind::Walk,
        _ => InstanceKind::CycleSeeded,
    };
    if kind == InstanceKind::CycleSeeded && max_n >= 4 {
        if let Some((graph, i, j)) = cycle_seeded(&mut rng, max_n, max_k) {
            return FuzzInstance { index, kind, graph, i, j };
        }
    }
    let kind = if kind == InstanceKind::CycleSeeded { InstanceKind::RandomSets } else { kind };
    let graph = random_connected_claw_free(&mut rng, max_n);
    let a = random_maximal_set(&mut rng, &graph, &[]);
    let k = rng.gen_range(1..=a.len().min(max_k));
    let i = random_subset(&mut rng, &a, k);
    let j = match kind {
        InstanceKind::Walk => random_walk(&mut rng, &graph, &i, 12),
        _ => {
            // retry a few times for a second set that is large enough
            let mut j = i.clone();
            for _ in 0..8 {
                let b = random_maximal_set(&mut rng, &graph, &[]);
                if b.len() >= k {
                    j = random_subset(&mut rng, &b, k);
                    break;
                }
            }
            j
        }
    };
    FuzzInstance { index, kind, graph, i, j }
}

/// `G(n, p)` repaired to claw-freeness, restricted to the component of a
/// random vertex and relabelled `0..`.
fn random_connected_claw_free(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.2..0.7);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = repair_claws(n, edges, |_, _| true);
        let g = component_of(&g, rng.gen_range(0..n));
        if g.n() >= 2 {
            return relabel(rng, &g, |v| v.to_string());
        }
    }
}

/// An even cycle `c0..c{2m-1}` plus extra vertices, each joined to a run of
/// one to four consecutive cycle vertices, plus random extra-extra edges.
/// Claws are repaired without touching cycle vertex pairs, so the cycle
/// stays chordless.
fn cycle_seeded(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> Option<(Graph, Vec<usize>, Vec<usize>)> {
    let max_half = (max_n / 2).min(max_k);
    if max_half < 2 {
        return None;
    }
    let half = rng.gen_range(2..=max_half);
    let len = 2 * half;
    let extras = rng.gen_range(0..=max_n - len);
    let n = len + extras;
    let mut edges: Vec<(usize, usize)> = (0..len).map(|c| (c, (c + 1) % len)).collect();
    for x in len..n {
        let start = rng.gen_range(0..len);
        let run = rng.gen_range(1..=4.min(len - 1));
        edges.extend((0..run).map(|t| ((start + t) % len, x)));
    }
    let p = rng.gen_range(0.1..0.6);
    for x in len..n {
        for y in x + 1..n {
            if rng.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    let g = repair_claws(n, edges, |u, v| u >= len || v >= len);
    let g = component_of(&g, 0);
    // component_of keeps the ascending order, so the cycle is still 0..len
    let a: Vec<usize> = (0..len).step_by(2).collect();
    let b: Vec<usize> = (1..len).step_by(2).collect();
    let mut i = a.clone();
    let mut rest: Vec<usize> = (len..g.n()).filter(|&v| a.iter().all(|&c| !g.adjacent(c, v))).collect();
    rest.shuffle(rng);
    let want = if rng.gen_bool(0.5) { usize::MAX } else { rng.gen_range(0..=rest.len()) };
    for v in rest {
        if i.len() >= max_k.max(half) || i.len() - half >= want {
            break;
        }
        if i.iter().all(|&u| !g.adjacent(u, v)) {
            i.push(v);
        }
    }
    let mut j: Vec<usize> = i.iter().copied().filter(|&v| v >= len).chain(b).collect();
    let perm = permutation(rng, g.n());
    let name = |v: usize| if v < len { format!("c{v}") } else { format!("x{}", v - len) };
    let labels: Vec<String> = (0..g.n()).map(name).collect();
    let g = permute(&g, &perm, |v| labels[v].clone());
    for s in [&mut i, &mut j] {
        for v in s.iter_mut() {
            *v = perm[*v];
        }
        s.sort_unstable();
    }
    Some((g, i, j))
}

fn component_of(g: &Graph, v: usize) -> Graph {
    let comp = crate::graph::connected_components(g)
        .into_iter()
        .find(|c| c.contains(&v))
        .expect("every vertex has a component");
    g.induced_subgraph(&comp).0
}

fn permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Moves vertex `v` to id `perm[v]`, naming it `name(v)`.
fn permute(g: &Graph, perm: &[usize], name: impl Fn(usize) -> String) -> Graph {
    let mut labels = vec![String::new(); g.n()];
    for v in 0..g.n() {
        labels[perm[v]] = name(v);
    }
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::with_labels(labels, &edges).expect("permuted graph is simple")
}

fn relabel(rng: &mut ChaCha8Rng, g: &Graph, name: impl Fn(usize) -> String) -> Graph {
    let perm = permutation(rng, g.n());
    let renamed = permute(g, &perm, |v| name(perm[v]));
    debug_assert!(find_claw(&renamed).is_none());
    renamed
}

/// A maximal independent set by greedy insertion in random order, starting
/// from `seed_set`.
fn random_maximal_set(rng: &mut ChaCha8Rng, g: &Graph, seed_set: &[usize]) -> Vec<usize> {
    let mut s = seed_set.to_vec();
    for v in permutation(rng, g.n()) {
        if !s.contains(&v) && s.iter().all(|&u| !g.adjacent(u, v)) {
            s.push(v);
        }
    }
    s.sort_unstable();
    s
}

fn random_subset(rng: &mut ChaCha8Rng, s: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = s.choose_multiple(rng, k).copied().collect();
    out.sort_unstable();
    out
}

/// Up to `steps` random token slides from `start`.
fn random_walk(rng: &mut ChaCha8Rng, g: &Graph, start: &[usize], steps: usize) -> Vec<usize> {
    let mut cur = start.to_vec();
    for _ in 0..rng.gen_range(0..=steps) {
        let mut options = Vec::new();
        for &u in &cur {
            for &v in g.neighbors(u) {
                if !cur.contains(&v) && cur.iter().all(|&w| w == u || !g.adjacent(w, v)) {
                    options.push((u, v));
                }
            }
        }
        let Some(&(u, v)) = options.choose(rng) else {
            break;
        };
        cur.retain(|&w| w != u);
        cur.push(v);
    }
    cur.sort_unstable();
    cur
}

#[derive(Clone, Debug)]
pub struct CrosscheckConfig {
    pub seed: u64,
    pub count: u64,
    pub max_n: usize,
    pub max_k: usize,
    pub cap: usize,
    /// Where disagreeing instances are written.
    pub out_dir: PathBuf,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig { seed: 7, count: 100, max_n: 10, max_k: 4, cap: DEFAULT_CAP, out_dir: PathBuf::from(".") }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ModelTally {
    pub agree: u64,
    pub disagree: u64,
    pub yes: u64,
    pub no: u64,
    /// The oracle hit its cap, so no comparison was made.
    pub inconclusive: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub model: Model,
    pub reason: String,
    pub path: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub seed: u64,
    pub count: u64,
    pub max_n: usize,
    pub ts: ModelTally,
    pub tj: ModelTally,
    /// Instances on which the TS and TJ answers of the decider differ.
    pub ts_tj_mismatches: u64,
    pub certificates_validated: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.ts_tj_mismatches == 0
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "crosscheck seed={} count={} max_n={}", self.seed, self.count, self.max_n);
        let _ = writeln!(s, "model  agree  disagree  yes  no  inconclusive");
        for (name, t) in [("TS", &self.ts), ("TJ", &self.tj)] {
            let _ = writeln!(
                s,
                "{name:<5}  {:>5}  {:>8}  {:>3}  {:>2}  {:>12}",
                t.agree, t.disagree, t.yes, t.no, t.inconclusive
            );
        }
        let _ = writeln!(s, "ts/tj mismatches: {}", self.ts_tj_mismatches);
        let _ = writeln!(s, "certificates validated: {}", self.certificates_validated);
        if self.counterexamples.is_empty() {
            let _ = writeln!(s, "counterexamples: none");
        } else {
            let _ = writeln!(s, "counterexamples: {}", self.counterexamples.len());
            for c in &self.counterexamples {
                let path = c.path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "  #{} {}: {} ({path})", c.index, c.model, c.reason);
            }
        }
        s
    }
}

struct Outcome {
    answers: [Option<Answer>; 2],
    tallies: [ModelTally; 2],
    validated: u64,
    failures: Vec<(Model, String)>,
}

fn check_one(inst: &FuzzInstance, cap: usize) -> Outcome {
    let mut out = Outcome { answers: [None; 2], tallies: Default::default(), validated: 0, failures: Vec::new() };
    let g = &inst.graph;
    let (i, j) = match (make_independent_set(g, &inst.i), make_independent_set(g, &inst.j)) {
        (Ok(i), Ok(j)) => (i, j),
        _ => {
            out.failures.push((Model::Ts, "generator produced a dependent set".into()));
            return out;
        }
    };
    let opts = DecideOptions { force_oracle: false, cap };
    for (slot, model) in [Model::Ts, Model::Tj].into_iter().enumerate() {
        let tally = &mut out.tallies[slot];
        let fast = match decide_with(g, &i, &j, model, &opts) {
            Ok(d) => d,
            Err(e) => {
                tally.disagree += 1;
                out.failures.push((model, format!("decide failed: {e}")));
                continue;
            }
        };
        out.answers[slot] = Some(fast.answer);
        if let Some(seq) = fast.sequence() {
            match validate_sequence(g, seq) {
                Ok(()) if seq.end() == j.vertices() => out.validated += 1,
                Ok(()) => out.failures.push((model, "certificate ends away from J".into())),
                Err(e) => out.failures.push((model, format!("certificate invalid: {e}"))),
            }
        }
        let slow = match decide_by_oracle(g, &i, &j, model, cap) {
            Ok(d) => d,
            Err(e) => {
                tally.disagree += 1;
                out.failures.push((model, format!("oracle failed: {e}")));
                continue;
            }
        };
        match (fast.answer, slow.answer) {
            (_, Answer::Inconclusive) => tally.inconclusive += 1,
            (a, b) if a == b => {
                tally.agree += 1;
                if a == Answer::Yes {
                    tally.yes += 1;
                } else {
                    tally.no += 1;
                }
            }
            (a, b) => {
                tally.disagree += 1;
                out.failures.push((model, format!("decide says {a}, oracle says {b}")));
            }
        }
    }
    out
}

fn dump(dir: &Path, seed: u64, inst: &FuzzInstance, model: Model) -> Option<PathBuf> {
    std::fs::create_dir_all(dir).ok()?;
    let path = dir.join(format!("counterexample-s{seed}-i{}-{}.json", inst.index, model.to_string().to_lowercase()));
    let text = serde_json::to_string_pretty(&inst.to_instance(model)).ok()?;
    std::fs::write(&path, text + "\n").ok()?;
    Some(path)
}

/// Runs `count` instances through the decider and the oracle under both
/// models. Instances are checked in parallel; the report is in index order.
pub fn crosscheck(config: &CrosscheckConfig) -> Result<CrosscheckReport> {
    let outcomes: Vec<(FuzzInstance, Outcome)> = (0..config.count)
        .into_par_iter()
        .map(|idx| {
            let inst = random_instance(config.seed, idx, config.max_n, config.max_k);
            let out = check_one(&inst, config.cap);
            (inst, out)
        })
        .collect();
    let mut report = CrosscheckReport {
        seed: config.seed,
        count: config.count,
        max_n: config.max_n,
        ts: ModelTally::default(),
        tj: ModelTally::default(),
        ts_tj_mismatches: 0,
        certificates_validated: 0,
        counterexamples: Vec::new(),
    };
    for (inst, out) in outcomes {
        for (total, t) in [(&mut report.ts, out.tallies[0]), (&mut report.tj, out.tallies[1])] {
            total.agree += t.agree;
            total.disagree += t.disagree;
            total.yes += t.yes;
            total.no += t.no;
            total.inconclusive += t.inconclusive;
        }
        report.certificates_validated += out.validated;
        if let [Some(a), Some(b)] = out.answers {
            if a != b {
                report.ts_tj_mismatches += 1;
            }
        }
        for (model, reason) in out.failures {
            let path = dump(&config.out_dir, config.seed, &inst, model);
            report.counterexamples.push(Counterexample { index: inst.index, model, reason, path });
        }
    }
    Ok(report)
}
