//! Constructive reconfiguration sequences.
//!
//! * [`ts_sequence_acyclic`]: sliding when `G[I Δ J]` has no cycles, at most
//!   `2·|I \ J|·diam(G)` moves.
//! * [`tj_sequence_no_even_cycles`]: jumping in exactly `|I \ J|` moves.
//! * [`tj_sequence_nonmaximum`]: jumping from a non-maximum `I` to any `J`.
//! * [`assemble_yes_certificate`]: turn every resolvable cycle, then slide.

use crate::alternating::{augmenting_path_between, is_dominating, is_free, is_maximum_raw, undominated};
use crate::error::{Error, Result};
use crate::graph::{diameter, Graph};
use crate::model::{apply_moves, check_moves, decompose_symdiff_raw, IndependentSet, Model, Move, ReconfigSequence};
use crate::resolution::{find_certificate, turn_cycle, BadCycle, ResolutionCertificate};

/// Minimum distance `md` between `I \ J` and `J \ I`, and the potential
/// `phi = (|I \ J| - 1)·diam(G) + md`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PotentialState {
    pub md: usize,
    pub phi: usize,
}

fn bound_check(g: &Graph, i: &IndependentSet, j: &IndependentSet) -> Result<()> {
    if !i.is_bound_to(g) || !j.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    if i.len() != j.len() {
        return Err(Error::Precondition(format!("set sizes differ: {} vs {}", i.len(), j.len())));
    }
    Ok(())
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

fn validated(g: &Graph, start: &[usize], moves: &[Move], model: Model, end: &[usize]) -> Result<()> {
    let reached = check_moves(g, start, moves, model).map_err(|e| Error::Internal(format!("built sequence invalid: {e}")))?;
    let mut want = end.to_vec();
    want.sort_unstable();
    if reached != want {
        return Err(Error::Internal("built sequence ends at the wrong set".into()));
    }
    Ok(())
}

/// TS-sequence from `i` to `j` in a connected claw-free graph when
/// `G[i Δ j]` has no cycles.
pub fn ts_sequence_acyclic(g: &Graph, i: &IndependentSet, j: &IndependentSet) -> Result<ReconfigSequence> {
    Ok(ts_sequence_acyclic_traced(g, i, j)?.0)
}

/// Same as [`ts_sequence_acyclic`], also returning the potential before
/// every step of the construction.
pub fn ts_sequence_acyclic_traced(
    g: &Graph,
    i: &IndependentSet,
    j: &IndependentSet,
) -> Result<(ReconfigSequence, Vec<PotentialState>)> {
    bound_check(g, i, j)?;
    let diam = diameter(g)?;
    let mut trace = Vec::new();
    let moves = acyclic_moves(g, diam, i.vertices(), j.vertices(), Some(&mut trace))?;
    Ok((ReconfigSequence::new(Model::Ts, i.clone(), moves), trace))
}

pub(crate) fn acyclic_moves(
    g: &Graph,
    diam: usize,
    i: &[usize],
    j: &[usize],
    mut trace: Option<&mut Vec<PotentialState>>,
) -> Result<Vec<Move>> {
    if !decompose_symdiff_raw(g, i, j)?.cycles.is_empty() {
        return Err(Error::Precondition("symmetric difference contains a cycle".into()));
    }
    let n = g.n();
    let k0 = minus(i, j).len();
    let mut cur_i = vec![false; n];
    let mut cur_j = vec![false; n];
    i.iter().for_each(|&v| cur_i[v] = true);
    j.iter().for_each(|&v| cur_j[v] = true);
    let mut dist: Vec<Option<Vec<Option<usize>>>> = vec![None; n];
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    let mut last_phi = usize::MAX;

    loop {
        let i_minus: Vec<usize> = (0..n).filter(|&v| cur_i[v] && !cur_j[v]).collect();
        let j_minus: Vec<usize> = (0..n).filter(|&v| cur_j[v] && !cur_i[v]).collect();
        if i_minus.is_empty() {
            break;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for &u in &i_minus {
            let du = dist[u].get_or_insert_with(|| g.bfs_distances(u));
            for &v in &j_minus {
                let d = du[v].ok_or(Error::Graph(crate::error::GraphError::Disconnected))?;
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, u, v));
                }
            }
        }
        let (md, u, v) = best.expect("J \\ I is non-empty when I \\ J is");
        let phi = (i_minus.len() - 1) * diam + md;
        if phi >= last_phi {
            return Err(Error::Internal("potential did not decrease".into()));
        }
        last_phi = phi;
        if let Some(t) = trace.as_deref_mut() {
            t.push(PotentialState { md, phi });
        }

        if md == 1 {
            let in_delta = |x: usize| cur_i[x] != cur_j[x];
            let delta_nbrs = |x: usize| g.neighbors(x).iter().copied().filter(|&y| in_delta(y)).collect::<Vec<_>>();
            let e = (0..n)
                .find(|&x| in_delta(x) && delta_nbrs(x).len() == 1)
                .ok_or_else(|| Error::Internal("no path end in the symmetric difference".into()))?;
            let nb = delta_nbrs(e)[0];
            if cur_j[e] {
                prefix.push(Move::new(nb, e));
                cur_i[nb] = false;
                cur_i[e] = true;
            } else {
                suffix.push(Move::new(nb, e));
                cur_j[nb] = false;
                cur_j[e] = true;
            }
            continue;
        }

        let path = g.shortest_path(u, v).expect("distance is finite");
        let blocked = |x: usize| cur_i[x] && x != u;
        let t = (1..path.len()).rev().find(|&t| blocked(path[t]) || g.neighbors(path[t]).iter().any(|&y| blocked(y)));
        let walk: Vec<usize> = match t {
            None => path.clone(),
            Some(t) => {
                let xs: Vec<usize> = g.neighbors(path[t]).iter().copied().filter(|&y| blocked(y)).collect();
                if t + 1 >= path.len() || blocked(path[t]) || xs.len() != 1 {
                    return Err(Error::Internal("blocking token is not unique (graph not claw-free?)".into()));
                }
                std::iter::once(xs[0]).chain(path[t..].iter().copied()).collect()
            }
        };
        for w in walk.windows(2) {
            prefix.push(Move::new(w[0], w[1]));
        }
        cur_i[walk[0]] = false;
        cur_i[*walk.last().unwrap()] = true;
    }

    let mut moves = prefix;
    moves.extend(suffix.iter().rev().map(|m| m.reversed()));
    validated(g, i, &moves, Model::Ts, j)?;
    if moves.len() > 2 * k0 * diam {
        return Err(Error::Internal("acyclic sequence exceeds its length bound".into()));
    }
    Ok(moves)
}

/// TJ-sequence of length exactly `|i \ j|` when `G[i Δ j]` has no even
/// cycle.
pub fn tj_sequence_no_even_cycles(g: &Graph, i: &IndependentSet, j: &IndependentSet) -> Result<ReconfigSequence> {
    bound_check(g, i, j)?;
    let moves = no_even_cycle_moves(g, i.vertices(), j.vertices())?;
    Ok(ReconfigSequence::new(Model::Tj, i.clone(), moves))
}

/// Repeatedly fills a vertex `w ∈ J \ I`: with its only `I`-neighbor when
/// some `w` has exactly one, otherwise by a jump from the smallest vertex of
/// `I \ J` onto a `w` with no `I`-neighbor.
pub(crate) fn no_even_cycle_moves(g: &Graph, i: &[usize], j: &[usize]) -> Result<Vec<Move>> {
    if !decompose_symdiff_raw(g, i, j)?.cycles.is_empty() {
        return Err(Error::Precondition("symmetric difference contains an even cycle".into()));
    }
    let n = g.n();
    let mut cur = vec![false; n];
    i.iter().for_each(|&v| cur[v] = true);
    let mut in_j = vec![false; n];
    j.iter().for_each(|&v| in_j[v] = true);
    let mut moves = Vec::new();
    loop {
        let j_minus: Vec<usize> = (0..n).filter(|&v| in_j[v] && !cur[v]).collect();
        if j_minus.is_empty() {
            break;
        }
        let occupied_nbrs = |w: usize| g.neighbors(w).iter().copied().filter(|&x| cur[x]).collect::<Vec<_>>();
        let m = if let Some(w) = j_minus.iter().copied().find(|&w| occupied_nbrs(w).len() == 1) {
            Move::new(occupied_nbrs(w)[0], w)
        } else if let Some(w) = j_minus.iter().copied().find(|&w| occupied_nbrs(w).is_empty()) {
            let u = (0..n).find(|&x| cur[x] && !in_j[x]).expect("sizes are equal");
            Move::new(u, w)
        } else {
            return Err(Error::Internal("every vertex of J \\ I has two I-neighbors".into()));
        };
        cur[m.from] = false;
        cur[m.to] = true;
        moves.push(m);
    }
    validated(g, i, &moves, Model::Tj, j)?;
    Ok(moves)
}

/// TJ-sequence from a non-maximum `i` to any `j` of the same size in a
/// claw-free graph.
pub fn tj_sequence_nonmaximum(g: &Graph, i: &IndependentSet, j: &IndependentSet) -> Result<ReconfigSequence> {
    bound_check(g, i, j)?;
    if i == j {
        return Ok(ReconfigSequence::new(Model::Tj, i.clone(), Vec::new()));
    }
    if is_maximum_raw(g, i.vertices()) {
        return Err(Error::Precondition("start set is maximum".into()));
    }
    let moves = nonmaximum_moves(g, i.vertices(), j.vertices())?;
    Ok(ReconfigSequence::new(Model::Tj, i.clone(), moves))
}

/// If `i` dominates `g`, first shift it along an augmenting path so that
/// the path's first vertex becomes undominated. Then park a token on an
/// undominated vertex `w` for each cycle `u_1 v_1 ... u_k v_k` of the
/// symmetric difference: `u_1 -> w`, `u_k -> v_k, ..., u_2 -> v_2`,
/// `w -> v_1`. The remaining paths are handled by the no-even-cycle
/// builder.
pub(crate) fn nonmaximum_moves(g: &Graph, i: &[usize], j: &[usize]) -> Result<Vec<Move>> {
    let mut moves = Vec::new();
    if is_dominating(g, i) {
        let mut in_i = vec![false; g.n()];
        i.iter().for_each(|&v| in_i[v] = true);
        let all = vec![true; g.n()];
        let path = (0..g.n())
            .filter(|&x| is_free(g, &in_i, x))
            .find_map(|x| augmenting_path_between(g, &in_i, &all, x, None))
            .ok_or_else(|| Error::Internal("dominating non-maximum set without augmenting path".into()))?;
        let k = path.len() / 2;
        moves.extend((1..=k).rev().map(|t| Move::new(path[2 * t - 1], path[2 * t])));
    }
    let mut cur = apply_moves(i, &moves);
    let w = undominated(g, &cur).ok_or_else(|| Error::Internal("no undominated vertex to park on".into()))?;
    for c in decompose_symdiff_raw(g, &cur, j)?.cycles {
        let k = c.len() / 2;
        moves.push(Move::new(c[0], w));
        moves.extend((2..=k).rev().map(|t| Move::new(c[2 * t - 2], c[2 * t - 1])));
        moves.push(Move::new(w, c[1]));
    }
    cur = apply_moves(i, &moves);
    moves.extend(no_even_cycle_moves(g, &cur, j)?);
    validated(g, i, &moves, Model::Tj, j)?;
    Ok(moves)
}

/// Replaces every jump that is not already a slide by an acyclic
/// TS-sequence between the two sets it connects. `g` must be connected.
pub fn expand_jumps_to_slides(g: &Graph, start: &IndependentSet, jumps: &[Move]) -> Result<ReconfigSequence> {
    if !start.is_bound_to(g) {
        return Err(Error::GraphMismatch);
    }
    let diam = diameter(g)?;
    let moves = expand_raw(g, diam, start.vertices(), jumps)?;
    Ok(ReconfigSequence::new(Model::Ts, start.clone(), moves))
}

pub(crate) fn expand_raw(g: &Graph, diam: usize, start: &[usize], jumps: &[Move]) -> Result<Vec<Move>> {
    let mut cur = start.to_vec();
    let mut out = Vec::new();
    for &m in jumps {
        let next = apply_moves(&cur, &[m]);
        if g.adjacent(m.from, m.to) {
            out.push(m);
        } else {
            out.extend(acyclic_moves(g, diam, &cur, &next, None)?);
        }
        cur = next;
    }
    Ok(out)
}

/// Turns every listed cycle in order, then finishes with the acyclic
/// builder. `g` must be connected and claw-free.
///
/// Each cycle after the first is re-certified against the current set; if
/// that fails, the moves so far are undone and the original certificate is
/// replayed, which resolves the cycle from the current set as well.
pub fn assemble_yes_certificate(
    g: &Graph,
    i: &IndependentSet,
    j: &IndependentSet,
    model: Model,
    resolved: &[(BadCycle, ResolutionCertificate)],
) -> Result<ReconfigSequence> {
    bound_check(g, i, j)?;
    let moves = assemble_raw(g, i.vertices(), j.vertices(), resolved)?;
    Ok(ReconfigSequence::new(model, i.clone(), moves))
}

pub(crate) fn assemble_raw(
    g: &Graph,
    i: &[usize],
    j: &[usize],
    resolved: &[(BadCycle, ResolutionCertificate)],
) -> Result<Vec<Move>> {
    let diam = diameter(g)?;
    let maximum = !resolved.is_empty() && is_maximum_raw(g, i);
    let mut moves: Vec<Move> = Vec::new();
    let mut cur = i.to_vec();
    for (k, (cycle, cert)) in resolved.iter().enumerate() {
        let resolving = if k == 0 {
            cert.resolving_moves(g, cycle)?
        } else if let Some(fresh) = find_certificate(g, &cur, cycle, maximum)? {
            fresh.resolving_moves(g, cycle)?
        } else {
            let mut back: Vec<Move> = moves.iter().rev().map(|m| m.reversed()).collect();
            back.extend(cert.resolving_moves(g, cycle)?);
            back
        };
        let turn = turn_cycle(g, &cur, cycle, &resolving)?;
        cur = apply_moves(&cur, &turn);
        moves.extend(turn);
    }
    moves.extend(acyclic_moves(g, diam, &cur, j, None)?);
    validated(g, i, &moves, Model::Ts, j)?;
    Ok(moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{independent_set_from_labels, make_independent_set, validate_sequence};
    use crate::oracle::{oracle_reachable, DEFAULT_CAP};
    use crate::resolution::{extract_bad_cycles, internally_resolvable};

    fn set(g: &Graph, labels: &[&str]) -> IndependentSet {
        independent_set_from_labels(g, labels).unwrap()
    }

    fn named(g: &Graph, seq: &ReconfigSequence) -> Vec<(String, String)> {
        seq.moves.iter().map(|m| (g.label(m.from).to_string(), g.label(m.to).to_string())).collect()
    }

    #[test]
    fn acyclic_on_paths() {
        let p3 = fixtures::p3();
        let seq = ts_sequence_acyclic(&p3, &set(&p3, &["a"]), &set(&p3, &["c"])).unwrap();
        assert_eq!(named(&p3, &seq), [("a".into(), "b".into()), ("b".into(), "c".into())]);

        let p4 = fixtures::path(4);
        let (i, j) = (set(&p4, &["v0", "v2"]), set(&p4, &["v1", "v3"]));
        let (seq, trace) = ts_sequence_acyclic_traced(&p4, &i, &j).unwrap();
        validate_sequence(&p4, &seq).unwrap();
        assert_eq!(seq.end(), j.vertices());
        assert_eq!(seq.len(), 2);
        assert!(seq.len() <= 2 * 2 * 3);
        assert!(trace.windows(2).all(|w| w[1].phi < w[0].phi));
        assert_eq!(trace[0], PotentialState { md: 1, phi: 4 });

        let empty = ts_sequence_acyclic(&p4, &i, &i).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn acyclic_rejects_cycles() {
        let c6 = fixtures::cycle(6);
        let r = ts_sequence_acyclic(&c6, &set(&c6, &["v0", "v2", "v4"]), &set(&c6, &["v1", "v3", "v5"]));
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn long_walk_with_blocking_token() {
        // path v0..v6, I = {v0, v3}, J = {v3, v6}: the token on v3 blocks
        let g = fixtures::path(7);
        let i = make_independent_set(&g, &[0, 3]).unwrap();
        let j = make_independent_set(&g, &[3, 6]).unwrap();
        let (seq, trace) = ts_sequence_acyclic_traced(&g, &i, &j).unwrap();
        validate_sequence(&g, &seq).unwrap();
        assert_eq!(seq.end(), vec![3, 6]);
        assert!(seq.len() <= 2 * 6);
        assert!(trace.windows(2).all(|w| w[1].phi < w[0].phi));
    }

    #[test]
    fn jumping_on_the_claw() {
        let g = fixtures::claw();
        let seq = tj_sequence_no_even_cycles(&g, &set(&g, &["a", "b"]), &set(&g, &["a", "c"])).unwrap();
        assert_eq!(named(&g, &seq), [("b".into(), "c".into())]);
        let p4 = fixtures::path(4);
        let seq = tj_sequence_no_even_cycles(&p4, &set(&p4, &["v0", "v2"]), &set(&p4, &["v1", "v3"])).unwrap();
        assert_eq!(seq.len(), 2);
        validate_sequence(&p4, &seq).unwrap();
    }

    #[test]
    fn nonmaximum_p5() {
        let g = fixtures::path(5);
        let (i, j) = (set(&g, &["v1", "v3"]), set(&g, &["v0", "v2"]));
        let seq = tj_sequence_nonmaximum(&g, &i, &j).unwrap();
        validate_sequence(&g, &seq).unwrap();
        assert_eq!(seq.end(), j.vertices());
        assert!(oracle_reachable(&g, &i, &j, Model::Tj, DEFAULT_CAP).unwrap().is_some());
        assert!(tj_sequence_nonmaximum(&g, &i, &i).unwrap().is_empty());
        let max = set(&g, &["v0", "v2", "v4"]);
        assert!(tj_sequence_nonmaximum(&g, &max, &set(&g, &["v0", "v2", "v4"])).unwrap().is_empty());
    }

    #[test]
    fn nonmaximum_with_cycle() {
        // C6 plus the path y - p - x with y adjacent to v0 and v1; x is
        // undominated by I and hosts the parked token
        let text = "v0 v1\nv1 v2\nv2 v3\nv3 v4\nv4 v5\nv5 v0\ny v0\ny v1\ny p\np x\n";
        let g = crate::graph::parse_graph(text).unwrap();
        assert!(crate::graph::is_claw_free(&g));
        let i = set(&g, &["v0", "v2", "v4"]);
        let j = set(&g, &["v1", "v3", "v5"]);
        let seq = tj_sequence_nonmaximum(&g, &i, &j).unwrap();
        validate_sequence(&g, &seq).unwrap();
        assert_eq!(seq.end(), j.vertices());
        let ts = expand_jumps_to_slides(&g, &i, &seq.moves).unwrap();
        validate_sequence(&g, &ts).unwrap();
        assert_eq!(ts.end(), j.vertices());
    }

    #[test]
    fn fig1_single_turn() {
        let g = fixtures::fig1();
        let i = set(&g, &["c0", "c2", "c4", "c6"]);
        let j = set(&g, &["c1", "c3", "c5", "c7"]);
        let c = extract_bad_cycles(&g, &i, &j).unwrap().remove(0);
        let cert = internally_resolvable(&g, &i, &c).unwrap().unwrap();
        let seq = assemble_yes_certificate(&g, &i, &j, Model::Ts, &[(c, cert)]).unwrap();
        validate_sequence(&g, &seq).unwrap();
        assert_eq!(seq.end(), j.vertices());
    }
}
