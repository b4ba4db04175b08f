//! Property tests over seeded random claw-free instances.

use proptest::prelude::*;

use isreconf::alternating::{find_any_augmenting_path, is_chordless_alternating, is_maximum};
use isreconf::fuzz::{random_instance, FuzzInstance};
use isreconf::graph::{connected_components, distance, find_claw, gen_claw_free, line_graph, neighborhood_count_sets};
use isreconf::model::{apply_moves, decompose_symdiff};
use isreconf::oracle::{brute_alpha, oracle_reachable, solution_graph};
use isreconf::resolution::{extract_bad_cycles, shortest_resolving_sequence, BadCycle, MoveFilter};
use isreconf::sequencer::{expand_jumps_to_slides, tj_sequence_nonmaximum, ts_sequence_acyclic_traced};
use isreconf::{decide, make_independent_set, parse_graph, validate_sequence, Answer, Graph, IndependentSet, Model};

const CAP: usize = 1_000_000;

fn sets(inst: &FuzzInstance) -> (IndependentSet, IndependentSet) {
    (make_independent_set(&inst.graph, &inst.i).unwrap(), make_independent_set(&inst.graph, &inst.j).unwrap())
}

fn instance() -> impl Strategy<Value = FuzzInstance> {
    (any::<u64>(), 0u64..1_000, 4usize..=12, 1usize..=5).prop_map(|(s, i, n, k)| random_instance(s, i, n, k))
}

/// Graph plus one of its bad cycles and the start set.
fn with_cycle() -> impl Strategy<Value = (Graph, IndependentSet, BadCycle)> {
    instance().prop_filter_map("needs a bad cycle", |inst| {
        let (i, j) = sets(&inst);
        let c = extract_bad_cycles(&inst.graph, &i, &j).unwrap().into_iter().next()?;
        Some((inst.graph, i, c))
    })
}

/// Every simple path alternating between `I` and its complement whose ends
/// lie outside `I`, with at most `max_len` vertices.
fn alternating_paths(g: &Graph, in_i: &[bool], max_len: usize) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, in_i: &[bool], max_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && !in_i[last] {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for &w in g.neighbors(last) {
            if in_i[w] != in_i[last] && !path.contains(&w) {
                path.push(w);
                grow(g, in_i, max_len, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in (0..g.n()).filter(|&v| !in_i[v]) {
        grow(g, in_i, max_len, &mut vec![v], &mut out);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn generated_and_line_graphs_are_claw_free(n in 1usize..14, d in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gen_claw_free(n, d, seed);
        prop_assert!(find_claw(&g).is_none());
        prop_assert_eq!(g.to_edge_list(), gen_claw_free(n, d, seed).to_edge_list());
        let raw = parse_graph(&g.to_edge_list()).unwrap();
        let l = line_graph(&raw);
        prop_assert!(find_claw(&l).is_none());
        let edges: Vec<_> = raw.edges().collect();
        prop_assert_eq!(l.n(), edges.len());
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                let (e, f) = (edges[a], edges[b]);
                let meet = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
                prop_assert_eq!(l.adjacent(a, b), meet);
            }
        }
    }

    #[test]
    fn edge_list_round_trip(inst in instance()) {
        let g = &inst.graph;
        let back = parse_graph(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        for (u, v) in g.edges() {
            let (a, b) = (back.vertex(g.label(u)).unwrap(), back.vertex(g.label(v)).unwrap());
            prop_assert!(back.adjacent(a, b));
        }
        prop_assert_eq!(back.edges().count(), g.edges().count());
    }

    #[test]
    fn distance_is_a_metric(inst in instance()) {
        let g = &inst.graph;
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert_eq!(distance(g, u, v), distance(g, v, u));
                for w in 0..g.n() {
                    let (uv, uw, wv) = (distance(g, u, v).unwrap(), distance(g, u, w).unwrap(), distance(g, w, v).unwrap());
                    prop_assert!(uv <= uw + wv);
                }
            }
        }
    }

    #[test]
    fn count_sets_partition_and_stop_at_two((g, _i, c) in with_cycle()) {
        let classes = neighborhood_count_sets(&g, c.b());
        let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
        all.sort_unstable();
        let outside: Vec<usize> = (0..g.n()).filter(|&v| !c.b().contains(&v)).collect();
        prop_assert_eq!(all, outside);
        prop_assert!(classes.len() <= 3);
    }

    #[test]
    fn symdiff_structure(inst in instance()) {
        let (i, j) = sets(&inst);
        let g = &inst.graph;
        let diff: Vec<usize> = (0..g.n()).filter(|&v| i.contains(v) != j.contains(v)).collect();
        for &v in &diff {
            prop_assert!(g.neighbors(v).iter().filter(|w| diff.contains(w)).count() <= 2);
        }
        for cycle in decompose_symdiff(g, &i, &j).unwrap().cycles {
            prop_assert_eq!(cycle.len() % 2, 0);
            for (t, &v) in cycle.iter().enumerate() {
                prop_assert_eq!(i.contains(v), t % 2 == 0);
                prop_assert!(g.adjacent(v, cycle[(t + 1) % cycle.len()]));
            }
        }
    }

    #[test]
    fn augmenting_paths_and_maximality(inst in instance()) {
        let g = &inst.graph;
        let (i, _) = sets(&inst);
        let alpha = brute_alpha(g).unwrap();
        prop_assert_eq!(is_maximum(g, &i), i.len() == alpha);
        let mask = i.mask(g.n());
        if let Some(p) = find_any_augmenting_path(g, &i) {
            prop_assert!(is_chordless_alternating(g, &mask, p.vertices()));
            let bigger = make_independent_set(g, &p.swap(i.vertices()));
            prop_assert!(bigger.is_ok());
            prop_assert_eq!(bigger.unwrap().len(), i.len() + 1);
        }
        // the converse direction: a swap that stays independent means chordless
        for path in alternating_paths(g, &mask, 7) {
            let swapped: Vec<usize> = (0..g.n()).filter(|&v| mask[v] != path.contains(&v)).collect();
            if g.edge_within(&swapped).is_none() {
                prop_assert!(is_chordless_alternating(g, &mask, &path), "{:?}", path);
            }
        }
    }

    #[test]
    fn shortest_resolving_prefix_keeps_neighborhoods((g, i, c) in with_cycle()) {
        let Some(seq) = shortest_resolving_sequence(&g, &i, &c, MoveFilter::All, CAP).unwrap() else {
            return Ok(());
        };
        let b_nbrs = |v: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|w| c.b().contains(w)).collect() };
        let mut cur = i.vertices().to_vec();
        for m in &seq[..seq.len() - 1] {
            prop_assert_eq!(b_nbrs(m.from), b_nbrs(m.to));
            cur = apply_moves(&cur, std::slice::from_ref(m));
            for &v in &cur {
                prop_assert!(c.class(v) != Some(1), "token on N_1 before resolution");
            }
        }
    }

    #[test]
    fn once_moving_external_sequences_swap_odd_paths((g, i, c) in with_cycle()) {
        if !is_maximum(&g, &i) {
            return Ok(());
        }
        let Some(seq) = shortest_resolving_sequence(&g, &i, &c, MoveFilter::ExternalOnly, CAP).unwrap() else {
            return Ok(());
        };
        let end = apply_moves(i.vertices(), &seq);
        let diff: Vec<usize> = (0..g.n()).filter(|&v| i.contains(v) != end.contains(&v)).collect();
        let (sub, _) = g.induced_subgraph(&diff);
        for comp in connected_components(&sub) {
            let edges = sub.edges().filter(|(u, _)| comp.contains(u)).count();
            prop_assert_eq!(edges, comp.len() - 1, "component is not a path");
            prop_assert_eq!(edges % 2, 1, "path of even length");
        }
    }

    #[test]
    fn acyclic_builder_potential_decreases(inst in instance()) {
        let (i, j) = sets(&inst);
        if !decompose_symdiff(&inst.graph, &i, &j).unwrap().cycles.is_empty() {
            return Ok(());
        }
        let (seq, trace) = ts_sequence_acyclic_traced(&inst.graph, &i, &j).unwrap();
        validate_sequence(&inst.graph, &seq).unwrap();
        prop_assert_eq!(seq.end(), j.vertices().to_vec());
        for w in trace.windows(2) {
            prop_assert!(w[1].phi < w[0].phi);
        }
    }

    #[test]
    fn jumps_expand_to_slides(inst in instance()) {
        let (i, j) = sets(&inst);
        let g = &inst.graph;
        if is_maximum(g, &i) {
            return Ok(());
        }
        let jumps = tj_sequence_nonmaximum(g, &i, &j).unwrap();
        validate_sequence(g, &jumps).unwrap();
        let slides = expand_jumps_to_slides(g, &i, &jumps.moves).unwrap();
        validate_sequence(g, &slides).unwrap();
        prop_assert_eq!(slides.model, Model::Ts);
        prop_assert_eq!(slides.end(), j.vertices().to_vec());
    }

    #[test]
    fn sliding_graph_inside_jumping_graph(inst in instance(), k in 1usize..4) {
        let g = &inst.graph;
        let ts = solution_graph(g, k, Model::Ts, CAP).unwrap();
        let tj = solution_graph(g, k, Model::Tj, CAP).unwrap();
        prop_assert_eq!(&ts.nodes, &tj.nodes);
        prop_assert!(ts.edges.iter().all(|e| tj.edges.binary_search(e).is_ok()));
    }

    #[test]
    fn oracle_is_symmetric(inst in instance(), tj in any::<bool>()) {
        let (i, j) = sets(&inst);
        let model = if tj { Model::Tj } else { Model::Ts };
        let there = oracle_reachable(&inst.graph, &i, &j, model, CAP).unwrap();
        let back = oracle_reachable(&inst.graph, &j, &i, model, CAP).unwrap();
        prop_assert_eq!(there.is_some(), back.is_some());
        if let (Some(a), Some(b)) = (there, back) {
            prop_assert_eq!(a.len(), b.len());
        }
    }

    #[test]
    fn disconnected_sliding_is_the_conjunction(a in instance(), b in instance()) {
        // disjoint union; labels get a prefix per side
        let (ga, gb) = (&a.graph, &b.graph);
        let mut text = String::new();
        for (side, g) in [("a", ga), ("b", gb)] {
            for v in 0..g.n() {
                text.push_str(&format!("{side}{}\n", g.label(v)));
            }
            for (u, v) in g.edges() {
                text.push_str(&format!("{side}{} {side}{}\n", g.label(u), g.label(v)));
            }
        }
        let g = parse_graph(&text).unwrap();
        let lift = |side: &str, src: &Graph, vs: &[usize]| -> Vec<usize> {
            vs.iter().map(|&v| g.vertex(&format!("{side}{}", src.label(v))).unwrap()).collect()
        };
        let i = make_independent_set(&g, &[lift("a", ga, &a.i), lift("b", gb, &b.i)].concat()).unwrap();
        let j = make_independent_set(&g, &[lift("a", ga, &a.j), lift("b", gb, &b.j)].concat()).unwrap();
        let (ai, aj) = sets(&a);
        let (bi, bj) = sets(&b);
        let parts = decide(ga, &ai, &aj, Model::Ts).unwrap().is_yes() && decide(gb, &bi, &bj, Model::Ts).unwrap().is_yes();
        let whole = decide(&g, &i, &j, Model::Ts).unwrap();
        prop_assert_eq!(whole.is_yes(), parts);
        prop_assert_eq!(whole.is_yes(), oracle_reachable(&g, &i, &j, Model::Ts, CAP).unwrap().is_some());
        if let Some(seq) = whole.sequence() {
            validate_sequence(&g, seq).unwrap();
        }
        if is_maximum(&g, &i) {
            prop_assert_eq!(decide(&g, &i, &j, Model::Tj).unwrap().is_yes(), parts);
        }
        let tj = decide(&g, &i, &j, Model::Tj).unwrap();
        prop_assert_eq!(tj.answer == Answer::Yes, oracle_reachable(&g, &i, &j, Model::Tj, CAP).unwrap().is_some());
    }
}
