//! The bad cycle of FIG1: classes, layers, the layer digraph, both
//! resolvability tests and the turning sequence.

use isreconf::resolution::{
    build_layer_digraph, externally_resolvable, extract_bad_cycles, internally_resolvable, resolve_and_turn,
    Orientation,
};
use isreconf::{fixtures, validate_sequence, Graph};

fn names(g: &Graph, vs: &[usize]) -> String {
    vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(",")
}

fn main() -> isreconf::Result<()> {
    let inst = fixtures::instance("fig1").expect("shipped fixture").load()?;
    let g = &inst.graph;
    let c = extract_bad_cycles(g, &inst.i, &inst.j)?.remove(0);
    println!("cycle {}", names(g, c.vertices()));
    println!("N0 = {{{}}}  N1 = {{{}}}  N2 = {{{}}}", names(g, c.n0()), names(g, c.n1()), names(g, c.n2()));
    for (k, layer) in c.layers().iter().enumerate() {
        println!("L{k} = {{{}}}", names(g, layer));
    }
    let d = build_layer_digraph(g, &c, Orientation::Reversed)?;
    println!("reversed digraph has {} arcs", d.arcs.len());
    assert!(externally_resolvable(g, &inst.i, &c)?.is_none());
    let cert = internally_resolvable(g, &inst.i, &c)?.expect("FIG1 is internally resolvable");
    println!("certificate {}", cert.to_json(g, &c));
    let seq = resolve_and_turn(g, &inst.i, &c, &cert)?;
    validate_sequence(g, &seq)?;
    println!("turned in {} moves, ending at {{{}}}", seq.len(), names(g, &seq.end()));
    Ok(())
}
