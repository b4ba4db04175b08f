//! Token sliding when the symmetric difference has no cycle, with the
//! potential trace and the length bound 2 |I \ J| diam(G).

use isreconf::graph::diameter;
use isreconf::sequencer::ts_sequence_acyclic_traced;
use isreconf::{fixtures, independent_set_from_labels, validate_sequence};

fn main() -> isreconf::Result<()> {
    let g = fixtures::path(7);
    let i = independent_set_from_labels(&g, &["v0", "v2", "v4"])?;
    let j = independent_set_from_labels(&g, &["v2", "v4", "v6"])?;
    let (seq, trace) = ts_sequence_acyclic_traced(&g, &i, &j)?;
    validate_sequence(&g, &seq)?;
    for (step, s) in trace.iter().enumerate() {
        println!("step {step}: md = {}, phi = {}", s.md, s.phi);
    }
    let bound = 2 * 3 * diameter(&g)?;
    println!("{} moves, bound {bound}", seq.len());
    assert!(seq.len() <= bound);
    Ok(())
}
