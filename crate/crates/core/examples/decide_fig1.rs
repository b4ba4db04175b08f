//! Decides the FIG1 instance and prints the decision JSON and the moves.

use isreconf::{decide, fixtures, validate_sequence, Answer};

fn main() -> isreconf::Result<()> {
    let inst = fixtures::instance("fig1").expect("shipped fixture").load()?;
    let d = decide(&inst.graph, &inst.i, &inst.j, inst.model)?;
    println!("{}", serde_json::to_string_pretty(&d.to_json(&inst.graph)).unwrap());
    assert_eq!(d.answer, Answer::Yes);
    let seq = d.sequence().expect("YES carries a sequence");
    validate_sequence(&inst.graph, seq)?;
    for (step, m) in seq.moves.iter().enumerate() {
        println!("{:>2}: {} -> {}", step + 1, inst.graph.label(m.from), inst.graph.label(m.to));
    }
    Ok(())
}
