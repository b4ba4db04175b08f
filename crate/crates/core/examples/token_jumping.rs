//! Token jumping: exactly |I \ J| jumps without even cycles, and the
//! non-maximum shortcut on P5.

use isreconf::sequencer::{tj_sequence_no_even_cycles, tj_sequence_nonmaximum};
use isreconf::{fixtures, independent_set_from_labels, validate_sequence};

fn main() -> isreconf::Result<()> {
    let p4 = fixtures::path(4);
    let i = independent_set_from_labels(&p4, &["v0", "v2"])?;
    let j = independent_set_from_labels(&p4, &["v1", "v3"])?;
    let seq = tj_sequence_no_even_cycles(&p4, &i, &j)?;
    validate_sequence(&p4, &seq)?;
    println!("P4: {} jumps for |I \\ J| = 2", seq.len());

    let p5 = fixtures::path(5);
    let i = independent_set_from_labels(&p5, &["v1", "v3"])?;
    let j = independent_set_from_labels(&p5, &["v0", "v2"])?;
    let seq = tj_sequence_nonmaximum(&p5, &i, &j)?;
    validate_sequence(&p5, &seq)?;
    for m in &seq.moves {
        println!("P5: {} -> {}", p5.label(m.from), p5.label(m.to));
    }
    Ok(())
}
