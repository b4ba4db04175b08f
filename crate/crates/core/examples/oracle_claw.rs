//! Two tokens on a claw: jumping reaches {a,c} from {a,b}, sliding cannot.
//! The decider rejects the graph; the oracle answers both models.

use isreconf::oracle::oracle_reachable;
use isreconf::{decide, fixtures, independent_set_from_labels, Answer, Model};

fn main() -> isreconf::Result<()> {
    let g = fixtures::claw();
    let i = independent_set_from_labels(&g, &["a", "b"])?;
    let j = independent_set_from_labels(&g, &["a", "c"])?;
    assert_eq!(decide(&g, &i, &j, Model::Ts)?.answer, Answer::Rejected);
    for model in [Model::Ts, Model::Tj] {
        match oracle_reachable(&g, &i, &j, model, 1_000)? {
            Some(seq) => println!("{model}: reachable in {} move(s)", seq.len()),
            None => println!("{model}: unreachable"),
        }
    }
    Ok(())
}
