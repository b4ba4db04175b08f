//! CSV statistics of the TS and TJ solution graphs of C6 and a claw-free
//! random graph, for every token count up to the independence number.

use isreconf::oracle::{brute_alpha, solution_graph_stats, SolutionGraphStats};
use isreconf::{fixtures, graph::gen_claw_free, Model};

fn main() -> isreconf::Result<()> {
    println!("graph,{}", SolutionGraphStats::CSV_HEADER);
    for (name, g) in [("c6", fixtures::cycle(6)), ("random9", gen_claw_free(9, 0.4, 1))] {
        for k in 1..=brute_alpha(&g)? {
            for model in [Model::Ts, Model::Tj] {
                println!("{name},{}", solution_graph_stats(&g, k, model, 100_000)?.csv_row());
            }
        }
    }
    Ok(())
}
