//! Named test graphs and instances, shipped under `fixtures/`.
//!
//! | name | graph | I | J | model |
//! |------|-------|---|---|-------|
//! | `p3` | path a-b-c | {a} | {c} | TS |
//! | `p4` | path v0..v3 | {v0,v2} | {v1,v3} | TS |
//! | `p5` | path v0..v4 | {v1,v3} | {v0,v2} | TJ |
//! | `c6` | cycle v0..v5 | {v0,v2,v4} | {v1,v3,v5} | TS |
//! | `claw` | star x; a,b,c | {a,b} | {a,c} | TJ |
//! | `fig1` | 8-cycle c0..c7 plus u1..u4 and b | {c0,c2,c4,c6} | {c1,c3,c5,c7} | TS |

use crate::graph::{parse_graph, Graph};
use crate::instance::Instance;

const P3: &str = include_str!("../fixtures/p3.txt");
const P4: &str = include_str!("../fixtures/p4.txt");
const P5: &str = include_str!("../fixtures/p5.txt");
const C6: &str = include_str!("../fixtures/c6.txt");
const CLAW: &str = include_str!("../fixtures/claw.txt");
const FIG1: &str = include_str!("../fixtures/fig1.txt");

const INSTANCES: &[(&str, &str)] = &[
    ("p3", include_str!("../fixtures/p3.json")),
    ("p4", include_str!("../fixtures/p4.json")),
    ("p5", include_str!("../fixtures/p5.json")),
    ("c6", include_str!("../fixtures/c6.json")),
    ("claw", include_str!("../fixtures/claw.json")),
    ("fig1", include_str!("../fixtures/fig1.json")),
];

pub const NAMES: &[&str] = &["p3", "p4", "p5", "c6", "claw", "fig1"];

fn parse(text: &str) -> Graph {
    parse_graph(text).expect("shipped fixture parses")
}

pub fn p3() -> Graph {
    parse(P3)
}

pub fn claw() -> Graph {
    parse(CLAW)
}

pub fn fig1() -> Graph {
    parse(FIG1)
}

/// Path on `k` vertices labelled `v0..v{k-1}`. `path(4)` and `path(5)`
/// are the shipped P4 and P5.
pub fn path(k: usize) -> Graph {
    match k {
        4 => parse(P4),
        5 => parse(P5),
        _ => {
            let labels = (0..k).map(|v| format!("v{v}")).collect();
            let edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
            Graph::with_labels(labels, &edges).unwrap()
        }
    }
}

/// Cycle on `k >= 3` vertices labelled `v0..v{k-1}`.
pub fn cycle(k: usize) -> Graph {
    if k == 6 {
        return parse(C6);
    }
    let labels = (0..k).map(|v| format!("v{v}")).collect();
    let edges: Vec<_> = (0..k).map(|v| (v, (v + 1) % k)).collect();
    Graph::with_labels(labels, &edges).unwrap()
}

/// Graph fixture by (case-insensitive) name.
pub fn graph(name: &str) -> Option<Graph> {
    match name.to_ascii_lowercase().as_str() {
        "p3" => Some(p3()),
        "p4" => Some(path(4)),
        "p5" => Some(path(5)),
        "c6" => Some(cycle(6)),
        "claw" => Some(claw()),
        "fig1" => Some(fig1()),
        _ => None,
    }
}

/// Instance fixture by (case-insensitive) name.
pub fn instance(name: &str) -> Option<Instance> {
    let lower = name.to_ascii_lowercase();
    INSTANCES
        .iter()
        .find(|(n, _)| *n == lower)
        .map(|(_, text)| serde_json::from_str(text).expect("shipped instance parses"))
}
