//! Independent set reconfiguration on claw-free graphs.
//!
//! Given two independent sets `I` and `J` of equal size in a claw-free
//! graph, [`decide`] answers whether `I` can be turned into `J` by token
//! sliding (TS) or token jumping (TJ) and returns a replayable move
//! sequence for YES answers or an unresolvable cycle for NO answers.
//! The [`oracle`] module searches the solution graph exhaustively and is
//! used to cross-check the decision procedure on small instances.

pub mod alternating;
pub mod cli;
pub mod decider;
pub mod error;
pub mod fixtures;
pub mod fuzz;
pub mod graph;
pub mod instance;
pub mod model;
pub mod oracle;
pub mod resolution;
pub mod sequencer;

pub use decider::{decide, decide_with, Answer, Certificate, DecideOptions, Decision};
pub use error::{Error, GraphError, Result};
pub use graph::{parse_graph, ClawWitness, Graph};
pub use instance::{Instance, LoadedInstance};
pub use model::{
    independent_set_from_labels, make_independent_set, validate_sequence, IndependentSet, Model, Move,
    ReconfigSequence,
};
