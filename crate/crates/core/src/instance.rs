//! Single-file problem instances.
//!
//! ```json
//! { "graph": "<edge-list text>", "I": ["a"], "J": ["c"], "model": "TS" }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{parse_graph, Graph};
use crate::model::{independent_set_from_labels, IndependentSet, Model};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub graph: String,
    #[serde(rename = "I")]
    pub i: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub model: Model,
}

/// An instance with its graph parsed and both sets validated.
#[derive(Clone, Debug)]
pub struct LoadedInstance {
    pub graph: Graph,
    pub i: IndependentSet,
    pub j: IndependentSet,
    pub model: Model,
}

impl Instance {
    pub fn from_parts(g: &Graph, i: &[usize], j: &[usize], model: Model) -> Self {
        let names = |vs: &[usize]| vs.iter().map(|&v| g.label(v).to_string()).collect();
        Instance { graph: g.to_edge_list(), i: names(i), j: names(j), model }
    }

    pub fn load(&self) -> Result<LoadedInstance> {
        let graph = parse_graph(&self.graph)?;
        let i = independent_set_from_labels(&graph, &self.i)?;
        let j = independent_set_from_labels(&graph, &self.j)?;
        Ok(LoadedInstance { graph, i, j, model: self.model })
    }
}
