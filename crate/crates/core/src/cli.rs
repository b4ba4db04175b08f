//! Command-line front end, shared by the `isreconf` binary.
//!
//! Exit codes: 0 YES (or success), 1 NO (or a failed crosscheck/validation),
//! 2 REJECTED or INCONCLUSIVE, 3 input error. JSON goes to stdout with a
//! trailing newline; diagnostics go to stderr.
//!
//! Instance arguments are either a path to an instance JSON file or
//! `fixture:NAME`. Commands that need only a graph also accept an edge-list
//! file.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::decider::{decide_by_oracle, decide_with, Answer, DecideOptions, Decision};
use crate::error::Error;
use crate::fixtures;
use crate::fuzz::{crosscheck, random_instance, CrosscheckConfig};
use crate::graph::{parse_graph, Graph};
use crate::instance::{Instance, LoadedInstance};
use crate::model::{validate_sequence, Model, ReconfigSequence, SequenceDoc};
use crate::oracle::{max_independent_set, solution_graph_stats, SolutionGraphStats, DEFAULT_CAP};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "isreconf", version, about = "Independent set reconfiguration on claw-free graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide reachability with the polynomial algorithm.
    Decide {
        /// Instance file or fixture:NAME.
        instance: String,
        /// Override the instance's model (TS or TJ).
        #[arg(long)]
        model: Option<Model>,
        /// State cap for the oracle when --force-oracle applies.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Hand graphs with a claw to the oracle instead of rejecting them.
        #[arg(long)]
        force_oracle: bool,
        /// Also write the YES sequence to this file.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Decide reachability by breadth-first search over independent sets.
    Oracle {
        instance: String,
        #[arg(long)]
        model: Option<Model>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Compare the decider with the oracle on seeded random instances.
    Crosscheck {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Directory for counterexample instances.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print seeded random claw-free instances, one JSON object per line.
    Gen {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Index of the first instance in the seeded stream.
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value = "TS")]
        model: Model,
    },
    /// Print a shipped fixture instance (or its edge list).
    Fixture {
        /// Fixture name; omit to list them.
        name: Option<String>,
        /// Print the edge list instead of the instance.
        #[arg(long)]
        graph: bool,
    },
    /// Solution-graph statistics as CSV.
    Stats {
        /// Instance file, edge-list file or fixture:NAME.
        graph: String,
        /// Token count; defaults to every k from 1 to the independence number.
        #[arg(long)]
        k: Option<usize>,
        /// Restrict to one model.
        #[arg(long)]
        model: Option<Model>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Check a sequence certificate against an instance.
    Validate {
        instance: String,
        certificate: PathBuf,
    },
}

/// Parses arguments, runs, and maps every failure to an exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_YES });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Runs one command, writing its output to `out`; returns the exit code.
/// `Err` means an input error (exit 3).
pub fn run(cli: Cli, out: &mut impl Write) -> Result<u8, String> {
    match cli.command {
        Command::Decide { instance, model, cap, force_oracle, emit_certificate } => {
            let inst = load_instance(&instance, model)?;
            let opts = DecideOptions { force_oracle, cap };
            let d = decide_with(&inst.graph, &inst.i, &inst.j, inst.model, &opts).map_err(err)?;
            report_decision(out, &inst.graph, &d, emit_certificate)
        }
        Command::Oracle { instance, model, cap, emit_certificate } => {
            let inst = load_instance(&instance, model)?;
            let d = decide_by_oracle(&inst.graph, &inst.i, &inst.j, inst.model, cap).map_err(err)?;
            report_decision(out, &inst.graph, &d, emit_certificate)
        }
        Command::Crosscheck { count, max_n, seed, max_k, cap, out: out_dir } => {
            let config = CrosscheckConfig { seed, count, max_n, max_k, cap, out_dir };
            let report = crosscheck(&config).map_err(err)?;
            write!(out, "{}", report.render()).map_err(err)?;
            Ok(if report.passed() { EXIT_YES } else { EXIT_NO })
        }
        Command::Gen { seed, count, start, max_n, max_k, model } => {
            for idx in start..start + count {
                let inst = random_instance(seed, idx, max_n, max_k).to_instance(model);
                writeln!(out, "{}", serde_json::to_string(&inst).map_err(err)?).map_err(err)?;
            }
            Ok(EXIT_YES)
        }
        Command::Fixture { name: None, .. } => {
            for name in fixtures::NAMES {
                writeln!(out, "{name}").map_err(err)?;
            }
            Ok(EXIT_YES)
        }
        Command::Fixture { name: Some(name), graph } => {
            let inst = fixtures::instance(&name).ok_or_else(|| format!("unknown fixture {name:?}"))?;
            if graph {
                write!(out, "{}", inst.graph).map_err(err)?;
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(&inst).map_err(err)?).map_err(err)?;
            }
            Ok(EXIT_YES)
        }
        Command::Stats { graph, k, model, cap } => {
            let g = load_graph(&graph)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=max_independent_set(&g).len()).collect(),
            };
            let models = model.map_or_else(|| vec![Model::Ts, Model::Tj], |m| vec![m]);
            writeln!(out, "{}", SolutionGraphStats::CSV_HEADER).map_err(err)?;
            for k in ks {
                for &m in &models {
                    match solution_graph_stats(&g, k, m, cap) {
                        Ok(s) => writeln!(out, "{}", s.csv_row()).map_err(err)?,
                        Err(Error::CapExceeded { cap }) => {
                            eprintln!("k={k} {m}: more than {cap} independent sets");
                            return Ok(EXIT_UNDECIDED);
                        }
                        Err(e) => return Err(err(e)),
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Command::Validate { instance, certificate } => {
            let inst = load_instance(&instance, None)?;
            let text = std::fs::read_to_string(&certificate).map_err(|e| format!("{}: {e}", certificate.display()))?;
            let doc: SequenceDoc = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", certificate.display()))?;
            let seq = ReconfigSequence::from_doc(&inst.graph, &doc).map_err(err)?;
            let verdict = if seq.start != inst.i {
                Err("certificate does not start at I".to_string())
            } else {
                validate_sequence(&inst.graph, &seq)
                    .map_err(err)
                    .and_then(|()| if seq.end() == inst.j.vertices() { Ok(()) } else { Err("certificate does not end at J".into()) })
            };
            let doc = match &verdict {
                Ok(()) => serde_json::json!({ "valid": true, "length": seq.len() }),
                Err(reason) => serde_json::json!({ "valid": false, "reason": reason }),
            };
            writeln!(out, "{doc}").map_err(err)?;
            Ok(if verdict.is_ok() { EXIT_YES } else { EXIT_NO })
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn exit_code(answer: Answer) -> u8 {
    match answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Rejected | Answer::Inconclusive => EXIT_UNDECIDED,
    }
}

fn report_decision(out: &mut impl Write, g: &Graph, d: &Decision, emit: Option<PathBuf>) -> Result<u8, String> {
    if let (Some(path), Some(seq)) = (emit, d.sequence()) {
        let text = serde_json::to_string_pretty(&seq.to_doc(g)).map_err(err)?;
        std::fs::write(&path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    writeln!(out, "{}", d.to_json(g)).map_err(err)?;
    Ok(exit_code(d.answer))
}

fn read_source(arg: &str) -> Result<String, String> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        let inst = fixtures::instance(name).ok_or_else(|| format!("unknown fixture {name:?}"))?;
        return serde_json::to_string(&inst).map_err(err);
    }
    std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))
}

/// Loads an instance, optionally overriding its model.
pub fn load_instance(arg: &str, model: Option<Model>) -> Result<LoadedInstance, String> {
    let text = read_source(arg)?;
    let mut inst: Instance = serde_json::from_str(&text).map_err(|e| format!("{arg}: {e}"))?;
    if let Some(m) = model {
        inst.model = m;
    }
    inst.load().map_err(|e| format!("{arg}: {e}"))
}

/// Loads a graph from an instance, an edge list or a fixture.
pub fn load_graph(arg: &str) -> Result<Graph, String> {
    let text = read_source(arg)?;
    let graph_text = match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(map)) => match map.get("graph") {
            Some(Value::String(s)) => s.clone(),
            _ => return Err(format!("{arg}: instance has no \"graph\" string")),
        },
        _ => text,
    };
    parse_graph(&graph_text).map_err(|e| format!("{arg}: {e}"))
}
