use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indep_core::Mode;

#[derive(Debug, Parser)]
#[command(name = "indep", version, about = "Conditional-independence reasoning over dependency models and graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Semigraphoid,
    Graphoid,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Semigraphoid => Mode::SemiGraphoid,
            ModeArg::Graphoid => Mode::Graphoid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    /// Separation model of a compiled protocol equals the closure of its statements.
    #[value(name = "corollary1")]
    ProtocolClosure,
    /// Extracting and recompiling reproduces the DAG.
    #[value(name = "theorem1")]
    RoundTrip,
    /// Minimal-boundary DAGs are I-maps for every order.
    #[value(name = "theorem2")]
    MinimalImap,
    /// Witness protocols d-separate their triplet.
    #[value(name = "theorem3")]
    Witness,
    OracleEq,
    UsepAxioms,
}

/// Where a command reads its independence oracle from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OracleSource {
    /// DAG file; the oracle is d-separation in it
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Model file; the oracle is its closure under --mode
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closure of a model under the chosen axioms
    Closure {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value = "semigraphoid")]
        mode: ModeArg,
        /// Largest universe accepted for closure
        #[arg(long, default_value_t = indep_core::axioms::DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
    /// Derive a triplet from a model and print the proof
    Derive {
        #[arg(long)]
        model: PathBuf,
        /// Triplet literal `x-list | z-list | y-list`
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "semigraphoid")]
        mode: ModeArg,
        #[arg(long, default_value_t = indep_core::axioms::DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
    /// d-separation query on a DAG
    Dsep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// ID-separation query on a DAG with deterministic nodes
    Idsep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Separation query on an undirected graph
    Usep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Compile a protocol into its DAG (graph file format)
    Compile {
        #[arg(long)]
        protocol: PathBuf,
    },
    /// Extract the protocol that generates a DAG
    Extract {
        #[arg(long)]
        graph: PathBuf,
    },
    /// List a protocol's statements as a model file
    Triplets {
        #[arg(long)]
        protocol: PathBuf,
    },
    /// Edge-minimal undirected I-map of a graphoid
    MinimalImap {
        #[command(flatten)]
        source: OracleSource,
        #[arg(long, value_enum, default_value = "graphoid")]
        mode: ModeArg,
        #[arg(long, default_value_t = indep_core::axioms::DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
    /// Protocol whose DAG d-separates the target triplet
    Witness {
        #[command(flatten)]
        source: OracleSource,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "semigraphoid")]
        mode: ModeArg,
        #[arg(long, default_value_t = indep_core::axioms::DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
    /// Check that a DAG (or compiled protocol) is an I-map of a model
    VerifyImap {
        /// Candidate DAG
        #[arg(long, conflicts_with = "protocol", required_unless_present = "protocol")]
        graph: Option<PathBuf>,
        /// Candidate protocol, compiled first
        #[arg(long)]
        protocol: Option<PathBuf>,
        /// Target model
        #[arg(long)]
        model: PathBuf,
        /// Close the target model under these axioms first; as given if absent
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = indep_core::axioms::DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
    /// Run a seeded randomized property check
    Check {
        #[arg(value_enum)]
        name: CheckName,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Export a graph file as Graphviz DOT
    ExportDot {
        #[arg(long)]
        graph: PathBuf,
    },
}
