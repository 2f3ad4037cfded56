use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Debug, Clone, Parser)]
#[command(name = "padic-lift", version, about = "Certified p-adic lifts of finite dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Cap on enumerated vertices and residues.
    #[arg(long, global = true, env = "PADIC_LIFT_SIZE_LIMIT", default_value_t = padic_lift::DEFAULT_SIZE_LIMIT)]
    pub size_limit: u64,

    /// Write the JSON report here and print a summary instead.
    #[arg(long, global = true, value_name = "OUT")]
    pub json: Option<PathBuf>,

    /// Write DOT output: a file for one graph, a directory for several.
    #[arg(long, global = true, value_name = "OUT")]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GraphInput {
    /// JSON graph spec.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Inline successor table, e.g. "1,0".
    #[arg(long, conflicts_with = "graph")]
    pub table: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long = "p")]
    pub p: Option<u32>,

    /// Residue degree of the unramified extension.
    #[arg(long = "f")]
    pub f: Option<u32>,

    #[arg(long)]
    pub depth: Option<u32>,

    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Requirement {
    /// Ball images equal their targets (state level when f > 1).
    Exact,
    /// The reduction of the polynomial is exactly the graph map.
    States,
    /// Ball images lie inside their targets.
    Inclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DcrtMode {
    Decompose,
    Assemble,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Encode a graph as a system of state cylinders.
    Encode {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: Params,
    },
    /// Certify a polynomial as an interpreter of a graph.
    Certify {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value = "exact")]
        require: Requirement,
    },
    /// Build the affine model and the interpolating polynomial of a graph.
    Synthesize {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        params: Params,
        /// Take slopes from this polynomial where they have the right size.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Classify the map between two balls of Z_p.
    Classify {
        #[arg(long)]
        poly: String,
        #[arg(long = "p")]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        center: BigInt,
        #[arg(long)]
        radius: u32,
        #[arg(long, allow_hyphen_values = true)]
        target_center: BigInt,
        #[arg(long)]
        target_radius: u32,
        /// Residue depth for the fallback when dominance fails.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Split a map along the prime powers of its modulus, or glue components.
    Dcrt {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value = "decompose")]
        mode: DcrtMode,
    },
    /// Levels of the tower of a polynomial over Z/p^n.
    Tower {
        #[arg(long)]
        poly: String,
        #[arg(long = "p")]
        p: u32,
        #[arg(long)]
        max_n: u32,
        /// Residue whose cycle length is tracked across levels.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lift a cycle of P mod p to a periodic point.
    Hensel {
        #[arg(long)]
        poly: String,
        #[arg(long = "p")]
        p: u32,
        #[arg(long)]
        xbar: u64,
        #[arg(long)]
        period: u64,
        /// Target precision.
        #[arg(long, default_value_t = 4)]
        precision: u32,
    },
    /// Finite-depth checks on the limit of a tower.
    ProfiniteCheck {
        #[arg(long)]
        poly: String,
        #[arg(long = "p")]
        p: u32,
        #[arg(long)]
        max_n: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c_exp: i64,
        /// Semicolon-separated polynomials, one per level; defaults to P + p^n z.
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Compare the graphs of z^2 + c1 and z^2 + c2 mod p^depth.
    Rigidity {
        #[arg(long, allow_hyphen_values = true)]
        c1: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        c2: BigInt,
        #[arg(long = "p")]
        p: u32,
        #[arg(long)]
        depth: u32,
    },
}
