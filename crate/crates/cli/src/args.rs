use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbits_core::Axis;

#[derive(Debug, Parser)]
#[command(
    name = "coherence-orbits",
    version,
    about = "Two-qubit coherence-vector orbits"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// State as a file path, `-` for stdin, or inline JSON/CSV. Defaults to stdin.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Output file, or `-` for stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Scale coherence vectors and the correlation tensor by 2 on output.
    #[arg(long, global = true, value_enum, default_value_t = Normalization::Coherence)]
    pub normalization: Normalization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    Coherence,
    Bloch,
}

impl Normalization {
    pub fn factor(self) -> f64 {
        match self {
            Normalization::Coherence => 1.0,
            Normalization::Bloch => 2.0,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert and validate a state.
    State,
    /// Apply one interaction to a state.
    Evolve {
        /// Interaction as JSON, e.g. '{"kind":"one_dim","i":"z","j":"z","phi":1.0}'.
        #[arg(long)]
        spec: String,
    },
    /// Sample the orbit of a state under an interaction on a uniform grid.
    Orbit {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
        phi_max: f64,
        #[arg(long, default_value_t = 65)]
        samples: usize,
    },
    /// Fit the ellipse followed by one qubit under a one_dim or heisenberg interaction.
    Ellipse {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        subsystem: u8,
        /// Also report the closed-form semi-minor axis; the state must be a product state.
        #[arg(long)]
        semi_minor: bool,
    },
    /// Reachable disk of qubit 1 under full control of qubit 2 and `σ_i⊗σ_j`.
    Reachable {
        #[arg(long, value_parser = parse_axis)]
        i: Axis,
        #[arg(long, value_parser = parse_axis)]
        j: Axis,
        /// Number of sampled control sequences to include.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Linear entropies over one period of the exchange interaction.
    Entangle {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse::<Axis>().map_err(|e| e.to_string())
}
