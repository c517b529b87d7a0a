use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rbx_core::check::DEFAULT_BUDGET;

const TARGET_HELP: &str = "Family descriptor (sweedler, group:cyclic:<n>, group:symmetric:<n>, \
group:dihedral:<m>, uqsl2:<d>, hecke:A:<n>, hecke:I2:<m>) or path to an algebra JSON file";

/// Exact verification of Rota-Baxter operators built from quasi-idempotent
/// elements of finite-dimensional algebras.
#[derive(Debug, Parser)]
#[command(name = "rbx", version)]
pub struct Cli {
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Number of sampled tuples for checks on carriers of dimension above 64.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check associativity and the unit, plus the Hopf axioms when present.
    Check {
        #[arg(help = TARGET_HELP)]
        target: String,
    },
    /// Compute the trace element x_H and verify x_H² = ε(x_H)·x_H.
    TraceElement {
        #[arg(help = TARGET_HELP)]
        target: String,
    },
    /// Compute a basis of the left or right integrals.
    Integrals {
        #[arg(help = TARGET_HELP)]
        target: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Build P(a) = ξa from a quasi-idempotent ξ and verify the Rota-Baxter identity.
    Rb {
        #[arg(help = TARGET_HELP)]
        target: String,
        /// Element expression, e.g. "2*1 + 2*x", "C[s1]" or "xi".
        element: String,
        /// Print P(e) for every basis element.
        #[arg(long)]
        table: bool,
        /// Print the operator matrix (column j is P(e_j)).
        #[arg(long)]
        matrix: bool,
        /// Write the operator as JSON to this path.
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Derive the tridendriform structure (dendriform at weight zero) and check its axioms.
    Tridend {
        #[arg(help = TARGET_HELP)]
        target: String,
        /// Element expression for ξ.
        element: String,
    },
    /// Verify a Rota-Baxter operator given as JSON against a target algebra.
    CheckOperator {
        #[arg(help = TARGET_HELP)]
        target: String,
        /// Operator JSON file ({"dim", "weight", "matrix"}, column-major).
        operator: PathBuf,
    },
    /// Write the algebra specification JSON of a target.
    Export {
        #[arg(help = TARGET_HELP)]
        target: String,
        /// Output path; standard output when omitted.
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}
