use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "orthomod", version, about = "Quantum logic on subspace lattices, with Bi-logic operators")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Default)]
pub struct GlobalOpts {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the scenario seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the projector-distance equality tolerance.
    #[arg(long, global = true, value_name = "TOL")]
    pub policy_eq_tol: Option<f64>,
    /// Accept attribute classes of different dimensions.
    #[arg(long, global = true)]
    pub allow_unequal_dims: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and print its syntax tree.
    Parse { formula: String },
    /// Evaluate a formula (a name from the scenario, or formula text) to a subspace.
    Eval { scenario: PathBuf, formula: String },
    /// Test whether a named state vector satisfies each formula.
    Member {
        scenario: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(required = true)]
        formulas: Vec<String>,
    },
    /// Check the orthomodular, modular and distributive laws.
    #[command(group(ArgGroup::new("source").required(true).args(["scenario", "random"])))]
    Laws {
        scenario: Option<PathBuf>,
        /// Random instances: dimension, number of trials, seed.
        #[arg(long, num_args = 3, value_names = ["N", "TRIALS", "SEED"])]
        random: Option<Vec<u64>>,
        /// Scalar field for random instances.
        #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
        field: FieldArg,
    },
    /// Bi-logic operators on a scenario's objects.
    Bilogic {
        #[command(subcommand)]
        op: BilogicCommand,
    },
    /// Run the bundled demo scenarios.
    Demo,
}

#[derive(Debug, Subcommand)]
pub enum BilogicCommand {
    /// Asymmetric representation: meet of the object's attributes.
    Repr {
        scenario: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Generalization: join of the object's attributes.
    Generalize {
        scenario: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Partition objects by equal generalizations.
    Symmetry {
        scenario: PathBuf,
        /// Objects to partition (default: all).
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
    },
    /// Compare the generalizations of p and not-p.
    Negation {
        scenario: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Join of two objects' representations.
    Condense {
        scenario: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Transfer some of the source's attributes onto the target.
    Displace {
        scenario: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        source: String,
        #[arg(long, value_delimiter = ',')]
        transfer: Vec<String>,
    },
    /// List temporal and reality attributes per object.
    Kinds { scenario: PathBuf },
}
