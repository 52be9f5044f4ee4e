mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cansplit", version, about = "Splitting lemma, cA_n germs, sextic double solids and rank-2 toric links")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for independent sub-tasks; output order does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock timing to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Split off `x^2` from a germ: `f = (v(x + p))^2 + h`.
    Split(SplitArgs),
    /// Classify the germ of a hypersurface at a point as `cA_n`.
    Classify(ClassifyArgs),
    /// Sextic double solid families with a cA_n point.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Walk the 2-ray game of a rank-2 toric variety.
    ToricLink(ToricArgs),
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    /// Polynomial file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    /// Variable to split off; repeat to split several in turn (only `h` is then available).
    #[arg(long = "var", required = true)]
    pub vars: Vec<String>,
    /// Truncation degree.
    #[arg(long, default_value_t = 20)]
    pub degree: u64,
    #[arg(long, value_enum, default_value_t = Emit::H)]
    pub emit: Emit,
    /// Substitute a rational value before splitting, e.g. `t=1`.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Variable order, comma separated; otherwise order of first appearance.
    #[arg(long = "vars", value_delimiter = ',')]
    pub table: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    H,
    G,
    P,
    V,
    All,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Polynomial file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    /// Base point, comma separated rationals; the origin by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Vec<String>,
    /// Truncation degree for the residual series.
    #[arg(long = "degree-bound", default_value_t = 20)]
    pub degree_bound: u64,
    /// Substitute a rational value first and drop the variable, e.g. `t=1`.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Variable order, comma separated; otherwise order of first appearance.
    #[arg(long = "vars", value_delimiter = ',')]
    pub table: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// The member of a family with the given coefficients; omitted ones stay symbolic.
    Construct(FamilyArgs),
    /// Check the conditions of a family on a concrete sextic or coefficient file.
    Check(FamilyArgs),
    /// Parameter dimensions.
    Dims(DimsArgs),
    /// The generality condition of a family with a link.
    Generality(FamilyArgs),
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family such as 4, 7.2 or cA8; may also be given by a `family =` line.
    #[arg(long)]
    pub family: Option<String>,
    /// Coefficient file (`name = form` lines or `f = sextic`); stdin when `-`.
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    /// One family; all eleven when absent.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Args, Debug)]
pub struct ToricArgs {
    /// Link file with `vars:`, two `row:` lines and optional ideal.
    pub link: Option<PathBuf>,
    /// Extra ideal generators, one per line.
    pub ideal: Option<PathBuf>,
    /// Replay a built-in link instead (a name such as cA4 or a family such as 7.2, or `all`).
    #[arg(long, conflicts_with_all = ["link", "ideal"])]
    pub catalog: Option<String>,
    /// Bound on the total exponent of section generators.
    #[arg(long, default_value_t = cansplit::toric::DEFAULT_EXPONENT_BOUND)]
    pub bound: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(report::exit_code(&e))
        }
    }
}
