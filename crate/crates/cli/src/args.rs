use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};
use ltl2nba::{Mode, Options};

/// Translate an LTL formula into a nondeterministic Büchi automaton.
#[derive(Debug, Parser)]
#[command(name = "ltl2nba", version)]
#[command(group(ArgGroup::new("source").args(["formula", "file", "sample"]).required(true)))]
pub struct Args {
    /// The formula to translate.
    #[arg(short = 'f', long = "formula", value_name = "FORMULA")]
    pub formula: Option<String>,

    /// Read the formula from a file.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,

    #[arg(long, value_enum, default_value_t = Format::Hoa)]
    pub format: Format,

    /// Do not merge states with equal clause sets.
    #[arg(long)]
    pub no_merge: bool,

    /// Keep every fulfilled literal in process sets.
    #[arg(long = "no-restrict-p")]
    pub no_restrict_p: bool,

    /// Drop non-minimal obligations.
    #[arg(long = "min-os")]
    pub min_os: bool,

    /// Remove states that cannot reach an accepting cycle.
    #[arg(long)]
    pub prune_dead: bool,

    /// Treat repeated atoms as one occurrence. Unsound for the general
    /// construction; meant for experiments only.
    #[arg(long)]
    pub no_occurrence_tags: bool,

    /// Check the translation against the lasso oracle and print a JSON report.
    #[arg(long)]
    pub verify: bool,

    /// Verify N sampled formulas instead of a given one.
    #[arg(long, value_name = "N", requires = "verify")]
    pub sample: Option<usize>,

    #[arg(long, value_name = "S", default_value_t = 1)]
    pub seed: u64,

    #[arg(long, value_name = "K", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_size: u64,

    /// Number of propositions in sampled formulas.
    #[arg(long = "ap", value_name = "M", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=26))]
    pub ap: u64,

    #[arg(long, value_name = "A", default_value_t = 2)]
    pub max_stem: usize,

    #[arg(long, value_name = "B", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_loop: u64,

    /// Write the output here instead of standard output.
    #[arg(short = 'o', long = "output", value_name = "OUT")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    General,
    #[value(name = "rf", alias = "release-free")]
    ReleaseFree,
    #[value(name = "uf", alias = "until-free")]
    UntilFree,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::General => Mode::General,
            ModeArg::ReleaseFree => Mode::ReleaseFree,
            ModeArg::UntilFree => Mode::UntilFree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Hoa,
    Dot,
    Json,
    Stats,
}

impl Args {
    pub fn options(&self) -> Options {
        Options {
            merge: !self.no_merge,
            restrict_process: !self.no_restrict_p,
            minimize_obligations: self.min_os,
            prune_dead: self.prune_dead,
        }
    }
}
