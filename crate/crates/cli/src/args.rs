use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "semimed", version, about = "Median semilattices and strategy-proof aggregation rules")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a space.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Evaluate or tabulate a rule.
    Rule {
        #[command(subcommand)]
        action: RuleAction,
    },
    /// Run predicates on a rule and print a JSON report array.
    Check(CheckArgs),
    /// Run a verification harness.
    Verify {
        #[command(subcommand)]
        which: VerifyWhich,
    },
    /// Generalized Condorcet-Kemeny outcome, with the full minimizer set.
    Kemeny(KemenyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Relation flavor (total-preorder, weak-order, weak-tournament,
    /// strict-tournament, reflexive, irreflexive).
    #[arg(long)]
    pub flavor: Option<String>,

    /// Comma-separated alternative names.
    #[arg(long)]
    pub ground: Option<String>,

    /// JSON space spec `{"flavor", "ground"}` or poset `{"n", "labels", "leq"}`.
    #[arg(long, conflicts_with_all = ["flavor", "ground"])]
    pub space_file: Option<PathBuf>,

    /// Lift the default size limits.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    /// Rule name (comajority, ck, strict-ck, majority, dictator:I,
    /// constant:X, quota:Q) or inline RuleSpec JSON.
    #[arg(long, required_unless_present = "rule_file")]
    pub rule: Option<String>,

    #[arg(long, conflicts_with = "rule")]
    pub rule_file: Option<PathBuf>,

    /// Tie-break for Kemeny rules: default, reversed, or a comma-separated
    /// element order.
    #[arg(long)]
    pub tiebreak: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    /// Votes as indices or bracket notation, comma-separated, or a profile
    /// JSON object.
    #[arg(long, required_unless_present = "profile_file")]
    pub profile: Option<String>,

    #[arg(long, conflicts_with = "profile")]
    pub profile_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SpaceAction {
    /// Size, irreducibles and structure flags.
    Info(SpaceArgs),
    /// Every element in canonical order.
    Enumerate(SpaceArgs),
}

#[derive(Debug, Subcommand)]
pub enum RuleAction {
    Eval {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Write the dense outcome table.
    Table {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        rule: RuleArgs,
        /// Number of agents.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Fails,
    Any,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Number of agents.
    #[arg(long)]
    pub n: usize,
    /// Predicates to run (repeatable); all applicable ones by default.
    #[arg(long = "predicate", value_name = "NAME")]
    pub predicates: Vec<String>,
    /// Verdict every predicate is expected to return.
    #[arg(long, value_enum, default_value = "holds")]
    pub expect: Expect,
    /// Check monotone independence over all profile pairs.
    #[arg(long)]
    pub full_pairs: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Number of agents.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Random tables added to the corpus.
    #[arg(long, default_value_t = 200)]
    pub random: usize,
    /// Seed, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
    /// Sample this many profiles instead of scanning all of them.
    #[arg(long)]
    pub sample: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyWhich {
    Theorem1(VerifyArgs),
    Corollary1(VerifyArgs),
    Prop1(VerifyArgs),
    Prop3(VerifyArgs),
    Prop5(VerifyArgs),
    Claims(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct KemenyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub tiebreak: Option<String>,
    /// Restrict outcomes to linear orders.
    #[arg(long)]
    pub strict: bool,
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed `{s}`: {e}"))
}
