use clap::{Args, Parser, Subcommand};
use gqm_cli::report::LogBase;
use gqm_cli::{run, Command, Flags, Format, EXIT_INPUT};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gqm",
    version,
    about = "Entropy and law checks for semilattice flows, driven by scenario files"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Audit the distance and join laws on sampled tuples
    Axioms(CommonArgs),
    /// Per-probe entropy ladders and their supremum over the grown set
    Entropy(CommonArgs),
    /// Evaluate a named entropy (ent_tilde, ent_tilde_star, h_alg, h_top,
    /// ent_llc, ent_star_llc)
    Named {
        /// Which named entropy to evaluate
        which: String,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// Compare k times the entropy of a flow with the entropy of its k-th
    /// power, for each configured k
    Loglaw(CommonArgs),
    /// Verify a claimed conjugation between two flows on the same carrier
    Conjugacy(CommonArgs),
    /// Check the trajectory laws along computed trajectories
    Suite(CommonArgs),
    /// Re-run the scenario against element-enumeration oracles and report
    /// any disagreement
    Oracle(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario file (JSON)
    scenario: PathBuf,
    /// Sampling seed; overrides the scenario's config.seed
    #[arg(long)]
    seed: Option<u64>,
    /// Largest trajectory step examined
    #[arg(long)]
    n_max: Option<u64>,
    /// Steps a plateau must hold before it counts as confirmed
    #[arg(long)]
    confirm_window: Option<u64>,
    /// Rounds of pairwise join closure when growing evaluation sets
    #[arg(long)]
    closure_depth: Option<u32>,
    /// Base for rendered logarithms: 2, e, 10, or p (the carrier's modulus)
    #[arg(long)]
    log_base: Option<String>,
    /// Output format: json, or csv (entropy distance ladders only)
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        CliCommand::Axioms(a) => (Command::Axioms, a),
        CliCommand::Entropy(a) => (Command::Entropy, a),
        CliCommand::Named { which, args } => (Command::Named(which), args),
        CliCommand::Loglaw(a) => (Command::Loglaw, a),
        CliCommand::Conjugacy(a) => (Command::Conjugacy, a),
        CliCommand::Suite(a) => (Command::Suite, a),
        CliCommand::Oracle(a) => (Command::Oracle, a),
    };
    let log_base = match args.log_base.as_deref().map(LogBase::parse).transpose() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_INPUT);
        }
    };
    let format = match args.format.as_str() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => {
            eprintln!("error: unknown format {other:?}; use json or csv");
            std::process::exit(EXIT_INPUT);
        }
    };
    let flags = Flags {
        seed: args.seed,
        n_max: args.n_max,
        confirm_window: args.confirm_window,
        closure_depth: args.closure_depth,
        log_base,
        format,
    };
    let code = run(
        &command,
        &args.scenario,
        &flags,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
