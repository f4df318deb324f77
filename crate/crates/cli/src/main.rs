mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sturmian_core::config::{OutputFormat, RunConfig, SeedPlan};
use sturmian_core::order_analysis::DistanceProfile;
use sturmian_core::Error;

use crate::render::Outcome;

/// Exact Sturmian sequences: generation, order, discrepancy,
/// characterization and lattice-gas ground states.
#[derive(Parser, Debug)]
#[command(name = "sturmian", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Rotation angle: `fib`, `a,b,c,d` for (a + b*sqrt(d))/c, or
    /// `ratio:p/q[:err]`.
    #[arg(long, global = true, default_value = "fib")]
    gamma: String,

    /// Phase: `fib`, `a,b,c,d`, an integer, or `p/q`.
    #[arg(long, global = true, default_value = "fib")]
    psi: String,

    /// Largest distance classified in the distance profile.
    #[arg(long, global = true, default_value_t = 200)]
    horizon: u64,

    /// Window length used by window-based checks.
    #[arg(long, global = true, default_value_t = 2000)]
    window: usize,

    /// Largest ground-state length scanned by `verify`.
    #[arg(long, global = true, default_value_t = 16)]
    l_max: usize,

    /// Largest factor length checked by `verify`.
    #[arg(long, global = true, default_value_t = 12)]
    n_max: usize,

    /// Coupling decay: J(j) = lambda^j on forbidden distances.
    #[arg(long, global = true, default_value = "1/2")]
    lambda: String,

    /// Penalty per run of d_1 + 1 zeros.
    #[arg(long, global = true, default_value = "1")]
    beta: String,

    /// Tail tolerance for periodic energy densities.
    #[arg(long, global = true, default_value = "1/1000000000000")]
    tail_tol: String,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Sampled segments per discrepancy check; 0 scans all segments.
    #[arg(long, global = true, default_value_t = 0)]
    trials: usize,

    #[arg(long, global = true, default_value = "json")]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// JSON distance profile used in place of the computed one.
    #[arg(long, global = true)]
    profile: Option<PathBuf>,
}

/// A finite word, given literally or as a window of the rotation coding.
#[derive(Args, Debug, Clone)]
struct WordArgs {
    /// Literal 0/1 word.
    #[arg(long, conflicts_with_all = ["from", "to"])]
    word: Option<String>,

    #[arg(long, requires = "to", allow_hyphen_values = true)]
    from: Option<i64>,

    #[arg(long, requires = "from", allow_hyphen_values = true)]
    to: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbols X_psi(i) for i in [from, to].
    Generate {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        /// Generator: rotation, approx or substitution. Defaults to
        /// rotation for exact angles and approx for ratios.
        #[arg(long)]
        method: Option<String>,
    },
    /// Distance profile d_j with allowed and forbidden distances.
    Distances,
    /// Factor complexity p_n for n = 1..n_max.
    Complexity {
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
    /// Balance decision with a witness pair when unbalanced.
    Balance(WordArgs),
    /// Most-homogeneity decision with a witness when it fails.
    Homogeneous(WordArgs),
    /// The n + 1 arcs of the circle coding length-n factors.
    Intervals {
        #[arg(long)]
        n: usize,
    },
    /// Exact frequency of a word.
    Frequency {
        #[arg(long)]
        word: String,
    },
    /// Maximal segment deviation from frequency times length.
    Discrepancy {
        /// Single word; defaults to every factor up to --max-word-len.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
        /// Segment-length horizon; defaults to half the window.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Length-n words that extend to long legal words.
    Characterize {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4096)]
        max_m: usize,
    },
    /// Smallest i with i*p forbidden, for p = 1..p_max.
    Exclusion {
        #[arg(long, default_value_t = 12)]
        p_max: u64,
    },
    /// Open-boundary energy of a word, or the energy density of its
    /// periodic repetition with --periodic.
    Energy {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        periodic: bool,
    },
    /// Exhaustive minimum-energy configurations of length len.
    GroundState {
        #[arg(long)]
        len: usize,
    },
    /// Run invariant suites: order, discrepancy, characterize, energy or
    /// all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Exit statuses of the command-line contract.
mod exit {
    pub const USAGE: u8 = 1;
    pub const LIMIT: u8 = 2;
    pub const INVARIANT: u8 = 3;
}

fn error_status(e: &Error) -> u8 {
    match e {
        Error::AmbiguousCoding { .. }
        | Error::HorizonExceeded { .. }
        | Error::Undecidable(_)
        | Error::Inconclusive(_)
        | Error::InsufficientProfile { .. }
        | Error::BudgetExceeded { .. } => exit::LIMIT,
        Error::Inconsistent(_) => exit::INVARIANT,
        _ => exit::USAGE,
    }
}

fn load_profile(path: &PathBuf) -> Result<DistanceProfile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let bad = |e: &dyn std::fmt::Display| format!("{}: not a distance profile: {e}", path.display());
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
    // a bare {"d", "horizon"} gets its allowed and forbidden sets derived
    let profile = if value.get("allowed").is_none() && value.get("forbidden").is_none() {
        let d: Vec<u64> = serde_json::from_value(value["d"].clone()).map_err(|e| bad(&e))?;
        let horizon = value["horizon"].as_u64().ok_or_else(|| bad(&"missing horizon"))?;
        DistanceProfile::from_d(d, horizon).map_err(|e| bad(&e))?
    } else {
        serde_json::from_value(value).map_err(|e| bad(&e))?
    };
    let in_range = |x: &u64| (1..=profile.horizon).contains(x);
    if profile.d.is_empty()
        || !profile.allowed.iter().all(in_range)
        || !profile.forbidden.iter().all(in_range)
    {
        return Err(format!(
            "{}: profile needs a nonempty d and distances within 1..=horizon",
            path.display()
        ));
    }
    Ok(profile)
}

fn build_config(g: &GlobalArgs) -> Result<RunConfig, String> {
    let profile_override = g.profile.as_ref().map(load_profile).transpose()?;
    Ok(RunConfig {
        gamma: g.gamma.clone(),
        psi: g.psi.clone(),
        horizon: g.horizon,
        window: g.window,
        l_max: g.l_max,
        n_max: g.n_max,
        lambda: g.lambda.clone(),
        beta: g.beta.clone(),
        tail_tol: g.tail_tol.clone(),
        format: g.format,
        seed_plan: SeedPlan {
            seed: g.seed,
            trials: g.trials,
        },
        profile_override,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(status);
        }
    };
    let config = match build_config(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(exit::USAGE);
        }
    };
    let (name, result) = commands::dispatch(&cli.command, &config);
    let outcome: Outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_status(&e));
        }
    };
    let rendered = match render::render(name, &config, &outcome) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(exit::USAGE);
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(exit::USAGE);
    }
    match &outcome.failure {
        Some(counterexample) => {
            eprintln!("invariant failed: {counterexample}");
            ExitCode::from(exit::INVARIANT)
        }
        None => ExitCode::SUCCESS,
    }
}
