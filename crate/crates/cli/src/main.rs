//! `pronormal verify`: builds a group, classifies its subgroup classes and
//! checks the result against the expected non-pronormal table.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use pronormal_core::{
    run_verification, Error, GroupSpec, OutputFormat, Suite, TargetConfig, TargetMode, VerifyConfig,
};

#[derive(Parser)]
#[command(name = "pronormal", version, about = "Exact pronormality verifier for PSL(2,q), Sz(q) and J1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one target group and run the selected suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Psl2,
    Sz,
    J1,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Exhaustive,
    Targeted,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Classify,
    Lattice,
    Identities,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Field order for psl2 and sz.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    /// Generator file for j1.
    #[arg(long)]
    gens: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Worker threads for the parallel scans.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Order bound for the cyclic-extension pass in targeted mode.
    #[arg(long)]
    bound: Option<usize>,
    /// Per-stage time budget in seconds, replacing the per-family defaults.
    #[arg(long)]
    stage_budget: Option<f64>,
    /// Format of the report printed on stdout.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

fn config(args: &VerifyArgs) -> Result<VerifyConfig, Error> {
    let need_q = || args.q.ok_or_else(|| Error::InvalidInput("--q is required for this group".into()));
    let spec = match args.group {
        GroupArg::Psl2 => GroupSpec::psl2(need_q()?)?,
        GroupArg::Sz => GroupSpec::sz(need_q()?)?,
        GroupArg::J1 => GroupSpec::j1(),
    };
    let mode = match args.mode {
        ModeArg::Auto => TargetMode::auto(spec.expected_order()),
        ModeArg::Exhaustive => TargetMode::Exhaustive,
        ModeArg::Targeted => TargetMode::Targeted,
    };
    let stage_budget = match args.stage_budget {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(Error::InvalidInput("--stage-budget must be a positive number of seconds".into()))
        }
        s => s.map(Duration::from_secs_f64),
    };
    let mut target = TargetConfig::new(spec, mode);
    target.bound = args.bound;
    let mut cfg = VerifyConfig::new(vec![target]);
    cfg.j1_generator_path = args.gens.clone();
    cfg.jobs = args.jobs;
    cfg.output = args.json.clone();
    cfg.stage_budget = stage_budget;
    cfg.suite = match args.suite {
        SuiteArg::Classify => Suite::Classify,
        SuiteArg::Lattice => Suite::Lattice,
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::All => Suite::All,
    };
    cfg.format = match args.format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    };
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<i32, Error> {
    let cfg = config(args)?;
    let report = run_verification(&cfg)?;
    if let Some(path) = &cfg.output {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    }
    match cfg.format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", report.to_json()),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Verify(args) => verify(args).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            e.exit_code()
        }),
    };
    ExitCode::from(code as u8)
}
