use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polyrot::cli::{self, CommandOutput, FuzzConfig, InputMode, OutputFormat, ScanConfig, ThetaGrid};
use polyrot::sampling::RootZone;

/// Boundary rotation checks for complex polynomials and rational functions.
#[derive(Parser)]
#[command(name = "polyrot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound on a grid of the unit circle.
    Scan(ScanArgs),
    /// Check all inequalities on random polynomials.
    Fuzz(FuzzArgs),
    /// Build an extremal example and verify equality.
    Witness(WitnessArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// JSON file, or `-` for stdin.
    #[arg(long)]
    input: String,
    /// Read the input as a root form `{"leading": .., "roots": [..]}`.
    #[arg(long, conflicts_with_all = ["coeffs", "rational"])]
    roots: bool,
    /// Read the input as a coefficient array, constant term first.
    #[arg(long, conflicts_with = "rational")]
    coeffs: bool,
    /// Read the input as `{"numerator": [..], "poles": [..]}`.
    #[arg(long)]
    rational: bool,
    /// Number of equally spaced angles.
    #[arg(long, conflicts_with = "theta")]
    grid: Option<usize>,
    /// Comma separated angles in radians.
    #[arg(long)]
    theta: Option<String>,
    /// Comma separated bound names.
    #[arg(long)]
    checks: Option<String>,
    /// Half-width of the arc for the arc bound.
    #[arg(long)]
    arc_alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    tol: Option<f64>,
    /// Accepted for symmetry with `fuzz`; the scan is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    degree_min: usize,
    #[arg(long, default_value_t = 10)]
    degree_max: usize,
    #[arg(long, value_enum, default_value_t = RootZone::InDisk)]
    zone: RootZone,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random angles per polynomial.
    #[arg(long, default_value_t = 4)]
    points: usize,
    /// Skip the rational-function checks.
    #[arg(long)]
    no_rational: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct WitnessArgs {
    /// JSON file with the witness spec, or `-` for stdin.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    input: Option<String>,
    /// Inline JSON witness spec.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("reading stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn scan(args: ScanArgs) -> Result<CommandOutput, String> {
    let mode = if args.roots {
        InputMode::Roots
    } else if args.coeffs {
        InputMode::Coeffs
    } else if args.rational {
        InputMode::Rational
    } else {
        InputMode::Auto
    };
    let input = cli::parse_input(&read_source(&args.input)?, mode)?;
    let mut cfg = ScanConfig::new(input);
    if let Some(n) = args.grid {
        cfg.grid = ThetaGrid::Count(n);
    }
    if let Some(list) = &args.theta {
        cfg.grid = ThetaGrid::List(cli::parse_theta_list(list)?);
    }
    if let Some(list) = &args.checks {
        cfg.checks = cli::parse_checks(list)?;
    }
    if let Some(alpha) = args.arc_alpha {
        cfg.arc_half_width = Some(alpha);
        if args.checks.is_none() {
            cfg.checks.arc_thm3 = true;
        }
    }
    cfg.format = args.format;
    if let Some(t) = args.tol {
        cfg.tolerance = t;
    }
    Ok(cli::cmd_scan(&cfg))
}

fn fuzz(args: FuzzArgs) -> CommandOutput {
    let mut cfg = FuzzConfig {
        count: args.count,
        degree_min: args.degree_min,
        degree_max: args.degree_max,
        zone: args.zone,
        seed: args.seed,
        points_per_case: args.points,
        rational: !args.no_rational,
        format: args.format,
        ..FuzzConfig::default()
    };
    if let Some(t) = args.tol {
        cfg.tolerance = t;
    }
    cli::cmd_fuzz(&cfg)
}

fn witness(args: WitnessArgs) -> Result<CommandOutput, String> {
    let text = match (&args.spec, &args.input) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => read_source(path)?,
        (None, None) => return Err("one of --input or --spec is required".into()),
    };
    let spec = cli::parse_witness_spec(&text)?;
    Ok(cli::cmd_witness(&spec, args.format))
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(cli::EXIT_INPUT as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match parsed.command {
        Command::Scan(a) => scan(a),
        Command::Fuzz(a) => Ok(fuzz(a)),
        Command::Witness(a) => witness(a),
    };
    let out = result.unwrap_or_else(|e| CommandOutput {
        code: cli::EXIT_INPUT,
        stdout: String::new(),
        stderr: e,
    });
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    if !out.stderr.is_empty() {
        eprintln!("error: {}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
