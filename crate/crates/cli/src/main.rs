use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sinc_core::bounds::predicted_error;
use sinc_core::cardinal::{grid, sample, InterpolationPlan};
use sinc_core::harness::study::{StepContext, STRIP_NORM_TOL};
use sinc_core::harness::{
    error_profile, lookup, parse_params, reproduce_table, run_study_for, write_profile_tsv, write_rows_csv,
    RegistryEntry, StepOptions, StripNormMode, StudyConfig, TableId, FULL_LADDER, TABLE_LADDER,
};
use sinc_core::stepsize::{step_for_rule, StepRuleInput};
use sinc_core::stripquad::strip_norm_detailed;
use sinc_core::{DecaySpec, Result, RuleTag, StripSpec};

#[derive(Parser)]
#[command(name = "sincx", version, about = "Sinc interpolation of algebraically decaying functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the cardinal series of a registry function
    Interp(InterpArgs),
    /// Print the step size h chosen by a rule
    Stepsize(StepArgs),
    /// Print h, the envelope E_N and the constant c
    Bound(StepArgs),
    /// Estimate the strip norm N1(f, D_d) by quadrature
    N1(N1Args),
    /// Run a convergence study over a ladder of N
    Converge(ConvergeArgs),
    /// Write the signed pointwise error on [-2Nh, 2Nh]
    Profile(ProfileArgs),
    /// Recompute a golden table and diff it cell by cell
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct FunctionArgs {
    /// Registry function (ex1, ex2, ex2-printed, poisson)
    #[arg(long = "fn", value_name = "NAME")]
    function: String,
    /// Function parameters, e.g. a=3
    #[arg(long, value_name = "K=V", num_args = 1..)]
    params: Vec<String>,
}

#[derive(Args)]
struct RuleArgs {
    /// classical | w-exact | w-optimized | w-strip | log-approx | manual
    #[arg(long, value_parser = parse_rule)]
    rule: RuleTag,
    /// Strip half-width (defaults to the function's own)
    #[arg(long)]
    d: Option<f64>,
    /// Step size for the manual rule
    #[arg(long)]
    h: Option<f64>,
    /// Source of N1: auto | declared | quadrature | strip-bound | none
    #[arg(long = "strip-norm", default_value = "auto")]
    strip_norm: String,
    /// Explicit strip norm; overrides --strip-norm
    #[arg(long)]
    n1: Option<f64>,
}

#[derive(Args)]
struct InterpArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    rule: RuleArgs,
    /// Evaluation point
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid", required_unless_present = "grid")]
    x: Option<f64>,
    /// Evaluate on the half-step grid jh/2, |j| <= 2N
    #[arg(long)]
    grid: bool,
}

#[derive(Args)]
struct StepArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_rule)]
    rule: RuleTag,
    /// Strip norm N1(f, D_d)
    #[arg(long)]
    n1: Option<f64>,
    /// Decay constant L
    #[arg(long = "L", default_value_t = 1.0)]
    big_l: f64,
    /// Step size for the manual rule
    #[arg(long)]
    h: Option<f64>,
}

#[derive(Args)]
struct N1Args {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long)]
    d: Option<f64>,
    /// Relative tolerance
    #[arg(long, default_value_t = STRIP_NORM_TOL)]
    tol: f64,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    rule: RuleArgs,
    /// Comma-separated term counts (default 2,4,...,1024)
    #[arg(long, value_delimiter = ',', conflicts_with = "full_ladder")]
    ladder: Option<Vec<usize>>,
    /// Use the ladder 1,2,4,...,1024
    #[arg(long)]
    full_ladder: bool,
    /// CSV output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    rule: RuleArgs,
    #[arg(long)]
    n: usize,
    /// Number of points (default 32N + 1)
    #[arg(long)]
    resolution: Option<usize>,
    /// TSV output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table to reproduce (ex2)
    #[arg(long, value_parser = parse_table)]
    table: TableId,
}

fn parse_rule(s: &str) -> std::result::Result<RuleTag, String> {
    s.parse::<RuleTag>().map_err(|e| e.to_string())
}

fn parse_table(s: &str) -> std::result::Result<TableId, String> {
    s.parse::<TableId>().map_err(|e| e.to_string())
}

/// Scientific notation, 10 significant digits.
fn num(v: f64) -> String {
    format!("{v:.9e}")
}

/// Resolves the strip-norm source; an explicit `--n1` is attached to the entry's strip.
fn prepare(mut entry: RegistryEntry, args: &RuleArgs) -> Result<(RegistryEntry, StepOptions)> {
    let mut options = StepOptions {
        d_override: args.d,
        strip_norm_mode: StripNormMode::None,
        manual_step: args.h,
    };
    if let Some(v) = args.n1 {
        let d = options.d_override.take().unwrap_or(entry.default_strip.half_width());
        entry.default_strip = StripSpec::new(d)?.with_strip_norm(v)?;
        options.strip_norm_mode = StripNormMode::Declared;
        return Ok((entry, options));
    }
    options.strip_norm_mode = match args.strip_norm.as_str() {
        "auto" if args.d.is_none() && entry.declared_strip_norm().is_some() => StripNormMode::Declared,
        "auto" if args.rule == RuleTag::WOptimized && entry.has_complex_extension() => StripNormMode::Quadrature,
        "auto" => StripNormMode::None,
        other => other.parse()?,
    };
    Ok((entry, options))
}

fn prepared(function: &FunctionArgs, rule: &RuleArgs) -> Result<(RegistryEntry, StepOptions)> {
    prepare(lookup(&function.function, &parse_params(&function.params)?)?, rule)
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn interp(args: &InterpArgs) -> Result<()> {
    let (entry, options) = prepared(&args.function, &args.rule)?;
    let ctx = StepContext::new(&entry, args.rule.rule, &options)?;
    let (h, _) = ctx.step_and_envelope(&entry, args.n)?;
    let target = entry.target(Some(ctx.half_width))?;
    let plan = InterpolationPlan::new(args.n, h, args.rule.rule)?;
    let ip = sample(&target, &plan)?;
    let mut out = io::stdout().lock();
    match args.x {
        Some(x) => writeln!(out, "{}", num(ip.evaluate(x)))?,
        None => {
            for (j, x) in grid(&plan).into_iter().enumerate() {
                let t = (j as f64 - 2.0 * args.n as f64) * 0.5;
                writeln!(out, "{}\t{}", num(x), num(ip.evaluate_scaled(t)))?;
            }
        }
    }
    Ok(())
}

fn step_input(args: &StepArgs) -> Result<StepRuleInput> {
    Ok(StepRuleInput::new(DecaySpec::new(args.alpha, args.big_l)?, StripSpec::new(args.d)?, args.n))
}

fn stepsize(args: &StepArgs) -> Result<()> {
    let h = step_for_rule(args.rule, &step_input(args)?, args.n1, args.h)?;
    println!("{}", num(h));
    Ok(())
}

fn bound(args: &StepArgs) -> Result<()> {
    let input = step_input(args)?;
    let p = predicted_error(&input, args.rule, args.n1)?;
    let c = p.constant.map_or_else(|| "NA".to_string(), num);
    println!("h={} envelope={} c={}", num(p.h), num(p.envelope), c);
    Ok(())
}

fn n1(args: &N1Args) -> Result<()> {
    let entry = lookup(&args.function.function, &parse_params(&args.function.params)?)?;
    let est = strip_norm_detailed(&entry.complex_target(args.d)?, args.tol)?;
    println!("{}", num(est.value));
    Ok(())
}

fn converge(args: &ConvergeArgs) -> Result<()> {
    let (entry, options) = prepared(&args.function, &args.rule)?;
    let ladder = match (&args.ladder, args.full_ladder) {
        (Some(l), _) => l.clone(),
        (None, true) => FULL_LADDER.to_vec(),
        (None, false) => TABLE_LADDER.to_vec(),
    };
    let mut cfg = StudyConfig::new(entry.name, args.rule.rule, ladder);
    cfg.options = options;
    let rows = run_study_for(&entry, &cfg)?;
    write_rows_csv(&rows, open_out(&args.out)?)
}

fn profile(args: &ProfileArgs) -> Result<()> {
    let (entry, options) = prepared(&args.function, &args.rule)?;
    let resolution = args.resolution.unwrap_or(32 * args.n + 1);
    let prof = error_profile(&entry, args.rule.rule, args.n, resolution, &options)?;
    write_profile_tsv(&prof, open_out(&args.out)?)
}

fn reproduce(args: &ReproduceArgs) -> Result<bool> {
    let report = reproduce_table(args.table)?;
    println!("{report}");
    Ok(report.all_pass())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Interp(a) => interp(a)?,
        Command::Stepsize(a) => stepsize(a)?,
        Command::Bound(a) => bound(a)?,
        Command::N1(a) => n1(a)?,
        Command::Converge(a) => converge(a)?,
        Command::Profile(a) => profile(a)?,
        Command::Reproduce(a) => return reproduce(a),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error kind={} message={msg:?}", e.kind());
            ExitCode::from(1)
        }
    }
}
