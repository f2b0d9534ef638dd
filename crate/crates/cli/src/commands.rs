use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmg_core::channels::ChannelKind;
use qmg_core::formulas::{compare, overlap_check, FormulaId, Verdict};
use qmg_core::protocol::{Axis, GameConfig, StrategyTriple, SweepPoint};
use serde::Serialize;

use crate::best_response;
use crate::cache::ChannelCache;
use crate::compare::{compare_csv, compare_json, compare_summary, overlap_csv, overlap_json};
use crate::error::{CliError, CliResult, ExitStatus};
use crate::output::{emit, parse_angle, Format};
use crate::sweep::{figure, render_csv, render_json, run_sweep, SweepRequest, DEFAULT_POINTS};
use crate::validate::{run_validation, ValidateOptions};

#[derive(Debug, Parser)]
#[command(
    name = "qmg",
    version,
    about = "Four-player quantum Minority game under correlated noise"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equilibrium payoffs of all four players along one parameter axis.
    Sweep(SweepArgs),
    /// Run the invariant suite; exit 1 if any check fails.
    Validate(ValidateArgs),
    /// Compare a reference closed-form payoff against the simulator.
    Compare(CompareArgs),
    /// Depolarizing versus bit-phase-flip payoffs at full memory.
    Overlap(OverlapArgs),
    /// Exhaustive lattice search for one player's best reply.
    BestResponse(BestResponseArgs),
    /// Payoffs at a single parameter point, as JSON.
    Payoff(PayoffArgs),
}

fn channel_arg(s: &str) -> Result<ChannelKind, String> {
    s.parse()
        .map_err(|_| format!("unknown channel `{s}` (ad, dep, bf, pf, bpf)"))
}

fn unit_arg(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("`{s}` is outside [0, 1]"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    P,
    Mu,
    Gamma,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::P => Axis::P,
            AxisArg::Mu => Axis::Mu,
            AxisArg::Gamma => Axis::Gamma,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Channel tag, or `all` for the five channels in figure order.
    #[arg(long, default_value = "all")]
    pub channel: String,
    #[arg(long, value_enum, required_unless_present = "figure")]
    pub vary: Option<AxisArg>,
    /// Preset parameterisation 1..=7 (see README).
    #[arg(long, conflicts_with = "vary", value_parser = clap::value_parser!(u8).range(1..=7))]
    pub figure: Option<u8>,
    #[arg(long, default_value = "0", value_parser = unit_arg)]
    pub p: f64,
    #[arg(long, default_value = "0", value_parser = unit_arg)]
    pub mu: f64,
    #[arg(long, default_value = "pi/2", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Lattice points per axis for the equilibrium deviation check.
    #[arg(long, default_value_t = 17)]
    pub grid: usize,
    #[arg(long, hide = true)]
    pub inject_broken_channel: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_parser = channel_arg)]
    pub channel: ChannelKind,
    #[arg(long, default_value_t = 11)]
    pub p_points: usize,
    #[arg(long, default_value_t = 5)]
    pub mu_points: usize,
    #[arg(long, default_value = "pi/2", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OverlapArgs {
    #[arg(long, default_value = "pi/2", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub p_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Others {
    /// Everyone else plays the equilibrium move.
    Ne,
    /// Everyone else plays the classical identity move.
    Stay,
    /// Everyone else plays the classical flip move.
    Flip,
}

#[derive(Debug, Args)]
pub struct BestResponseArgs {
    #[arg(long, default_value = "pf", value_parser = channel_arg)]
    pub channel: ChannelKind,
    #[arg(long, default_value = "0", value_parser = unit_arg)]
    pub p: f64,
    #[arg(long, default_value = "0", value_parser = unit_arg)]
    pub mu: f64,
    #[arg(long, default_value = "pi/2", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 17)]
    pub grid: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub player: u8,
    #[arg(long, value_enum, default_value_t = Others::Ne)]
    pub others: Others,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PayoffArgs {
    #[arg(long, value_parser = channel_arg)]
    pub channel: ChannelKind,
    #[arg(long, default_value = "0", value_parser = unit_arg)]
    pub p: f64,
    #[arg(long, default_value = "0", value_parser = unit_arg)]
    pub mu: f64,
    #[arg(long, default_value = "pi/2", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: f64,
    /// `theta,alpha,beta` for players 1..4 in order; give it four times or not at all.
    #[arg(long = "strategy", value_parser = parse_strategy, allow_hyphen_values = true)]
    pub strategies: Vec<StrategyTriple>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_strategy(s: &str) -> Result<StrategyTriple, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [t, a, b] = parts.as_slice() else {
        return Err(format!("strategy `{s}` must be theta,alpha,beta"));
    };
    StrategyTriple::new(parse_angle(t)?, parse_angle(a)?, parse_angle(b)?)
        .map_err(|e| e.to_string())
}

fn channel_list(s: &str) -> CliResult<Vec<ChannelKind>> {
    if s == "all" {
        return Ok(ChannelKind::ALL.to_vec());
    }
    channel_arg(s).map(|k| vec![k]).map_err(CliError::Usage)
}

pub fn run(cli: Cli) -> CliResult<ExitStatus> {
    match cli.command {
        Command::Sweep(a) => cmd_sweep(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Overlap(a) => cmd_overlap(a),
        Command::BestResponse(a) => cmd_best_response(a),
        Command::Payoff(a) => cmd_payoff(a),
    }
}

pub fn sweep_request(a: &SweepArgs) -> CliResult<SweepRequest> {
    let mut req = match (a.figure, a.vary) {
        (Some(n), _) => figure(n).ok_or_else(|| CliError::Usage(format!("no figure {n}")))?,
        (None, Some(axis)) => SweepRequest {
            channels: Vec::new(),
            axis: axis.into(),
            fixed: SweepPoint {
                p: a.p,
                mu: a.mu,
                gamma: a.gamma,
            },
            points: DEFAULT_POINTS,
        },
        (None, None) => {
            return Err(CliError::Usage(
                "either --vary or --figure is required".into(),
            ))
        }
    };
    req.channels = channel_list(&a.channel)?;
    if let Some(n) = a.points {
        if n < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        req.points = n;
    }
    if !(0.0..=FRAC_PI_2).contains(&req.fixed.gamma) {
        return Err(CliError::Usage("--gamma must lie in [0, pi/2]".into()));
    }
    Ok(req)
}

fn cmd_sweep(a: SweepArgs) -> CliResult<ExitStatus> {
    let req = sweep_request(&a)?;
    let rows = run_sweep(&req, &ChannelCache::new())?;
    let body = match a.output.format {
        Format::Csv => render_csv(&rows),
        Format::Json => render_json(&rows)?,
    };
    emit(a.output.out.as_deref(), body.as_bytes())?;
    Ok(ExitStatus::Success)
}

fn cmd_validate(a: ValidateArgs) -> CliResult<ExitStatus> {
    if a.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let opts = ValidateOptions {
        inject_broken_channel: a.inject_broken_channel,
        deviation_grid: a.grid,
    };
    let checks = run_validation(&opts)?;
    let mut out = std::io::stdout().lock();
    let io = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    for c in &checks {
        writeln!(out, "{c}").map_err(io)?;
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    if failed.is_empty() {
        writeln!(out, "all {} checks passed", checks.len()).map_err(io)?;
        Ok(ExitStatus::Success)
    } else {
        writeln!(out, "failed: {}", failed.join(", ")).map_err(io)?;
        Ok(ExitStatus::ValidationFailure)
    }
}

fn cmd_compare(a: CompareArgs) -> CliResult<ExitStatus> {
    if a.p_points < 2 || a.mu_points < 2 {
        return Err(CliError::Usage("grid sizes must be at least 2".into()));
    }
    let id = FormulaId::for_channel(a.channel);
    let report = compare(id, a.p_points, a.mu_points, a.gamma)?;
    let body = match a.output.format {
        Format::Csv => compare_csv(&report),
        Format::Json => compare_json(&report)?,
    };
    emit(a.output.out.as_deref(), body.as_bytes())?;
    eprintln!("{}", compare_summary(&report));
    if id == FormulaId::PhaseFlip && report.verdict == Verdict::Inconsistent {
        return Ok(ExitStatus::ValidationFailure);
    }
    Ok(ExitStatus::Success)
}

fn cmd_overlap(a: OverlapArgs) -> CliResult<ExitStatus> {
    if a.p_points < 2 {
        return Err(CliError::Usage("--p-points must be at least 2".into()));
    }
    let report = overlap_check(a.gamma, a.p_points)?;
    let body = match a.output.format {
        Format::Csv => overlap_csv(&report),
        Format::Json => overlap_json(&report)?,
    };
    emit(a.output.out.as_deref(), body.as_bytes())?;
    eprintln!(
        "dep vs bpf at mu=1: max |difference| = {:.6e}",
        report.max_diff
    );
    Ok(ExitStatus::Success)
}

fn cmd_best_response(a: BestResponseArgs) -> CliResult<ExitStatus> {
    if a.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let mut cfg = GameConfig::nash(a.channel, a.p, a.mu, a.gamma)?;
    let others = match a.others {
        Others::Ne => None,
        Others::Stay => Some(StrategyTriple::classical_stay()),
        Others::Flip => Some(StrategyTriple::classical_flip()),
    };
    if let Some(s) = others {
        cfg.strategies = [s; 4];
    }
    let report = best_response::report(&cfg, a.player as usize, a.grid)?;
    let body = serde_json::to_string(&report)? + "\n";
    emit(a.out.as_deref(), body.as_bytes())?;
    Ok(ExitStatus::Success)
}

#[derive(Serialize)]
struct PayoffJson {
    channel: &'static str,
    p: f64,
    mu: f64,
    gamma: f64,
    payoff_1: f64,
    payoff_2: f64,
    payoff_3: f64,
    payoff_4: f64,
}

fn cmd_payoff(a: PayoffArgs) -> CliResult<ExitStatus> {
    let mut cfg = GameConfig::nash(a.channel, a.p, a.mu, a.gamma)?;
    match a.strategies.len() {
        0 => {}
        4 => cfg.strategies.copy_from_slice(&a.strategies),
        n => {
            return Err(CliError::Usage(format!(
                "--strategy given {n} times; expected 0 or 4"
            )))
        }
    }
    let pay = qmg_core::run_game(&cfg)?.payoffs;
    let doc = PayoffJson {
        channel: a.channel.tag(),
        p: a.p,
        mu: a.mu,
        gamma: a.gamma,
        payoff_1: pay.player(1),
        payoff_2: pay.player(2),
        payoff_3: pay.player(3),
        payoff_4: pay.player(4),
    };
    emit(
        a.out.as_deref(),
        (serde_json::to_string(&doc)? + "\n").as_bytes(),
    )?;
    Ok(ExitStatus::Success)
}
