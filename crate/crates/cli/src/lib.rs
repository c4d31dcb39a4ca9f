//! Command-line front end: argument parsing, command dispatch and output.

pub mod audit;
pub mod commands;
pub mod expr;
pub mod report;
pub mod reproduce;
pub mod spec;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Report;
use crate::spec::{parse_rule, parse_state, Command, Format, RunSpec, Scenario, Target};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "LUDERSGAP_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "ludersgap",
    version,
    about = "Sequential qutrit measurements: Lüders vs von Neumann updates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Correlators, K or beta values and correction terms at one point.
    Evaluate(ScenarioArgs),
    /// Vary one parameter over a range.
    Sweep {
        #[command(flatten)]
        args: ScenarioArgs,
        /// Parameter to vary (`g` moves g1 and g2 together).
        #[arg(long)]
        axis: String,
        /// Start of the range (default: parameter domain).
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        /// End of the range (default: parameter domain).
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Grid scan plus simplex refinement of one output.
    Maximize {
        #[command(flatten)]
        args: ScenarioArgs,
        /// k13, k23, k12 (lgi) or b31, b23, b12 (nci).
        #[arg(long)]
        target: String,
        /// Comma-separated parameters to optimize (default: g1,g2 or all nci parameters).
        #[arg(long, value_delimiter = ',')]
        vary: Vec<String>,
        /// Lattice points per dimension.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Regenerate a published table or figure data set.
    Reproduce {
        #[arg(value_enum)]
        target: TargetArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare closed-form expressions with simulation.
    Audit {
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TargetArg {
    Table1,
    Table2,
    Table4,
    Fig1,
    Fig2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub output: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Scenario selection and parameters. Numbers accept `pi`, `sqrt2` and
/// arithmetic, e.g. `-pi/3` or `1/sqrt2`.
#[derive(Args, Debug)]
pub struct ScenarioArgs {
    /// lgi or nci.
    #[arg(value_name = "SCENARIO")]
    pub scenario_pos: Option<String>,
    #[arg(long)]
    pub scenario: Option<String>,
    /// luders or vn.
    #[arg(long)]
    pub rule: Option<String>,
    /// Initial state for lgi: 001 or 100.
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lam: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub del: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn target_of(t: TargetArg) -> Target {
    match t {
        TargetArg::Table1 => Target::Table1,
        TargetArg::Table2 => Target::Table2,
        TargetArg::Table4 => Target::Table4,
        TargetArg::Fig1 => Target::Fig1,
        TargetArg::Fig2 => Target::Fig2,
    }
}

fn parse_opt(name: &str, v: &Option<String>) -> Result<Option<f64>> {
    v.as_deref()
        .map(|s| expr::parse_value(s).with_context(|| format!("invalid value for --{name}")))
        .transpose()
}

impl ScenarioArgs {
    fn apply(&self, spec: &mut RunSpec) -> Result<()> {
        let scenario = match (&self.scenario_pos, &self.scenario) {
            (Some(a), Some(b)) if a != b => bail!("conflicting scenarios `{a}` and `{b}`"),
            (Some(s), _) | (None, Some(s)) => Some(Scenario::parse(s)?),
            (None, None) => None,
        };
        spec.scenario = scenario;
        spec.rule = self.rule.as_deref().map(parse_rule).transpose()?;
        spec.state = self.state.as_deref().map(parse_state).transpose()?;
        let named = [
            ("g1", &self.g1),
            ("g2", &self.g2),
            ("xi", &self.xi),
            ("theta", &self.theta),
            ("phi", &self.phi),
            ("eps", &self.eps),
            ("lam", &self.lam),
            ("del", &self.del),
        ];
        for (name, v) in named {
            if let Some(x) = parse_opt(name, v)? {
                spec.params.insert(name.into(), x);
            }
        }
        spec.output = format_of(self.out.output);
        spec.output_path = self.out.out.clone();
        Ok(())
    }
}

impl Cli {
    pub fn into_spec(self) -> Result<RunSpec> {
        let spec = match self.command {
            Cmd::Evaluate(args) => {
                let mut s = RunSpec::new(Command::Evaluate);
                args.apply(&mut s)?;
                s
            }
            Cmd::Sweep {
                args,
                axis,
                from,
                to,
                steps,
            } => {
                let mut s = RunSpec::new(Command::Sweep {
                    axis,
                    from: parse_opt("from", &from)?,
                    to: parse_opt("to", &to)?,
                    steps,
                });
                args.apply(&mut s)?;
                s
            }
            Cmd::Maximize {
                args,
                target,
                vary,
                points,
            } => {
                let mut s = RunSpec::new(Command::Maximize {
                    target,
                    vary,
                    points,
                });
                args.apply(&mut s)?;
                s
            }
            Cmd::Reproduce { target, out } => {
                let mut s = RunSpec::new(Command::Reproduce(target_of(target)));
                s.output = format_of(out.output);
                s.output_path = out.out;
                s
            }
            Cmd::Audit { out } => {
                let mut s = RunSpec::new(Command::Audit);
                s.output = format_of(out.output);
                s.output_path = out.out;
                s
            }
        };
        Ok(spec)
    }
}

/// Execute a spec and return its result table.
pub fn run(spec: &RunSpec) -> Result<Report> {
    match &spec.command {
        Command::Evaluate => commands::evaluate(spec),
        Command::Sweep {
            axis,
            from,
            to,
            steps,
        } => commands::sweep(spec, axis, *from, *to, *steps),
        Command::Maximize {
            target,
            vary,
            points,
        } => commands::maximize_cmd(spec, target, vary, *points),
        Command::Reproduce(t) => reproduce::run(*t),
        Command::Audit => audit::run(),
    }
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(report.to_csv()),
        Format::Json => report.to_json(),
    }
}

/// Write the rendered report to the spec's output path or stdout.
pub fn emit(report: &Report, spec: &RunSpec) -> Result<()> {
    let text = render(report, spec.output)?;
    match &spec.output_path {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Thread cap from the environment, if set to a positive integer.
pub fn thread_limit() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => bail!("{THREADS_ENV} must be a positive integer, got `{v}`"),
            Ok(n) => Ok(Some(n)),
        },
        Err(_) => Ok(None),
    }
}
