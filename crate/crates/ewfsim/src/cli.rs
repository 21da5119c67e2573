//! Command-line front end: run protocols, check cross-perspective
//! consistency, diff traces, and list built-in scenarios.
//!
//! Exit codes: 0 ok, 1 parse error, 2 step error, 3 contradiction found,
//! 64 usage error. In JSON mode diagnostics go to stderr only.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::event::Event;
use crate::protocol::{
    contradiction_report, parse_event, parse_protocol, render_diff, render_report, render_trace,
    run_named, trace_to_json, ProtocolSpec, RunError, Trace,
};
use crate::scenarios;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_STEP: u8 = 2;
pub const EXIT_CONTRADICTION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "ewfsim",
    version,
    about = "Exact simulator for multi-agent quantum measurement protocols"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a protocol and print the exact per-step trace
    Run(RunArgs),
    /// Compare perspectives for cross-perspective contradictions
    Check(CheckArgs),
    /// Step-aligned diff of two perspectives' traces
    TraceDiff(DiffArgs),
    /// List the built-in scenarios
    Scenarios,
}

#[derive(Args)]
struct Source {
    /// Built-in scenario name (see `scenarios`)
    #[arg(long, conflicts_with = "file")]
    scenario: Option<String>,
    /// Protocol file path
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// Perspective to run, or "all"
    #[arg(long, default_value = "all")]
    perspective: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Echo floating-point approximations next to exact values
    #[arg(long)]
    float: bool,
    /// Write output to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    source: Source,
    /// Comma-separated perspective names (default: all declared)
    #[arg(long, value_delimiter = ',')]
    perspectives: Vec<String>,
    /// Event to compare across perspectives (repeatable; default: w_l=ok, w_l=f)
    #[arg(long = "event")]
    events: Vec<String>,
    /// Common postselection applied to every final state (default: wbar=ok
    /// when those names resolve)
    #[arg(long, conflicts_with = "no_postselect")]
    postselect: Option<String>,
    /// Disable the default postselection
    #[arg(long)]
    no_postselect: bool,
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct DiffArgs {
    #[command(flatten)]
    source: Source,
    /// First perspective
    a: String,
    /// Second perspective
    b: String,
    #[arg(long)]
    float: bool,
}

/// A diagnostic plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        let code = match &e {
            RunError::UnknownPerspective(_) | RunError::TooFewPerspectives => EXIT_USAGE,
            _ => EXIT_STEP,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load_spec(source: &Source) -> Result<ProtocolSpec, Failure> {
    let text = match (&source.scenario, &source.file) {
        (Some(name), None) => scenarios::builtin(name)
            .ok_or_else(|| Failure::usage(format!("unknown scenario `{}`", name)))?
            .text
            .to_string(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("reading {}: {}", path.display(), e)))?,
        _ => {
            return Err(Failure::usage(
                "exactly one of --scenario or --file is required",
            ));
        }
    };
    parse_protocol(&text).map_err(|e| Failure::parse(e.to_string()))
}

fn run_perspectives(spec: &ProtocolSpec, selector: &str) -> Result<Vec<Trace>, Failure> {
    if selector == "all" {
        spec.perspectives
            .iter()
            .map(|p| run_named(spec, &p.name).map_err(Failure::from))
            .collect()
    } else {
        Ok(vec![run_named(spec, selector)?])
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_STEP,
            message: format!("writing {}: {}", path.display(), e),
        }),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<u8, Failure> {
    let spec = load_spec(&args.source)?;
    let traces = run_perspectives(&spec, &args.perspective)?;
    let text = match args.format {
        Format::Text => {
            let mut out = String::new();
            for (i, trace) in traces.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&render_trace(trace, args.float));
            }
            out
        }
        Format::Json => {
            let mut text = if traces.len() == 1 {
                trace_to_json(&traces[0]).to_pretty()
            } else {
                let all: Vec<_> = traces.iter().map(trace_to_json).collect();
                serde_json::to_string_pretty(&all).expect("trace serialization cannot fail")
            };
            text.push('\n');
            text
        }
    };
    emit(&args.output, &text)?;
    Ok(EXIT_OK)
}

fn resolve_events(spec: &ProtocolSpec, args: &CheckArgs) -> Result<Vec<Event>, Failure> {
    if args.events.is_empty() {
        let defaults: Result<Vec<Event>, _> = ["w_l=ok", "w_l=f"]
            .iter()
            .map(|t| parse_event(spec, t))
            .collect();
        defaults.map_err(|_| {
            Failure::usage(
                "default events `w_l=ok`, `w_l=f` do not resolve in this protocol; \
                 pass --event",
            )
        })
    } else {
        args.events
            .iter()
            .map(|t| parse_event(spec, t).map_err(|e| Failure::parse(e.to_string())))
            .collect()
    }
}

fn resolve_postselect(spec: &ProtocolSpec, args: &CheckArgs) -> Result<Option<Event>, Failure> {
    if args.no_postselect {
        return Ok(None);
    }
    match &args.postselect {
        Some(text) => parse_event(spec, text)
            .map(Some)
            .map_err(|e| Failure::parse(e.to_string())),
        None => Ok(parse_event(spec, "wbar=ok").ok()),
    }
}

fn cmd_check(args: &CheckArgs) -> Result<u8, Failure> {
    let spec = load_spec(&args.source)?;
    let perspectives: Vec<_> = if args.perspectives.is_empty() {
        spec.perspectives.iter().collect()
    } else {
        args.perspectives
            .iter()
            .map(|name| {
                spec.perspective(name)
                    .ok_or_else(|| Failure::usage(format!("unknown perspective `{}`", name)))
            })
            .collect::<Result<_, _>>()?
    };
    let events = resolve_events(&spec, args)?;
    let postselect = resolve_postselect(&spec, args)?;
    let report = contradiction_report(&spec, &perspectives, &events, postselect.as_ref())?;
    print!("{}", render_report(&spec.system, &report, args.float));
    Ok(if report.has_contradiction() {
        EXIT_CONTRADICTION
    } else {
        EXIT_OK
    })
}

fn cmd_trace_diff(args: &DiffArgs) -> Result<u8, Failure> {
    let spec = load_spec(&args.source)?;
    let a = run_named(&spec, &args.a)?;
    let b = run_named(&spec, &args.b)?;
    print!("{}", render_diff(&a, &b));
    Ok(EXIT_OK)
}

fn cmd_scenarios() -> u8 {
    for s in scenarios::SCENARIOS {
        println!("{:8} {}", s.name, s.description);
    }
    EXIT_OK
}

/// Parses argv and dispatches; returns the process exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{}", e);
            return ExitCode::from(EXIT_OK);
        }
        Err(e) => {
            eprint!("{}", e);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Check(args) => cmd_check(args),
        Command::TraceDiff(args) => cmd_trace_diff(args),
        Command::Scenarios => Ok(cmd_scenarios()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
