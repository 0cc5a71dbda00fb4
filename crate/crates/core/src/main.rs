use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use isosurf::cli::{run, Command, Mode, Request};
use isosurf::rng::DEFAULT_SEED;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Construct,
    Lift,
    Decompose,
    Normalize,
    ClassifyMap,
    DualConic,
    Topview,
    Envelope,
    Verify,
    RenderSvg,
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// Surfaces with two families of parabolas or isotropic circles.
///
/// Prints a JSON report on stdout (or writes it to --out). Exit code 0 on
/// success, 1 on a domain error, 2 on malformed input.
#[derive(Debug, Parser)]
#[command(name = "isosurf", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Input path, `-` for stdin, or inline JSON; for selftest, `smoke` or `full`.
    input: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Write SVG output here (envelope, render-svg, topview).
    #[arg(long)]
    svg: Option<String>,
}

fn write_to(path: &str, text: &str) -> Result<(), String> {
    if path == "-" {
        return std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string());
    }
    std::fs::write(path, text).map_err(|e| format!("{path}: {e}"))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let name = args.command.to_possible_value().expect("not skipped").get_name().to_string();
    let command = Command::from_name(&name).expect("every subcommand maps to a command");
    let req = Request {
        command,
        input: args.input,
        mode: match args.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        },
        tol: args.tol,
        seed: args.seed,
    };
    let report = run(&req);
    if let (Some(path), Some(svg)) = (&args.svg, &report.svg) {
        if let Err(e) = write_to(path, svg) {
            eprintln!("isosurf: {e}");
            return ExitCode::from(2);
        }
    }
    if let Err(e) = write_to(args.out.as_deref().unwrap_or("-"), &report.to_text()) {
        eprintln!("isosurf: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
