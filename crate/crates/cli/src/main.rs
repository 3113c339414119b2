use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use gsb_cli::{run, Command, Options, Report};

#[derive(Parser)]
#[command(name = "gsb", version, about = "Gröbner-Shirshov bases, Schreier extensions and HNN extension checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete a presentation to a Gröbner-Shirshov basis.
    Complete(Args),
    /// Normal forms of words given with --word.
    Nf(Args),
    /// Irreducible words up to --max-len.
    Irr(Args),
    /// Check concrete Schreier extension data.
    CheckSchreier(Args),
    /// Derive the symbolic extension conditions of a presentation.
    Derive(Args),
    /// Enumerate every extension of the kernel by the presented group.
    Enumerate(Args),
    /// Check extension data over an HNN group.
    CheckHnn(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Input file in the stanza format.
    file: PathBuf,
    #[arg(long)]
    max_rules: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
    /// Sampled contexts per rule or composition.
    #[arg(long)]
    samples: Option<usize>,
    /// Longest sampled context word.
    #[arg(long)]
    context_len: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Bound on enumeration candidates or sampled evaluations.
    #[arg(long)]
    guard: Option<u128>,
    /// A word to normalize (repeatable).
    #[arg(long = "word")]
    words: Vec<String>,
    /// Compare enumeration with the brute-force oracle.
    #[arg(long)]
    cross_check: bool,
    /// Drop one enumerated extension before the cross-check.
    #[arg(long)]
    inject_fault: bool,
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Complete(a) => (Command::Complete, a),
        Cmd::Nf(a) => (Command::Nf, a),
        Cmd::Irr(a) => (Command::Irr, a),
        Cmd::CheckSchreier(a) => (Command::CheckSchreier, a),
        Cmd::Derive(a) => (Command::Derive, a),
        Cmd::Enumerate(a) => (Command::Enumerate, a),
        Cmd::CheckHnn(a) => (Command::CheckHnn, a),
    };
    let options = Options {
        max_rules: args.max_rules,
        max_degree: args.max_degree,
        max_steps: args.max_steps,
        max_len: args.max_len,
        samples: args.samples,
        context_len: args.context_len,
        seed: args.seed,
        guard: args.guard,
        words: args.words,
        cross_check: args.cross_check,
        inject_fault: args.inject_fault,
    };
    let start = Instant::now();
    let result = fs::read_to_string(&args.file)
        .map_err(|e| gsb_cli::CliError::Input(format!("{}: {e}", args.file.display())))
        .and_then(|text| run(command, &text, &options));
    let report: Report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return ExitCode::from(e.verdict().exit_code());
        }
    };
    let json_to_stdout = args.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    let mut out = io::stdout().lock();
    // A closed pipe only loses output; the exit code still reports the verdict.
    if !json_to_stdout {
        let _ = write!(out, "{}", report.render_text());
        let _ = writeln!(out, "  time: {} ms", start.elapsed().as_millis());
    }
    if let Some(path) = &args.json {
        let json = report.to_json();
        if path.as_os_str() == "-" {
            let _ = writeln!(out, "{json}");
        } else if let Err(e) = fs::write(path, json + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.verdict.exit_code())
}
