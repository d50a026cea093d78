mod cli;
mod commands;
mod record;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;

use cli::{Cli, Command};
use commands::{compute, render, Status};
use record::{RunRecord, RUN_RECORD_SCHEMA};

const EXIT_ERROR: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HORACE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .context("HORACE_THREADS must be a number")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn replay(paths: &[std::path::PathBuf]) -> Result<u8> {
    let files = record::collect(paths)?;
    let mut mismatches = 0;
    for path in &files {
        let rec = RunRecord::load(path)?;
        let argv = std::iter::once("horace".to_string()).chain(rec.argv.iter().cloned());
        let mut cli =
            Cli::try_parse_from(argv).with_context(|| format!("{}: bad argv", path.display()))?;
        if let Some(p) = rec.prime {
            cli.command.set_prime(p);
        }
        let outcome = compute(&cli.command)?;
        let again = serde_json::to_string(&outcome.payload)?;
        if again == serde_json::to_string(&rec.payload)? {
            println!("ok {}", path.display());
        } else {
            mismatches += 1;
            println!("MISMATCH {}", path.display());
        }
    }
    println!("{} records, {mismatches} mismatches", files.len());
    Ok(if mismatches == 0 { 0 } else { EXIT_NEGATIVE })
}

fn run(cli: Cli) -> Result<u8> {
    init_threads()?;
    if let Command::Replay(args) = &cli.command {
        return replay(&args.paths);
    }
    let start = Instant::now();
    let outcome = compute(&cli.command)?;
    let elapsed = start.elapsed();

    if cli.json {
        println!("{}", serde_json::to_string_pretty(&outcome.payload)?);
    } else {
        print!("{}", render(&outcome.payload));
    }
    if let (Command::Certify(args), commands::Payload::Certificate(cert)) =
        (&cli.command, &outcome.payload)
    {
        if let Some(out) = &args.out {
            record::write_atomic(out, &serde_json::to_string_pretty(cert)?)?;
            eprintln!("certificate: {}", out.display());
        }
    }
    if !cli.no_record {
        let rec = RunRecord {
            schema: RUN_RECORD_SCHEMA.to_string(),
            command: cli.command.name().to_string(),
            argv: std::env::args().skip(1).collect(),
            seed: outcome.seed,
            prime: outcome.prime,
            wall_clock_ms: elapsed.as_millis() as u64,
            payload: outcome.payload,
        };
        let path = record::save(&cli.results_dir, &rec)?;
        eprintln!("record: {}", path.display());
    }
    Ok(match outcome.status {
        Status::Positive => 0,
        Status::Negative => EXIT_NEGATIVE,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
