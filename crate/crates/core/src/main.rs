use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use evident::decision::{decide, singleton_intervals, DEFAULT_CONFLICT_THRESHOLD};
use evident::routing::{decompose, parse_query, parse_sources, poll, shortlisted, DEFAULT_POLL_THRESHOLD};
use evident::{combine_all, emit_trace, load_masses, load_scenario, run_scenario, Error, Result, TraceFormat};

#[derive(Debug, Parser)]
#[command(name = "evident", about = "Evidential reasoning: fuse evidence, replay sensor scenarios, route queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay a scenario file and print its trace.
    Run {
        scenario: PathBuf,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Window length in seconds.
        #[arg(long)]
        window: Option<f64>,
        /// Seconds between steps.
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        discount_rate: Option<f64>,
        #[arg(long)]
        conflict_threshold: Option<f64>,
        #[arg(long, default_value = "csv")]
        format: TraceFormat,
    },
    /// Combine every mass function in a file and print the result.
    Combine {
        masses: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CONFLICT_THRESHOLD)]
        conflict_threshold: f64,
    },
    /// Poll sources for a query and print the shortlist and route plan.
    Route {
        query: PathBuf,
        sources: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POLL_THRESHOLD)]
        threshold: f64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Run {
            scenario,
            out,
            window,
            step,
            discount_rate,
            conflict_threshold,
            format,
        } => {
            let s = load_scenario(&read(&scenario)?)?;
            let mut settings = s.settings();
            settings.window = window.unwrap_or(settings.window);
            settings.step = step.unwrap_or(settings.step);
            settings.discount_rate = discount_rate.unwrap_or(settings.discount_rate);
            settings.conflict_threshold = conflict_threshold.unwrap_or(settings.conflict_threshold);
            let s = s.with_settings(settings)?;
            let text = emit_trace(&run_scenario(&s)?, format)?;
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Combine {
            masses,
            conflict_threshold,
        } => {
            let (frame, masses) = load_masses(&read(&masses)?)?;
            let report = combine_all(&masses)?;
            let decision = decide(&report, conflict_threshold)?;
            println!("conflict: {:.6}", report.conflict);
            println!("mass:");
            for (p, m) in report.result.focals() {
                println!("  {}: {m:.6}", frame.describe(&p)?);
            }
            println!("intervals:");
            for (atom, iv) in singleton_intervals(&report.result) {
                println!("  {atom}: {iv}");
            }
            println!("decision: {}", decision.status);
        }
        Command::Route {
            query,
            sources,
            threshold,
        } => {
            let query = parse_query(&read(&query)?)?;
            let sources = parse_sources(&read(&sources)?)?;
            let polled = poll(&query, &sources, threshold)?;
            println!("query: {query}");
            println!("shortlist ({} of {} sources):", polled.len(), sources.len());
            for p in &polled {
                println!("  {}: {}", p.id, p.interval);
            }
            if polled.is_empty() {
                println!("plan: none");
                return Ok(());
            }
            let plan = decompose(&query, &shortlisted(&polled, &sources))?;
            println!("plan:");
            for a in &plan.assignments {
                println!("  {} -> {} (support {:.6})", a.fragment, a.source, a.support);
            }
            if !plan.unassigned.is_empty() {
                let rest: Vec<String> = plan.unassigned.iter().map(|q| q.to_string()).collect();
                println!("unassigned: {}", rest.join(", "));
            }
            println!("total support: {:.6}", plan.total_support);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
