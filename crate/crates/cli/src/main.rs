use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dsp_cli::{run, Command, OutputFormat, RunConfig};

/// Derived series and finite covers of finitely presented groups.
#[derive(Parser, Debug)]
#[command(name = "dsp", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Presentation file.
    file: PathBuf,
    #[arg(long, default_value_t = 8, value_parser = positive)]
    max_depth: usize,
    #[arg(long, default_value_t = 100_000, value_parser = positive)]
    max_cosets: usize,
    #[arg(long, default_value_t = 6, value_parser = positive)]
    max_index: usize,
    #[arg(long, default_value_t = 10_000_000, value_parser = positive)]
    letter_budget: usize,
    #[arg(long, default_value_t = 10_000, value_parser = positive)]
    torsion_cap: usize,
    /// Search nodes allowed in the low-index backtracker.
    #[arg(long, default_value_t = 1_000_000, value_parser = positive)]
    node_budget: usize,
    /// Covers built by galois-audit.
    #[arg(long, default_value_t = 10_000, value_parser = positive)]
    audit_budget: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".to_string()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    // argument errors share the input-error status; 2 is reserved for budgets
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let config = RunConfig {
        command: args.command,
        input_path: args.file,
        max_depth: args.max_depth,
        max_cosets: args.max_cosets,
        max_index: args.max_index,
        letter_budget: args.letter_budget,
        torsion_cap: args.torsion_cap,
        node_budget: args.node_budget,
        audit_budget: args.audit_budget,
        output_format: args.format,
    };
    let result = run(&config);
    for m in &result.messages {
        eprintln!("{m}");
    }
    if let Some(out) = result.render(config.output_format) {
        print!("{out}");
    }
    ExitCode::from(result.status as u8)
}
