use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use finmod::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&out.result) {
            Ok(()) => {
                eprintln!("{}", out.summary);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(value: &serde_json::Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value).context("serializing result")?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{text}").context("writing result")?;
    Ok(())
}
