use std::process::ExitCode;

use clap::Parser;
use natext_cli::commands::{execute, Cli};
use natext_cli::config::RunConfig;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> anyhow::Result<i32> {
        let mut cfg = RunConfig::from_env()?;
        cfg.out = cli.out.clone();
        let out = execute(&cli, &cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out.code)
    };
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
