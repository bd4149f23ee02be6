use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::Parser;

use monolin_cli::{run_command, Cli, CliError, Report};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.command.common().json;
    let timeout = cli.command.common().timeout;

    let result = match timeout {
        None => run_command(&cli.command),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            let command = cli.command;
            std::thread::spawn(move || {
                let _ = tx.send(run_command(&command));
            });
            rx.recv_timeout(Duration::from_secs(secs))
                .unwrap_or(Err(CliError::Timeout(secs)))
        }
    };

    match result {
        Ok(Report { json: report, text }) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))
            } else {
                write!(out, "{text}")
            };
            ExitCode::from(monolin_cli::EXIT_OK as u8)
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({"error": e.to_string(), "exit_code": e.exit_code()}));
            }
            eprintln!("monolin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
