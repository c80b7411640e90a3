mod args;
mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::Output;
use output::{emit_report, write_text, InputError, Meta};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn init_threads() -> Result<(), InputError> {
    let Ok(v) = std::env::var("RKT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        InputError::Invalid(format!("RKT_THREADS must be a positive integer, got `{v}`"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| InputError::Invalid(e.to_string()))
}

fn run(cli: &Cli) -> Result<bool, InputError> {
    init_threads()?;
    let start = Instant::now();
    let out = match &cli.command {
        Command::GenSymbol(a) => commands::gen_symbol(a),
        Command::VerifyRkt(a) => commands::verify(a),
        Command::LpCheck(a) => commands::lp(a),
        Command::GreenCheck(a) => commands::green(a),
        Command::UchiyamaCheck(a) => commands::uchiyama(a),
        Command::ProofCheck(a) => commands::proof(a),
        Command::SearchExtremal(a) => commands::search_extremal(a),
        Command::EmbedTest(a) => commands::embed(a),
        Command::CarlesonCheck(a) => commands::carleson(a),
    }?;
    match out {
        Output::Raw(text) => {
            write_text(cli.out.as_deref(), &text)?;
            Ok(true)
        }
        Output::Report { report, pass } => {
            let meta = Meta {
                tool: "rkt",
                version: env!("CARGO_PKG_VERSION"),
                core_version: rkt_core::VERSION,
                subcommand: cli.command.name(),
                seed: cli.command.seed(),
                threads: rayon::current_num_threads(),
                config: serde_json::to_value(&cli.command).expect("arguments serialize"),
                wall_time_s: (!cli.deterministic).then(|| start.elapsed().as_secs_f64()),
            };
            emit_report(cli.out.as_deref(), &meta, &report)?;
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("rkt: check failed");
            ExitCode::from(EXIT_FAILED)
        }
        Err(e) => {
            eprintln!("rkt: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
