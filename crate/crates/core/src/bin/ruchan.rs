// Copyright 2026 The ruchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ruchan::cli::{self, CliError, CommandOutput};
use ruchan::{io, SearchConfig, Tolerances};

#[derive(Parser)]
#[command(name = "ruchan", version, about = "Random-unitary decompositions of quantum channels")]
struct Args {
    /// Equality / positivity tolerance (defaults to 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Choi rank, unitality and the cardinality window.
    Analyze { channel: String },
    /// Find a random-unitary decomposition.
    Decompose {
        channel: String,
        #[arg(long, default_value_t = 20)]
        max_restarts: usize,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        /// Comma-separated cardinalities to try, e.g. `2,3,4`.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<usize>>,
    },
    /// Reduce a dice-condition POVM to at most rank² unitaries.
    PovmReduce { channel: String, povm: String },
    /// Simulate environment-assisted correction.
    SimulateCorrect {
        channel: String,
        decomposition: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Generate a random-unitary channel and its decomposition.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let result = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map(|_| buf)
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|e| CliError { exit_code: cli::EXIT_MALFORMED, message: format!("{path}: {e}") })
}

fn run(args: &Args) -> Result<CommandOutput, CliError> {
    let mut tol = Tolerances::default();
    if let Some(eps) = args.tol {
        tol = tol.with_eq(eps);
    }
    tol.validate()?;
    match &args.command {
        Command::Analyze { channel } => cli::analyze(&read_input(channel)?, &tol),
        Command::Decompose { channel, max_restarts, max_iters, schedule } => {
            let cfg = SearchConfig {
                schedule: schedule.clone(),
                restarts: *max_restarts,
                max_iters: *max_iters,
                seed: args.seed,
                ..SearchConfig::default()
            };
            cli::decompose(&read_input(channel)?, &cfg, &tol)
        }
        Command::PovmReduce { channel, povm } => cli::povm_reduce(&read_input(channel)?, &read_input(povm)?, &tol),
        Command::SimulateCorrect { channel, decomposition, trials } => {
            cli::simulate(&read_input(channel)?, &read_input(decomposition)?, *trials, args.seed, &tol)
        }
        Command::Gen { d, k } => cli::gen(*d, *k, args.seed),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(output) => {
            let text = io::to_json_string(&output.value);
            let written = match &args.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(cli::EXIT_MALFORMED as u8);
            }
            ExitCode::from(output.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code as u8)
        }
    }
}
