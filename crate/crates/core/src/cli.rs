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

//! Command implementations behind the `ruchan` binary.
//!
//! Each command takes file contents and returns the JSON to print together
//! with the process exit code:
//!
//! | code | meaning                                         |
//! |------|-------------------------------------------------|
//! | 0    | success                                         |
//! | 2    | malformed input or arguments                    |
//! | 3    | input violates a channel / decomposition invariant |
//! | 4    | decomposition search found nothing              |
//! | 5    | channel is not unital                           |
//! | 6    | POVM fails the dice condition                   |

use serde_json::{json, Value};

use crate::correction::{haar_pure_states, simulate_correction};
use crate::error::Error;
use crate::io;
use crate::povm::check_dice_condition;
use crate::ru::{
    entropy_and_bounds, generate_random_ru_channel, pauli_decompose_qubit, reduce_cardinality, search_decomposition,
    SearchConfig, SearchReport, SearchStatus,
};
use crate::tolerance::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_NOT_FOUND: i32 = 4;
pub const EXIT_NOT_UNITAL: i32 = 5;
pub const EXIT_DICE: i32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub value: Value,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(value: Value) -> Self {
        CommandOutput { value, exit_code: EXIT_OK }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::Parse(_) | Error::OutOfRange(_) => EXIT_MALFORMED,
            _ => EXIT_INVALID,
        };
        CliError { exit_code, message: e.to_string() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

type CmdResult = Result<CommandOutput, CliError>;

/// Choi rank, unitality, and the cardinality window of a channel.
pub fn analyze(channel: &str, tol: &Tolerances) -> CmdResult {
    let ch = io::parse_channel(channel, tol)?;
    let choi = ch.to_choi();
    let rank = choi.rank(tol);
    let unital = if ch.is_square() { Some(ch.is_unital(tol)?) } else { None };
    let mut value = json!({
        "d_in": ch.d_in(),
        "d_out": ch.d_out(),
        "rank": rank,
        "unital": unital,
        "tp": true,
        "k_low": rank,
        "k_high": rank * rank,
        "h_bound_bits": 2.0 * (rank as f64).log2(),
    });
    if unital != Some(true) {
        value["note"] = json!("channel is not unital, hence not random-unitary");
    }
    Ok(CommandOutput::ok(value))
}

/// Closed form for qubits, manifold search otherwise.
pub fn decompose(channel: &str, cfg: &SearchConfig, tol: &Tolerances) -> CmdResult {
    let ch = io::parse_channel(channel, tol)?;
    let choi = ch.to_choi();
    let (report, method) = if ch.d_in() == 2 && ch.d_out() == 2 {
        let rank = choi.rank(tol);
        let mut report = SearchReport {
            status: SearchStatus::NotUnital,
            decomposition: None,
            rank,
            cardinality_bound_low: rank,
            cardinality_bound_high: rank * rank,
            objective_trace: Vec::new(),
            best_objective: f64::INFINITY,
            entropy_bits: None,
            residual: None,
        };
        if ch.is_unital(tol)? {
            let dec = pauli_decompose_qubit(&ch, tol)?;
            report.status = SearchStatus::Found;
            report.entropy_bits = Some(dec.entropy_bits());
            report.residual = Some(dec.to_choi().distance(&choi));
            report.decomposition = Some(dec);
        }
        (report, "pauli")
    } else {
        (search_decomposition(&ch, cfg, tol)?, "search")
    };
    let mut value = io::search_report_to_json(&report);
    value["method"] = json!(method);
    if let Some(dec) = &report.decomposition {
        let bounds = entropy_and_bounds(dec, &choi, tol);
        value["h_bound_bits"] = json!(bounds.bound_rank);
        value["h_dim_bound_bits"] = json!(bounds.bound_dim);
        value["bounds_ok"] = json!(bounds.ok);
    }
    let exit_code = match report.status {
        SearchStatus::Found => EXIT_OK,
        SearchStatus::NotFound => EXIT_NOT_FOUND,
        SearchStatus::NotUnital => EXIT_NOT_UNITAL,
    };
    Ok(CommandOutput { value, exit_code })
}

/// Reduces a dice-satisfying POVM (given relative to the channel's Kraus
/// operators as listed) to a decomposition with at most `rank²` terms.
pub fn povm_reduce(channel: &str, povm: &str, tol: &Tolerances) -> CmdResult {
    let ch = io::parse_channel(channel, tol)?;
    let p = io::parse_povm(povm)?;
    if check_dice_condition(&ch, &p, tol)?.is_none() {
        return Err(CliError { exit_code: EXIT_DICE, message: "POVM does not satisfy the dice condition".into() });
    }
    let dec = reduce_cardinality(&ch, &p, tol)?;
    Ok(CommandOutput::ok(io::decomposition_to_json(&dec)))
}

/// Measure-and-correct simulation on `trials` Haar-random pure inputs.
pub fn simulate(channel: &str, decomposition: &str, trials: usize, seed: u64, tol: &Tolerances) -> CmdResult {
    let ch = io::parse_channel(channel, tol)?;
    let dec = io::parse_decomposition(decomposition, tol)?;
    let states = haar_pure_states(ch.d_in(), trials, seed);
    let report = simulate_correction(&ch, &dec, &states, seed, tol)?;
    Ok(CommandOutput::ok(io::correction_report_to_json(&report)))
}

/// Random-unitary instance with its generating decomposition.
pub fn gen(d: usize, k: usize, seed: u64) -> CmdResult {
    let (ch, dec) = generate_random_ru_channel(d, k, seed)?;
    Ok(CommandOutput::ok(json!({
        "channel": io::channel_to_json(&ch),
        "decomposition": io::decomposition_to_json(&dec),
    })))
}
