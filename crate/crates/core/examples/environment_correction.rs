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

//! Undoing a random-unitary channel by measuring its environment.
//!
//! ```bash
//! cargo run --example environment_correction
//! ```

use ruchan::correction::haar_pure_states;
use ruchan::ru::generate_random_ru_channel;
use ruchan::{dilate, simulate_correction, Tolerances};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let (ch, dec) = generate_random_ru_channel(3, 3, 99)?;
    let v = dilate(&ch);
    println!("dilation: {}x{} isometry: {}", v.matrix().nrows(), v.matrix().ncols(), v.is_isometry(&tol));

    let states = haar_pure_states(3, 50, 1);
    let report = simulate_correction(&ch, &dec, &states, 3, &tol)?;
    println!(
        "{} trials, worst fidelity 1 - {:.2e}, mean fidelity {:.12}",
        report.n_trials,
        1.0 - report.worst_fidelity,
        report.mean_fidelity
    );
    println!("probabilities {:.4?}", report.expected_probs);
    println!("sampled       {:.4?}", report.outcome_frequencies);
    println!("max outcome-weight deviation across inputs {:.2e}", report.max_weight_deviation);
    if report.worst_fidelity < 1.0 - 1e-9 {
        return Err("correction is not perfect".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
