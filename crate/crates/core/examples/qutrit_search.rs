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

//! Numerical search for a short random-unitary decomposition of a qutrit channel.
//!
//! ```bash
//! cargo run --release --example qutrit_search
//! ```

use ruchan::ru::{entropy_and_bounds, generate_random_ru_channel, search_decomposition};
use ruchan::{KrausChannel, SearchConfig, SearchStatus, Tolerances};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let (ch, truth) = generate_random_ru_channel(3, 4, 2024)?;
    let report = search_decomposition(&ch, &SearchConfig::default(), &tol)?;
    println!(
        "generated with K = {}, rank = {}, window [{}, {}], status {:?}",
        truth.len(),
        report.rank,
        report.cardinality_bound_low,
        report.cardinality_bound_high,
        report.status
    );
    let dec = report.decomposition.ok_or("search did not find a decomposition")?;
    let bounds = entropy_and_bounds(&dec, &ch.to_choi(), &tol);
    println!(
        "found K = {} after {} restarts, residual {:.2e}, H = {:.4} bits (bounds {:.4} / {:.4})",
        dec.len(),
        report.objective_trace.len(),
        report.residual.unwrap_or(f64::NAN),
        bounds.h_bits,
        bounds.bound_rank,
        bounds.bound_dim
    );

    let damping = KrausChannel::amplitude_damping(0.4)?;
    let gated = search_decomposition(&damping, &SearchConfig::default(), &tol)?;
    println!("amplitude damping: status {:?}", gated.status);
    if gated.status != SearchStatus::NotUnital {
        return Err("non-unital channel was not rejected".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
