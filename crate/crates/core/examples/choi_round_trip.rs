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

//! Kraus operators to Choi operator and back to the canonical Kraus form.
//!
//! ```bash
//! cargo run --example choi_round_trip
//! ```

use ruchan::linalg::{hs_inner, max_abs};
use ruchan::random::{random_kraus_channel, rng_from_seed};
use ruchan::Tolerances;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let mut rng = rng_from_seed(7);
    let ch = random_kraus_channel(3, 5, &mut rng);
    let choi = ch.to_choi();
    println!("d = {}, listed Kraus operators = {}, Choi rank = {}", ch.d_in(), ch.num_ops(), choi.rank(&tol));
    println!("Choi spectrum: {:.4?}", choi.eigenvalues());

    let canonical = choi.canonical_kraus(&tol)?;
    let probe = ruchan::DensityMatrix::maximally_mixed(3);
    let drift = max_abs(&(ch.apply(&probe)?.matrix() - canonical.apply(&probe)?.matrix()));
    println!("canonical form has {} operators, action drift {drift:.2e}", canonical.num_ops());

    let ops = canonical.ops();
    let mut worst = 0.0_f64;
    for j in 0..ops.len() {
        for l in j + 1..ops.len() {
            worst = worst.max(hs_inner(&ops[j], &ops[l]).norm());
        }
    }
    println!("max |Tr K_j† K_l| over j != l: {worst:.2e}");
    if drift > 1e-9 || worst > 1e-9 {
        return Err("canonical Kraus form does not reproduce the channel".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
