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

//! Closed-form decomposition of a unital qubit channel into rank-many unitaries.
//!
//! ```bash
//! cargo run --example qubit_pauli
//! ```

use ruchan::ru::{bloch_matrix, generate_unital_qubit_channel, pauli_decompose_qubit};
use ruchan::{KrausChannel, Tolerances};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();

    let dephasing = KrausChannel::pauli([0.7, 0.0, 0.0, 0.3])?;
    let dec = pauli_decompose_qubit(&dephasing, &tol)?;
    println!("dephasing: K = {}, probabilities {:.4?}", dec.len(), dec.probs());

    let (ch, _) = generate_unital_qubit_channel(11)?;
    println!("Bloch matrix:\n{:.4}", bloch_matrix(&ch));
    let dec = pauli_decompose_qubit(&ch, &tol)?;
    let choi = ch.to_choi();
    let residual = dec.to_choi().distance(&choi);
    println!(
        "random unital qubit channel: rank = {}, K = {}, H = {:.4} bits, residual {residual:.2e}",
        choi.rank(&tol),
        dec.len(),
        dec.entropy_bits()
    );
    if dec.len() != choi.rank(&tol) || residual > 1e-9 {
        return Err("qubit decomposition is not minimal".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
