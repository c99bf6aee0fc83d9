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

//! Shrinking an overcomplete decomposition through extremal ancilla POVMs.
//!
//! ```bash
//! cargo run --example povm_reduction
//! ```

use ruchan::povm::check_dice_condition;
use ruchan::ru::{ancilla_vectors, generate_overcomplete_ru_channel, reduce_cardinality};
use ruchan::{extremal_decompose, RankOnePovm, Tolerances};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let (ch, dec) = generate_overcomplete_ru_channel(2, 9, 5)?;
    let choi = ch.to_choi();
    let canonical = choi.canonical_kraus(&tol)?;
    let r = canonical.num_ops();

    let (vectors, fit) = ancilla_vectors(&canonical, &dec)?;
    let povm = RankOnePovm::new(r, vectors)?;
    println!("{} unitaries over an ancilla of dimension {r} (fit residual {fit:.2e})", povm.len());
    println!("extremal: {}", povm.is_extremal(&tol));
    println!("dice condition holds: {}", check_dice_condition(&canonical, &povm, &tol)?.is_some());

    let split = extremal_decompose(&povm, &tol)?;
    println!(
        "extremal decomposition: {} components, sizes {:?}, weights {:.4?}",
        split.components.len(),
        split.components.iter().map(RankOnePovm::len).collect::<Vec<_>>(),
        split.weights
    );

    let reduced = reduce_cardinality(&canonical, &povm, &tol)?;
    let residual = reduced.to_choi().distance(&choi);
    println!("reduced to K = {} <= {}, residual {residual:.2e}", reduced.len(), r * r);
    if reduced.len() > r * r || residual > 1e-8 {
        return Err("reduction left the cardinality window".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
