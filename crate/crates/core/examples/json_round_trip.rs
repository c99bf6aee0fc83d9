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

//! Generating an instance and moving it through the JSON formats used by the CLI.
//!
//! ```bash
//! cargo run --example json_round_trip
//! ```

use ruchan::io::{channel_to_json, decomposition_to_json, parse_channel, parse_decomposition, to_json_string};
use ruchan::ru::generate_random_ru_channel;
use ruchan::Tolerances;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerances::default();
    let (ch, dec) = generate_random_ru_channel(2, 2, 42)?;

    let channel_text = to_json_string(&channel_to_json(&ch));
    let dec_text = to_json_string(&decomposition_to_json(&dec));
    println!("channel JSON: {} bytes", channel_text.len());
    println!("decomposition JSON: {}", dec_text.trim_end());

    let ch_back = parse_channel(&channel_text, &tol)?;
    let dec_back = parse_decomposition(&dec_text, &tol)?;
    let exact = ch_back.ops() == ch.ops() && dec_back.probs() == dec.probs();
    println!("bit-exact round trip: {exact}");
    if !exact {
        return Err("JSON round trip changed the data".into());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
