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

//! Random-unitary decompositions of finite-dimensional quantum channels.
//!
//! A channel is random-unitary when it can be written as
//! `E(ρ) = Σ_i p_i U_i ρ U_i†`. Such a channel can be undone perfectly by
//! measuring its environment and applying `U_i†` on outcome `i`. The number of
//! unitaries needed never exceeds `(rank R_E)²`, where `R_E` is the Choi
//! operator, and never falls below `rank R_E`.
//!
//! The crate is organized around that window:
//!
//! - [`channel`]: Kraus, Choi, complementary and dual representations.
//! - [`povm`]: rank-one ancilla POVMs, extremality, and the convex
//!   decomposition of a POVM into extremal ones.
//! - [`ru`]: decompositions themselves: the closed form for qubits, a search
//!   over co-isometries for general `d`, cardinality reduction, and the
//!   entropy bounds.
//! - [`correction`]: dilation and measure-and-correct simulation.
//! - [`io`] and [`cli`]: JSON formats and the command layer of the `ruchan`
//!   binary.
//!
//! ```
//! use ruchan::{KrausChannel, Tolerances};
//! use ruchan::ru::pauli_decompose_qubit;
//!
//! let tol = Tolerances::default();
//! let ch = KrausChannel::pauli([0.5, 0.25, 0.25, 0.0]).unwrap();
//! let dec = pauli_decompose_qubit(&ch, &tol).unwrap();
//! assert_eq!(dec.len(), ch.to_choi().rank(&tol));
//! ```

pub mod channel;
pub mod cli;
pub mod correction;
pub mod error;
pub mod io;
pub mod linalg;
pub mod povm;
pub mod random;
pub mod ru;
pub mod tolerance;

pub use channel::{ChoiOperator, DensityMatrix, KrausChannel};
pub use correction::{dilate, simulate_correction, CorrectionReport, DilationIsometry};
pub use error::{Error, Result};
pub use povm::{extremal_decompose, extremal_split_once, ExtremalSplit, RankOnePovm};
pub use ru::{RuDecomposition, SearchConfig, SearchReport, SearchStatus};
pub use tolerance::Tolerances;
