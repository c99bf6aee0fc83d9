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

use thiserror::Error;

/// Errors produced by channel construction, decomposition and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid channel representation: {0}")]
    RepresentationInvalid(String),

    #[error("invalid Choi operator: {0}")]
    InvalidChoi(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("null combination has no {0} entry; split direction is unbounded")]
    UnboundedDirection(&'static str),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("inconsistent decomposition: {0}")]
    InconsistentDecomposition(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
