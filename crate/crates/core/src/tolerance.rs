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

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute threshold for equalities (completeness, hermiticity, traces).
    pub eps_eq: f64,
    /// Smallest eigenvalue allowed is `-eps_psd`.
    pub eps_psd: f64,
    /// Relative eigenvalue / singular value cutoff for rank decisions.
    pub eps_rank: f64,
    /// Frobenius threshold on `U†U - I`.
    pub eps_unitary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_eq: 1e-9, eps_psd: 1e-9, eps_rank: 1e-9, eps_unitary: 1e-8 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_eq, self.eps_psd, self.eps_rank, self.eps_unitary];
        if all.iter().all(|e| e.is_finite() && *e > 0.0) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("tolerances must be positive: {self:?}")))
        }
    }

    /// Same thresholds with `eps_eq` and `eps_psd` replaced.
    pub fn with_eq(self, eps: f64) -> Self {
        Tolerances { eps_eq: eps, eps_psd: eps, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(Tolerances::default().validate().is_ok());
        assert!(Tolerances::default().with_eq(0.0).validate().is_err());
    }
}
