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

//! Environment-assisted correction of random-unitary channels.
//!
//! The channel is dilated to an isometry `V: C^d → C^d ⊗ C^r`, the ancilla
//! is measured with the rank-one POVM that corresponds to the decomposition,
//! and outcome `i` is undone by applying `U_i†` to the system.

use rand::distr::{weighted::WeightedIndex, Distribution};
use serde::{Deserialize, Serialize};

use crate::channel::{DensityMatrix, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{self, max_abs, partial_trace_first, partial_trace_second, CMatrix, CVector};
use crate::random::{random_pure_state, rng_from_seed};
use crate::ru::{ancilla_vectors, RuDecomposition};
use crate::tolerance::Tolerances;

/// Stinespring isometry `V|ψ⟩ = Σ_j (K_j|ψ⟩) ⊗ |j⟩`, stored as a
/// `(d_out·r) × d_in` matrix with row index `i * r + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationIsometry {
    d_in: usize,
    d_out: usize,
    r: usize,
    v: CMatrix,
}

impl DilationIsometry {
    pub fn new(ch: &KrausChannel) -> Self {
        let (d_in, d_out, r) = (ch.d_in(), ch.d_out(), ch.num_ops());
        let ops = ch.ops();
        let v = CMatrix::from_fn(d_out * r, d_in, |row, k| ops[row % r][(row / r, k)]);
        DilationIsometry { d_in, d_out, r, v }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.v
    }

    pub fn ancilla_dim(&self) -> usize {
        self.r
    }

    pub fn is_isometry(&self, tol: &Tolerances) -> bool {
        max_abs(&(self.v.adjoint() * &self.v - linalg::identity(self.d_in))) <= tol.eps_eq
    }

    /// Joint system-ancilla state `V ρ V†`.
    pub fn joint_state(&self, rho: &DensityMatrix) -> Result<CMatrix> {
        if rho.dim() != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "state has dimension {}, dilation expects {}",
                rho.dim(),
                self.d_in
            )));
        }
        Ok(&self.v * rho.matrix() * self.v.adjoint())
    }

    pub fn system_marginal(&self, joint: &CMatrix) -> CMatrix {
        partial_trace_second(joint, self.d_out, self.r)
    }

    pub fn ancilla_marginal(&self, joint: &CMatrix) -> CMatrix {
        partial_trace_first(joint, self.d_out, self.r)
    }

    /// `(I ⊗ ⟨α|) V`, the system operator conditioned on ancilla outcome `α`.
    pub fn conditional_operator(&self, alpha: &CVector) -> CMatrix {
        CMatrix::from_fn(self.d_out, self.d_in, |a, k| {
            (0..self.r).map(|j| alpha[j].conj() * self.v[(a * self.r + j, k)]).sum()
        })
    }
}

pub fn dilate(ch: &KrausChannel) -> DilationIsometry {
    DilationIsometry::new(ch)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionReport {
    pub n_trials: usize,
    /// Smallest corrected fidelity over all inputs and all outcomes that occur.
    pub worst_fidelity: f64,
    /// Mean over inputs of the outcome-averaged corrected fidelity.
    pub mean_fidelity: f64,
    /// Empirical outcome distribution, one seeded sample per input.
    pub outcome_frequencies: Vec<f64>,
    pub expected_probs: Vec<f64>,
    /// `max |Tr[(I ⊗ |α_i⟩⟨α_i|) VρV†] − p_i|` over inputs and outcomes.
    pub max_weight_deviation: f64,
}

/// Haar-random pure input states, deterministic per seed.
pub fn haar_pure_states(d: usize, count: usize, seed: u64) -> Vec<DensityMatrix> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| DensityMatrix::pure(&random_pure_state(d, &mut rng))).collect()
}

/// Runs measure-and-correct on every input state.
///
/// The ancilla POVM is recovered by expressing each `√p_i U_i` in the span
/// of the channel's canonical Kraus operators. Outcome weights and corrected
/// fidelities are computed exactly; `seed` only drives the sampled outcome
/// frequencies. The fidelity of a corrected state `σ` against input `ρ` is
/// `Tr[ρσ]`, which is `⟨ψ|σ|ψ⟩` for pure inputs.
pub fn simulate_correction(
    ch: &KrausChannel,
    dec: &RuDecomposition,
    states: &[DensityMatrix],
    seed: u64,
    tol: &Tolerances,
) -> Result<CorrectionReport> {
    ch.require_square("correction")?;
    let canonical = ch.to_choi().canonical_kraus(tol)?;
    let (alphas, residual) = ancilla_vectors(&canonical, dec)?;
    if residual > tol.eps_eq {
        return Err(Error::InconsistentDecomposition(format!(
            "decomposition leaves the channel's Kraus span (residual {residual:e})"
        )));
    }
    let r = canonical.num_ops();
    let completeness = alphas.iter().fold(CMatrix::zeros(r, r), |acc, a| acc + a * a.adjoint());
    let defect = max_abs(&(completeness - linalg::identity(r)));
    if defect > tol.eps_eq {
        return Err(Error::InconsistentDecomposition(format!(
            "recovered ancilla measurement is incomplete (defect {defect:e})"
        )));
    }

    let dilation = dilate(&canonical);
    let conditional: Vec<CMatrix> = alphas.iter().map(|a| dilation.conditional_operator(a)).collect();
    let probs = dec.probs();
    let mut rng = rng_from_seed(seed);
    let mut counts = vec![0usize; probs.len()];
    let mut worst = f64::INFINITY;
    let mut fidelity_sum = 0.0;
    let mut max_dev = 0.0_f64;

    for rho in states {
        let joint = dilation.joint_state(rho)?;
        let ancilla = dilation.ancilla_marginal(&joint);
        let mut weights = Vec::with_capacity(probs.len());
        let mut averaged = 0.0;
        for (i, alpha) in alphas.iter().enumerate() {
            let w = (alpha.adjoint() * &ancilla * alpha)[(0, 0)].re;
            max_dev = max_dev.max((w - probs[i]).abs());
            weights.push(w.max(0.0));
            if w <= tol.eps_eq {
                continue;
            }
            let m = &conditional[i];
            let u = &dec.unitaries()[i];
            let corrected = u.adjoint() * m * rho.matrix() * m.adjoint() * u / num_complex::Complex64::new(w, 0.0);
            let fidelity = linalg::hs_inner(rho.matrix(), &corrected).re;
            worst = worst.min(fidelity);
            averaged += w * fidelity;
        }
        fidelity_sum += averaged;
        if let Ok(dist) = WeightedIndex::new(&weights) {
            counts[dist.sample(&mut rng)] += 1;
        }
    }

    let n = states.len();
    let frequencies = counts.iter().map(|&c| if n > 0 { c as f64 / n as f64 } else { 0.0 }).collect();
    Ok(CorrectionReport {
        n_trials: n,
        worst_fidelity: if n > 0 { worst } else { 1.0 },
        mean_fidelity: if n > 0 { fidelity_sum / n as f64 } else { 1.0 },
        outcome_frequencies: frequencies,
        expected_probs: probs.to_vec(),
        max_weight_deviation: max_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::haar_unitary;
    use crate::ru::{generate_random_ru_channel, pauli_decompose_qubit};
    use num_complex::Complex64;

    #[test]
    fn unitary_dilation_is_the_unitary() {
        let u = haar_unitary(3, &mut rng_from_seed(1));
        let v = dilate(&KrausChannel::unitary(u.clone()).unwrap());
        assert_eq!(v.ancilla_dim(), 1);
        assert_eq!(v.matrix(), &u);
    }

    #[test]
    fn flip_channel_dilation_stacks_scaled_operators() {
        let tol = Tolerances::default();
        let ch = KrausChannel::pauli([0.5, 0.5, 0.0, 0.0]).unwrap();
        let v = dilate(&ch);
        assert!(v.is_isometry(&tol));
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let e0 = CVector::from_vec(vec![linalg::ONE, linalg::ZERO]);
        let e1 = CVector::from_vec(vec![linalg::ZERO, linalg::ONE]);
        assert!(max_abs(&(v.conditional_operator(&e0) - linalg::identity(2) * h)) < 1e-15);
        assert!(max_abs(&(v.conditional_operator(&e1) - linalg::pauli(1) * h)) < 1e-15);
    }

    #[test]
    fn marginals_match_channel_and_complement() {
        let (ch, _) = generate_random_ru_channel(3, 4, 12).unwrap();
        let v = dilate(&ch);
        for rho in haar_pure_states(3, 5, 3) {
            let joint = v.joint_state(&rho).unwrap();
            let out = ch.apply(&rho).unwrap();
            let comp = ch.complementary_apply(&rho).unwrap();
            assert!(max_abs(&(v.system_marginal(&joint) - out.matrix())) < 1e-12);
            assert!(max_abs(&(v.ancilla_marginal(&joint) - comp.matrix())) < 1e-12);
        }
    }

    #[test]
    fn unitary_channel_is_corrected_perfectly() {
        let tol = Tolerances::default();
        let u = haar_unitary(2, &mut rng_from_seed(5));
        let ch = KrausChannel::unitary(u.clone()).unwrap();
        let dec = RuDecomposition::new(vec![1.0], vec![u], &tol).unwrap();
        let report = simulate_correction(&ch, &dec, &haar_pure_states(2, 10, 1), 0, &tol).unwrap();
        assert!((report.worst_fidelity - 1.0).abs() < 1e-12);
        assert_eq!(report.outcome_frequencies, vec![1.0]);
    }

    #[test]
    fn pauli_channel_outcomes_are_input_independent() {
        let tol = Tolerances::default();
        let ch = KrausChannel::pauli([0.4, 0.3, 0.2, 0.1]).unwrap();
        let dec = pauli_decompose_qubit(&ch, &tol).unwrap();
        let report = simulate_correction(&ch, &dec, &haar_pure_states(2, 100, 8), 8, &tol).unwrap();
        assert!(report.worst_fidelity >= 1.0 - 1e-9);
        assert!(report.max_weight_deviation <= 1e-10);
        assert!(report.worst_fidelity <= report.mean_fidelity + 1e-15);
        assert!((report.outcome_frequencies.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swapped_probabilities_are_detected() {
        let tol = Tolerances::default();
        let ch = KrausChannel::pauli([0.7, 0.3, 0.0, 0.0]).unwrap();
        let dec = pauli_decompose_qubit(&ch, &tol).unwrap();
        let mut probs = dec.probs().to_vec();
        probs.reverse();
        let wrong = RuDecomposition::new(probs, dec.unitaries().to_vec(), &tol).unwrap();
        let result = simulate_correction(&ch, &wrong, &haar_pure_states(2, 10, 2), 0, &tol);
        match result {
            Err(Error::InconsistentDecomposition(_)) => {}
            Ok(report) => assert!(report.worst_fidelity < 1.0 - 1e-9),
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}
