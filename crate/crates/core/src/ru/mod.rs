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

//! Random-unitary decompositions `E(ρ) = Σ_i p_i U_i ρ U_i†`.
//!
//! A decomposition with `K` terms corresponds to a rank-one POVM `{α_i}` on
//! the ancilla of the channel's dilation whose elements are mapped to
//! multiples of the identity by the dual complementary channel. Reducing that
//! POVM to an extremal one bounds `K` by `(rank R_E)²`.

mod generate;
mod pauli;
mod search;

pub use generate::{generate_overcomplete_ru_channel, generate_random_ru_channel, generate_unital_qubit_channel};
pub use pauli::{bloch_matrix, pauli_decompose_qubit, su2_from_rotation};
pub use search::{search_decomposition, DiceObjective, RestartRecord, SearchConfig, SearchReport, SearchStatus};

use num_complex::Complex64;

use crate::channel::{ChoiOperator, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::{self, frobenius, polar_factor, CMatrix, CVector};
use crate::povm::{check_dice_condition, extremal_decompose, RankOnePovm};
use crate::tolerance::Tolerances;

/// Probabilities `p_i` and unitaries `U_i` of a random-unitary channel.
#[derive(Debug, Clone, PartialEq)]
pub struct RuDecomposition {
    probs: Vec<f64>,
    unitaries: Vec<CMatrix>,
}

impl RuDecomposition {
    pub fn new(probs: Vec<f64>, unitaries: Vec<CMatrix>, tol: &Tolerances) -> Result<Self> {
        if probs.is_empty() || probs.len() != unitaries.len() {
            return Err(Error::RepresentationInvalid(format!(
                "need matching non-empty probability and unitary lists, got {} and {}",
                probs.len(),
                unitaries.len()
            )));
        }
        let d = unitaries[0].nrows();
        for (i, u) in unitaries.iter().enumerate() {
            if u.shape() != (d, d) {
                return Err(Error::RepresentationInvalid(format!("unitary {i} is not {d}x{d}")));
            }
            let defect = frobenius(&(u.adjoint() * u - linalg::identity(d)));
            if defect.is_nan() || defect > tol.eps_unitary {
                return Err(Error::RepresentationInvalid(format!(
                    "operator {i} is not unitary (‖U†U - I‖ = {defect:e})"
                )));
            }
        }
        if probs.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::RepresentationInvalid("probabilities must be nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol.eps_eq {
            return Err(Error::RepresentationInvalid(format!("probabilities sum to {total}")));
        }
        Ok(RuDecomposition { probs, unitaries })
    }

    pub fn dim(&self) -> usize {
        self.unitaries[0].nrows()
    }

    /// Number of terms `K`.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn unitaries(&self) -> &[CMatrix] {
        &self.unitaries
    }

    /// Kraus operators `√p_i U_i` (all terms, including zero-weight ones).
    pub fn kraus_ops(&self) -> Vec<CMatrix> {
        self.probs.iter().zip(&self.unitaries).map(|(&p, u)| u * Complex64::new(p.sqrt(), 0.0)).collect()
    }

    pub fn to_channel(&self, tol: &Tolerances) -> Result<KrausChannel> {
        KrausChannel::with_tolerances(self.kraus_ops(), tol)
    }

    pub fn to_choi(&self) -> ChoiOperator {
        KrausChannel::with_tolerances(self.kraus_ops(), &Tolerances::default().with_eq(1.0))
            .expect("shapes already validated")
            .to_choi()
    }

    /// Shannon entropy of the mixing distribution in bits.
    pub fn entropy_bits(&self) -> f64 {
        shannon_bits(&self.probs)
    }
}

pub fn shannon_bits(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
}

/// Entropy of a decomposition against the two classical-information bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyBounds {
    pub h_bits: f64,
    /// `2 log₂ rank R_E`
    pub bound_rank: f64,
    /// `4 log₂ d`
    pub bound_dim: f64,
    /// `h_bits ≤ bound_rank` up to `eps_eq`.
    pub ok: bool,
}

pub fn entropy_and_bounds(dec: &RuDecomposition, choi: &ChoiOperator, tol: &Tolerances) -> EntropyBounds {
    let h_bits = dec.entropy_bits();
    let bound_rank = 2.0 * (choi.rank(tol) as f64).log2();
    let bound_dim = 4.0 * (choi.d_in() as f64).log2();
    EntropyBounds { h_bits, bound_rank, bound_dim, ok: h_bits <= bound_rank + tol.eps_eq }
}

/// Builds the decomposition induced by a dice-satisfying POVM:
/// `A_i = Σ_j conj(α_ij) K_j`, `p_i = Tr[A_i†A_i]/d`, `U_i` the polar factor
/// of `A_i`. Terms with `p_i ≤ eps_eq` are dropped.
pub fn decomposition_from_povm(ch: &KrausChannel, povm: &RankOnePovm, tol: &Tolerances) -> Result<RuDecomposition> {
    ch.require_square("a random-unitary decomposition")?;
    let d = ch.d_in() as f64;
    let mut probs = Vec::new();
    let mut unitaries = Vec::new();
    for alpha in povm.vectors() {
        let a = ch.mixed_kraus(alpha)?;
        let p = linalg::trace(&(a.adjoint() * &a)).re / d;
        if p > tol.eps_eq {
            probs.push(p);
            unitaries.push(polar_factor(&a));
        }
    }
    let total: f64 = probs.iter().sum();
    if probs.is_empty() || (total - 1.0).abs() > tol.eps_eq.max(1e-6) {
        return Err(Error::InconsistentDecomposition(format!("induced probabilities sum to {total}")));
    }
    probs.iter_mut().for_each(|p| *p /= total);
    RuDecomposition::new(probs, unitaries, tol)
}

/// Least-squares coefficients expressing each `√p_i U_i` in the span of the
/// channel's Kraus operators, returned as ancilla vectors
/// `α_i = conj(x_i)` (so that `Σ_j conj(α_ij) K_j ≈ √p_i U_i`), together with
/// the largest Frobenius residual.
pub fn ancilla_vectors(ch: &KrausChannel, dec: &RuDecomposition) -> Result<(Vec<CVector>, f64)> {
    if dec.dim() != ch.d_in() || !ch.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "decomposition acts on C^{}, channel is {} -> {}",
            dec.dim(),
            ch.d_in(),
            ch.d_out()
        )));
    }
    let ops = ch.ops();
    let m = ops.len();
    let gram = CMatrix::from_fn(m, m, |j, l| linalg::hs_inner(&ops[j], &ops[l]));
    let solver = gram
        .clone()
        .cholesky()
        .ok_or_else(|| Error::NumericalFailure("Kraus operators are linearly dependent".into()))?;
    let mut vectors = Vec::with_capacity(dec.len());
    let mut worst = 0.0_f64;
    for target in dec.kraus_ops() {
        let rhs = CVector::from_fn(m, |j, _| linalg::hs_inner(&ops[j], &target));
        let x = solver.solve(&rhs);
        let fit = ops.iter().zip(x.iter()).fold(CMatrix::zeros(ch.d_out(), ch.d_in()), |acc, (k, c)| acc + k * *c);
        worst = worst.max(frobenius(&(target - fit)));
        vectors.push(x.map(|z| z.conj()));
    }
    Ok((vectors, worst))
}

/// Reduces a dice-satisfying rank-one POVM to an extremal one and returns the
/// induced decomposition, which has at most `(rank R_E)²` terms.
///
/// When the channel is given with more Kraus operators than its Choi rank,
/// the POVM is first re-expressed on the canonical ancilla.
pub fn reduce_cardinality(ch: &KrausChannel, povm: &RankOnePovm, tol: &Tolerances) -> Result<RuDecomposition> {
    if check_dice_condition(ch, povm, tol)?.is_none() {
        return Err(Error::Precondition("POVM does not satisfy the dice condition for this channel".into()));
    }
    let choi = ch.to_choi();
    let rank = choi.rank(tol);
    let (kraus, povm) = if ch.num_ops() > rank {
        let canonical = choi.canonical_kraus(tol)?;
        let induced = decomposition_from_povm(ch, povm, tol)?;
        let (vectors, residual) = ancilla_vectors(&canonical, &induced)?;
        if residual > tol.eps_eq {
            return Err(Error::NumericalFailure(format!(
                "re-expression on the canonical ancilla left residual {residual:e}"
            )));
        }
        (canonical, RankOnePovm::new(rank, vectors)?)
    } else {
        (ch.clone(), povm.clone())
    };
    let split = extremal_decompose(&povm, tol)?;
    let component = &split.components[split.heaviest()];
    let dec = decomposition_from_povm(&kraus, component, tol)?;
    let residual = linalg::max_abs(&(dec.to_choi().matrix() - choi.matrix()));
    if residual > tol.eps_eq {
        return Err(Error::NumericalFailure(format!("reduced decomposition misses the channel by {residual:e}")));
    }
    Ok(dec)
}
