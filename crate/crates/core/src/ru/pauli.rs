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

//! Closed-form decomposition of unital qubit channels into rotated Pauli
//! channels.

use nalgebra::{Matrix3, Rotation3, UnitQuaternion};
use num_complex::Complex64;

use super::RuDecomposition;
use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::tolerance::Tolerances;

/// Real `3×3` matrix `T[a][b] = ½ Tr[σ_a E(σ_b)]` over `a, b ∈ {x, y, z}`.
pub fn bloch_matrix(ch: &KrausChannel) -> Matrix3<f64> {
    let images: Vec<CMatrix> = (1..4).map(|b| ch.apply_operator(&linalg::pauli(b))).collect();
    Matrix3::from_fn(|a, b| 0.5 * linalg::hs_inner(&linalg::pauli(a + 1), &images[b]).re)
}

/// The SU(2) element `V` with `V σ_b V† = Σ_a R[a][b] σ_a`, using the
/// quaternion of `R` with nonnegative scalar part.
pub fn su2_from_rotation(rotation: &Matrix3<f64>) -> CMatrix {
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*rotation));
    let sign = if q.w < 0.0 { -1.0 } else { 1.0 };
    let (w, x, y, z) = (sign * q.w, sign * q.i, sign * q.j, sign * q.k);
    let minus_i = Complex64::new(0.0, -1.0);
    linalg::identity(2) * Complex64::new(w, 0.0)
        + (linalg::pauli(1) * Complex64::new(x, 0.0)
            + linalg::pauli(2) * Complex64::new(y, 0.0)
            + linalg::pauli(3) * Complex64::new(z, 0.0))
            * minus_i
}

/// Decomposes a unital qubit channel as `Σ_i p_i W_i ρ W_i†` with
/// `W_i = V_L σ_i V_R`.
///
/// The Bloch matrix is factored as `R_L Λ R_R` with both rotations proper
/// (reflections are pushed into `Λ`), the rotations are lifted to SU(2), and
/// the weights follow from `Λ = diag(λ_x, λ_y, λ_z)`.
pub fn pauli_decompose_qubit(ch: &KrausChannel, tol: &Tolerances) -> Result<RuDecomposition> {
    if ch.d_in() != 2 || ch.d_out() != 2 {
        return Err(Error::Unsupported(format!(
            "closed-form decomposition needs a qubit channel, got {} -> {}",
            ch.d_in(),
            ch.d_out()
        )));
    }
    if !ch.is_unital(tol)? {
        return Err(Error::Precondition("qubit channel is not unital, hence not random-unitary".into()));
    }
    let t = bloch_matrix(ch);
    let svd = t.svd(true, true);
    let mut left = svd.u.expect("svd computed with u");
    let mut right = svd.v_t.expect("svd computed with v_t");
    let mut lambda = svd.singular_values;
    if left.determinant() < 0.0 {
        left.column_mut(2).neg_mut();
        lambda[2] = -lambda[2];
    }
    if right.determinant() < 0.0 {
        right.row_mut(2).neg_mut();
        lambda[2] = -lambda[2];
    }
    let (lx, ly, lz) = (lambda[0], lambda[1], lambda[2]);
    let weights = [
        (1.0 + lx + ly + lz) / 4.0,
        (1.0 + lx - ly - lz) / 4.0,
        (1.0 - lx + ly - lz) / 4.0,
        (1.0 - lx - ly + lz) / 4.0,
    ];
    if let Some(bad) = weights.iter().find(|&&p| p < -tol.eps_eq) {
        return Err(Error::InvalidChannel(format!("negative Pauli weight {bad:e}; map is not completely positive")));
    }
    let v_left = su2_from_rotation(&left);
    let v_right = su2_from_rotation(&right);
    let mut probs = Vec::new();
    let mut unitaries = Vec::new();
    for (i, &p) in weights.iter().enumerate() {
        if p > tol.eps_eq {
            probs.push(p);
            unitaries.push(&v_left * linalg::pauli(i) * &v_right);
        }
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    RuDecomposition::new(probs, unitaries, tol)
}
