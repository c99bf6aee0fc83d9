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

//! Dense complex linear algebra helpers shared across the crate.
//!
//! Bipartite operators use the row-major tensor convention: the basis element
//! `|i⟩⊗|k⟩` of `C^a ⊗ C^b` sits at flat index `i * b + k`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Frobenius norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Frobenius (Hilbert-Schmidt) inner product `Tr[a† b]`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn is_hermitian(m: &CMatrix, eps: f64) -> bool {
    m.is_square() && max_abs(&(m - m.adjoint())) <= eps
}

/// Eigendecomposition of the Hermitian part of `m`, eigenvalues in
/// descending order. Eigenvectors are the columns of the returned matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Unitary (or co-isometric) polar factor `U V†` of `a = U Σ V†`.
///
/// For a wide `r×n` input with full row rank this is the nearest matrix with
/// orthonormal rows; for square input it is the nearest unitary.
pub fn polar_factor(a: &CMatrix) -> CMatrix {
    if a.nrows() > a.ncols() {
        return polar_factor(&a.adjoint()).adjoint();
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("svd computed with u");
    let v_t = svd.v_t.expect("svd computed with v_t");
    u * v_t
}

/// Singular values of a real matrix, in the order nalgebra returns them.
pub fn singular_values_real(m: &DMatrix<f64>) -> Vec<f64> {
    m.singular_values().iter().copied().collect()
}

/// Row-major flattening: entry `(i, k)` goes to position `i * cols + k`.
pub fn flatten_row_major(m: &CMatrix) -> CVector {
    let cols = m.ncols();
    CVector::from_fn(m.nrows() * cols, |idx, _| m[(idx / cols, idx % cols)])
}

pub fn unflatten_row_major(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    assert_eq!(v.len(), rows * cols, "flattened length mismatch");
    CMatrix::from_fn(rows, cols, |i, k| v[i * cols + k])
}

/// Partial trace over the first tensor factor of an operator on `C^a ⊗ C^b`.
pub fn partial_trace_first(m: &CMatrix, a: usize, b: usize) -> CMatrix {
    assert_eq!(m.nrows(), a * b);
    CMatrix::from_fn(b, b, |k, l| (0..a).map(|i| m[(i * b + k, i * b + l)]).sum())
}

/// Partial trace over the second tensor factor of an operator on `C^a ⊗ C^b`.
pub fn partial_trace_second(m: &CMatrix, a: usize, b: usize) -> CMatrix {
    assert_eq!(m.nrows(), a * b);
    CMatrix::from_fn(a, a, |i, j| (0..b).map(|k| m[(i * b + k, j * b + k)]).sum())
}

/// Pauli matrix by index: 0 → identity, 1 → X, 2 → Y, 3 → Z.
pub fn pauli(index: usize) -> CMatrix {
    let z = ZERO;
    let o = ONE;
    let entries = match index {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, -I, I, z],
        3 => [o, z, z, -o],
        _ => panic!("pauli index {index} out of range"),
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

/// `Σ_j k_j† k_j`.
pub fn sum_kdag_k(ops: &[CMatrix]) -> CMatrix {
    let n = ops[0].ncols();
    ops.iter().fold(CMatrix::zeros(n, n), |acc, k| acc + k.adjoint() * k)
}

/// `Σ_j k_j k_j†`.
pub fn sum_k_kdag(ops: &[CMatrix]) -> CMatrix {
    let n = ops[0].nrows();
    ops.iter().fold(CMatrix::zeros(n, n), |acc, k| acc + k * k.adjoint())
}
