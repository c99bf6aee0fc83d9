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

//! Kraus, Choi and complementary representations of quantum channels.
//!
//! The Choi operator of a channel `E` acting on `d_in`-dimensional inputs is
//! `R = (E ⊗ id)(|Ω⟩⟨Ω|)` with the unnormalized `|Ω⟩ = Σ_k |k⟩⊗|k⟩`. The
//! channel acts on the first tensor factor, so the basis element `(i, k)`
//! (output index `i`, reference index `k`) sits at flat index `i * d_in + k`.
//! Equivalently `R = Σ_j w_j w_j†` where `w_j` is the row-major flattening of
//! the Kraus operator `K_j`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, all_finite, flatten_row_major, hermitian_eigen, max_abs, partial_trace_first, partial_trace_second, trace,
    unflatten_row_major, CMatrix, CVector,
};
use crate::tolerance::Tolerances;

/// A positive semidefinite, unit-trace, Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square and non-empty, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if !all_finite(&mat) {
            return Err(Error::RepresentationInvalid("non-finite density matrix entry".into()));
        }
        if !linalg::is_hermitian(&mat, tol.eps_eq) {
            return Err(Error::RepresentationInvalid("density matrix is not Hermitian".into()));
        }
        let tr = trace(&mat);
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol.eps_eq {
            return Err(Error::RepresentationInvalid(format!("density matrix trace {tr} != 1")));
        }
        let (vals, _) = hermitian_eigen(&mat);
        if let Some(&min) = vals.last() {
            if min < -tol.eps_psd {
                return Err(Error::RepresentationInvalid(format!("density matrix has negative eigenvalue {min:e}")));
            }
        }
        Ok(DensityMatrix(mat))
    }

    /// `|ψ⟩⟨ψ|` for the normalized `psi`.
    pub fn pure(psi: &CVector) -> Self {
        let psi = psi.normalize();
        DensityMatrix(&psi * psi.adjoint())
    }

    /// `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix(linalg::identity(d) / Complex64::new(d as f64, 0.0))
    }

    pub(crate) fn from_matrix_unchecked(mat: CMatrix) -> Self {
        DensityMatrix(mat)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

/// A channel given by Kraus operators `K_j` (each `d_out × d_in`) with
/// `Σ_j K_j† K_j = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    d_in: usize,
    d_out: usize,
    ops: Vec<CMatrix>,
}

impl KrausChannel {
    /// Builds a channel, checking shapes, finiteness and completeness with
    /// the default tolerances.
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        Self::with_tolerances(ops, &Tolerances::default())
    }

    pub fn with_tolerances(ops: Vec<CMatrix>, tol: &Tolerances) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::RepresentationInvalid("channel needs at least one Kraus operator".into()))?;
        let (d_out, d_in) = first.shape();
        if d_out == 0 || d_in == 0 {
            return Err(Error::RepresentationInvalid("empty Kraus operator".into()));
        }
        for (j, k) in ops.iter().enumerate() {
            if k.shape() != (d_out, d_in) {
                return Err(Error::RepresentationInvalid(format!(
                    "Kraus operator {j} has shape {:?}, expected {:?}",
                    k.shape(),
                    (d_out, d_in)
                )));
            }
            if !all_finite(k) {
                return Err(Error::RepresentationInvalid(format!("Kraus operator {j} has non-finite entries")));
            }
        }
        let defect = max_abs(&(linalg::sum_kdag_k(&ops) - linalg::identity(d_in)));
        if defect > tol.eps_eq {
            return Err(Error::RepresentationInvalid(format!("completeness violated: max |Σ K†K - I| = {defect:e}")));
        }
        Ok(KrausChannel { d_in, d_out, ops })
    }

    pub fn identity(d: usize) -> Self {
        KrausChannel { d_in: d, d_out: d, ops: vec![linalg::identity(d)] }
    }

    /// Unitary channel `ρ ↦ U ρ U†`.
    pub fn unitary(u: CMatrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// Qubit Pauli channel `Σ_i p_i σ_i ρ σ_i` with `p = (p_0, p_x, p_y, p_z)`.
    /// Zero-weight terms are omitted.
    pub fn pauli(p: [f64; 4]) -> Result<Self> {
        if p.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::OutOfRange(format!("Pauli weights must be nonnegative: {p:?}")));
        }
        let ops = p
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, &w)| linalg::pauli(i) * Complex64::new(w.sqrt(), 0.0))
            .collect();
        Self::new(ops)
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::OutOfRange(format!("gamma must lie in [0, 1], got {gamma}")));
        }
        let z = linalg::ZERO;
        let k0 = CMatrix::from_row_slice(2, 2, &[linalg::ONE, z, z, Complex64::new((1.0 - gamma).sqrt(), 0.0)]);
        let k1 = CMatrix::from_row_slice(2, 2, &[z, Complex64::new(gamma.sqrt(), 0.0), z, z]);
        Self::new(vec![k0, k1])
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// Number of Kraus operators, i.e. the dimension of the canonical ancilla.
    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn is_square(&self) -> bool {
        self.d_in == self.d_out
    }

    /// Choi operator `Σ_j w_j w_j†`.
    pub fn to_choi(&self) -> ChoiOperator {
        let n = self.d_in * self.d_out;
        let mut mat = CMatrix::zeros(n, n);
        for k in &self.ops {
            let w = flatten_row_major(k);
            mat += &w * w.adjoint();
        }
        ChoiOperator { d_in: self.d_in, d_out: self.d_out, mat }
    }

    /// `Σ_j K_j ρ K_j†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        let out = self.apply_operator(rho.matrix());
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }

    /// Action on an arbitrary (not necessarily positive) input operator.
    pub fn apply_operator(&self, x: &CMatrix) -> CMatrix {
        self.ops.iter().fold(CMatrix::zeros(self.d_out, self.d_out), |acc, k| acc + k * x * k.adjoint())
    }

    /// True iff `Σ_j K_j K_j† = I` within `eps_eq`.
    pub fn is_unital(&self, tol: &Tolerances) -> Result<bool> {
        self.require_square("unitality")?;
        let defect = max_abs(&(linalg::sum_k_kdag(&self.ops) - linalg::identity(self.d_out)));
        Ok(defect <= tol.eps_eq)
    }

    /// Complementary channel with the canonical ancilla of dimension
    /// `num_ops()`: `⟨j|Ẽ(ρ)|l⟩ = Tr[K_j ρ K_l†]`.
    pub fn complementary_apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        let m = self.ops.len();
        let k_rho: Vec<CMatrix> = self.ops.iter().map(|k| k * rho.matrix()).collect();
        let out = CMatrix::from_fn(m, m, |j, l| linalg::hs_inner(&self.ops[l], &k_rho[j]));
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }

    /// Heisenberg-picture complementary channel on a rank-one ancilla operator:
    /// `Ẽ*(|α⟩⟨α|) = A† A` with `A = Σ_j conj(α_j) K_j`.
    pub fn dual_apply(&self, alpha: &CVector) -> Result<CMatrix> {
        let a = self.mixed_kraus(alpha)?;
        Ok(a.adjoint() * a)
    }

    /// `Σ_j conj(α_j) K_j`.
    pub fn mixed_kraus(&self, alpha: &CVector) -> Result<CMatrix> {
        if alpha.len() != self.ops.len() {
            return Err(Error::DimensionMismatch(format!(
                "ancilla vector has length {}, channel has {} Kraus operators",
                alpha.len(),
                self.ops.len()
            )));
        }
        Ok(mix_kraus(&self.ops, alpha.iter().copied()))
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} requires equal input and output dimensions, got {} -> {}",
                self.d_in, self.d_out
            )))
        }
    }

    fn check_input(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "state has dimension {}, channel input dimension is {}",
                rho.dim(),
                self.d_in
            )));
        }
        Ok(())
    }
}

/// `Σ_j conj(α_j) K_j`.
pub(crate) fn mix_kraus(ops: &[CMatrix], alpha: impl Iterator<Item = Complex64>) -> CMatrix {
    let (rows, cols) = ops[0].shape();
    ops.iter().zip(alpha).fold(CMatrix::zeros(rows, cols), |acc, (k, a)| acc + k * a.conj())
}

/// The Choi operator `R_E` of a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiOperator {
    d_in: usize,
    d_out: usize,
    mat: CMatrix,
}

impl ChoiOperator {
    /// Validates hermiticity, positivity, and the trace-preservation
    /// condition `Tr_out R = I`.
    pub fn new(d_in: usize, d_out: usize, mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        let n = d_in * d_out;
        if n == 0 || mat.shape() != (n, n) {
            return Err(Error::InvalidChoi(format!("expected a {n}x{n} matrix, got {}x{}", mat.nrows(), mat.ncols())));
        }
        if !all_finite(&mat) {
            return Err(Error::InvalidChoi("non-finite entries".into()));
        }
        if !linalg::is_hermitian(&mat, tol.eps_eq) {
            return Err(Error::InvalidChoi("not Hermitian".into()));
        }
        let (vals, _) = hermitian_eigen(&mat);
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -tol.eps_psd {
            return Err(Error::InvalidChoi(format!("negative eigenvalue {min:e}")));
        }
        let defect = max_abs(&(partial_trace_first(&mat, d_out, d_in) - linalg::identity(d_in)));
        if defect > tol.eps_eq {
            return Err(Error::InvalidChoi(format!(
                "partial trace over the output is not the identity (defect {defect:e})"
            )));
        }
        Ok(ChoiOperator { d_in, d_out, mat })
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.mat).0
    }

    /// Number of eigenvalues above `eps_rank` times the largest one.
    pub fn rank(&self, tol: &Tolerances) -> usize {
        let vals = self.eigenvalues();
        let cutoff = tol.eps_rank * vals[0].max(0.0);
        vals.iter().filter(|&&v| v > cutoff).count().max(1)
    }

    /// Orthogonal Kraus representation from the eigendecomposition:
    /// `K_j = √μ_j · unflatten(u_j)` for every eigenvalue above the rank cutoff.
    pub fn canonical_kraus(&self, tol: &Tolerances) -> Result<KrausChannel> {
        let (vals, vecs) = hermitian_eigen(&self.mat);
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -tol.eps_psd {
            return Err(Error::InvalidChoi(format!("negative eigenvalue {min:e}")));
        }
        let cutoff = tol.eps_rank * vals[0].max(0.0);
        let ops: Vec<CMatrix> = vals
            .iter()
            .enumerate()
            .take_while(|(_, &mu)| mu > cutoff)
            .map(|(j, &mu)| {
                let u = vecs.column(j).into_owned();
                unflatten_row_major(&u, self.d_out, self.d_in) * Complex64::new(mu.sqrt(), 0.0)
            })
            .collect();
        KrausChannel::with_tolerances(ops, tol)
    }

    /// Unitality read off the Choi operator: `Tr_ref R = I`.
    pub fn is_unital(&self, tol: &Tolerances) -> Result<bool> {
        if self.d_in != self.d_out {
            return Err(Error::Unsupported("unitality requires d_in = d_out".into()));
        }
        let defect = max_abs(&(partial_trace_second(&self.mat, self.d_out, self.d_in) - linalg::identity(self.d_out)));
        Ok(defect <= tol.eps_eq)
    }

    /// Frobenius distance to another Choi operator of the same shape.
    pub fn distance(&self, other: &ChoiOperator) -> f64 {
        linalg::frobenius(&(&self.mat - &other.mat))
    }
}
