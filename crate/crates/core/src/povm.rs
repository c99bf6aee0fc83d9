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

//! Rank-one POVMs on the ancilla: validation, extremality, and the
//! decomposition of a non-extremal POVM into extremal ones.
//!
//! A rank-one POVM is stored as its vectors `α_i`; the elements are
//! `|α_i⟩⟨α_i|`, so the squared norms carry the element weights. Such a POVM
//! is extremal iff its elements are linearly independent as Hermitian
//! operators, which caps the number of elements at `r²`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, max_abs, CMatrix, CVector};
use crate::random::random_coisometry;
use crate::tolerance::Tolerances;

/// Squared norms at or below this are treated as zero vectors.
const ZERO_VECTOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct RankOnePovm {
    r: usize,
    vectors: Vec<CVector>,
}

impl RankOnePovm {
    /// Collects the vectors of a candidate POVM on `C^r`. Zero vectors are
    /// dropped; completeness is not checked here (see [`RankOnePovm::is_valid`]).
    pub fn new(r: usize, vectors: Vec<CVector>) -> Result<Self> {
        if r == 0 {
            return Err(Error::OutOfRange("ancilla dimension must be positive".into()));
        }
        let mut kept = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            if v.len() != r {
                return Err(Error::DimensionMismatch(format!("POVM vector {i} has length {}, expected {r}", v.len())));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::RepresentationInvalid(format!("POVM vector {i} is not finite")));
            }
            if v.norm_squared() > ZERO_VECTOR {
                kept.push(v);
            }
        }
        Ok(RankOnePovm { r, vectors: kept })
    }

    /// The columns of an `r×N` matrix; a co-isometry gives a valid POVM.
    pub fn from_columns(m: &CMatrix) -> Result<Self> {
        let vectors = m.column_iter().map(|c| c.into_owned()).collect();
        Self::new(m.nrows(), vectors)
    }

    /// Random rank-one POVM with `n` elements: the columns of a random
    /// co-isometry.
    pub fn random<R: Rng + ?Sized>(r: usize, n: usize, rng: &mut R) -> Result<Self> {
        if n < r {
            return Err(Error::OutOfRange(format!("a POVM on C^{r} needs at least {r} elements")));
        }
        Self::from_columns(&random_coisometry(r, n, rng))
    }

    /// The standard-basis (von Neumann) measurement on `C^r`.
    pub fn von_neumann(r: usize) -> Self {
        let vectors =
            (0..r).map(|i| CVector::from_fn(r, |k, _| if k == i { linalg::ONE } else { linalg::ZERO })).collect();
        RankOnePovm { r, vectors }
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn weights(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| v.norm_squared()).collect()
    }

    pub fn element(&self, i: usize) -> CMatrix {
        let v = &self.vectors[i];
        v * v.adjoint()
    }

    /// `Σ_i |α_i⟩⟨α_i|`.
    pub fn element_sum(&self) -> CMatrix {
        self.vectors.iter().fold(CMatrix::zeros(self.r, self.r), |acc, v| acc + v * v.adjoint())
    }

    /// Completeness `Σ_i |α_i⟩⟨α_i| = I` within `eps_eq`.
    pub fn is_valid(&self, tol: &Tolerances) -> bool {
        !self.vectors.is_empty() && max_abs(&(self.element_sum() - linalg::identity(self.r))) <= tol.eps_eq
    }

    /// Elements `|α_i⟩⟨α_i|` as columns of a real `r² × N` matrix, each
    /// column scaled to unit norm. Returns the matrix and the column norms.
    fn coefficient_matrix(&self, rows: usize) -> (DMatrix<f64>, Vec<f64>) {
        let r = self.r;
        let n = self.vectors.len();
        let mut m = DMatrix::<f64>::zeros(rows.max(r * r), n);
        let mut norms = Vec::with_capacity(n);
        let s2 = std::f64::consts::SQRT_2;
        for (col, v) in self.vectors.iter().enumerate() {
            let mut row = 0;
            for a in 0..r {
                m[(row, col)] = v[a].norm_sqr();
                row += 1;
            }
            for a in 0..r {
                for b in (a + 1)..r {
                    let h = v[a] * v[b].conj();
                    m[(row, col)] = s2 * h.re;
                    m[(row + 1, col)] = s2 * h.im;
                    row += 2;
                }
            }
            // the embedding is an isometry, so this is the Frobenius norm of the element
            let norm = v.norm_squared();
            m.column_mut(col).scale_mut(1.0 / norm);
            norms.push(norm);
        }
        (m, norms)
    }

    /// Real rank of the element family.
    fn element_rank(&self, tol: &Tolerances) -> usize {
        let (m, _) = self.coefficient_matrix(0);
        let sv = linalg::singular_values_real(&m);
        let max = sv.iter().copied().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > tol.eps_rank * max).count()
    }

    /// Extremality: the `N` elements are real-linearly independent. Always
    /// false when `N > r²`.
    pub fn is_extremal(&self, tol: &Tolerances) -> bool {
        let n = self.vectors.len();
        n <= self.r * self.r && self.element_rank(tol) == n
    }

    /// A real `c ≠ 0` with `Σ_i c_i |α_i⟩⟨α_i| = 0` and `‖c‖_∞ = 1`, or
    /// `None` when the POVM is extremal. The direction is the right singular
    /// vector of the smallest singular value of the coefficient matrix.
    pub fn find_null_combination(&self, tol: &Tolerances) -> Option<Vec<f64>> {
        if self.is_extremal(tol) {
            return None;
        }
        let n = self.vectors.len();
        // pad to at least N rows so the SVD returns a full set of right vectors
        let (m, norms) = self.coefficient_matrix(n);
        let svd = m.svd(false, true);
        let v_t = svd.v_t.expect("svd computed with v_t");
        let (k, _) = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty POVM");
        let mut c: Vec<f64> = (0..n).map(|i| v_t[(k, i)] / norms[i]).collect();
        let scale = c.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        if scale == 0.0 {
            return None;
        }
        c.iter_mut().for_each(|x| *x /= scale);
        Some(c)
    }

    /// Elementwise residual `max_abs(Σ_i c_i |α_i⟩⟨α_i|)`.
    pub fn combination_residual(&self, c: &[f64]) -> f64 {
        let sum = self
            .vectors
            .iter()
            .zip(c)
            .fold(CMatrix::zeros(self.r, self.r), |acc, (v, &ci)| acc + v * v.adjoint() * Complex64::new(ci, 0.0));
        max_abs(&sum)
    }

    /// Rescales element `i` by `factors[i] ≥ 0`, dropping elements whose
    /// new weight falls below `eps_eq` (and every index in `force_zero`).
    fn rescaled(&self, factors: &[f64], force_zero: usize, tol: &Tolerances) -> (RankOnePovm, Vec<usize>) {
        let mut vectors = Vec::new();
        let mut support = Vec::new();
        for (i, (v, &f)) in self.vectors.iter().zip(factors).enumerate() {
            if i == force_zero || f <= 0.0 || f * v.norm_squared() < tol.eps_eq {
                continue;
            }
            vectors.push(v * Complex64::new(f.sqrt(), 0.0));
            support.push(i);
        }
        (RankOnePovm { r: self.r, vectors }, support)
    }
}

/// One two-term convex split `α_iα_i† = λ P_i + (1 − λ) Q_i`.
#[derive(Debug, Clone)]
pub struct ConvexSplit {
    pub lambda: f64,
    pub first: RankOnePovm,
    pub second: RankOnePovm,
    /// Index of each element of `first` in the split POVM.
    pub first_support: Vec<usize>,
    pub second_support: Vec<usize>,
}

/// Splits `p` along the null combination `c` as far as positivity allows in
/// both directions: `P_i = (1 + t⁺c_i)|α_i⟩⟨α_i|`, `Q_i = (1 − t⁻c_i)|α_i⟩⟨α_i|`
/// with `λ = t⁻ / (t⁺ + t⁻)`. Each side loses at least one element.
pub fn extremal_split_once(p: &RankOnePovm, c: &[f64], tol: &Tolerances) -> Result<ConvexSplit> {
    if c.len() != p.len() {
        return Err(Error::DimensionMismatch(format!(
            "null combination has length {}, POVM has {} elements",
            c.len(),
            p.len()
        )));
    }
    // t⁺ is limited by the most negative entries, t⁻ by the most positive
    let (plus_idx, t_plus) = c
        .iter()
        .enumerate()
        .filter(|(_, &ci)| ci < 0.0)
        .map(|(i, &ci)| (i, -1.0 / ci))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::UnboundedDirection("negative"))?;
    let (minus_idx, t_minus) = c
        .iter()
        .enumerate()
        .filter(|(_, &ci)| ci > 0.0)
        .map(|(i, &ci)| (i, 1.0 / ci))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::UnboundedDirection("positive"))?;

    let up: Vec<f64> = c.iter().map(|ci| 1.0 + t_plus * ci).collect();
    let down: Vec<f64> = c.iter().map(|ci| 1.0 - t_minus * ci).collect();
    let (first, first_support) = p.rescaled(&up, plus_idx, tol);
    let (second, second_support) = p.rescaled(&down, minus_idx, tol);
    Ok(ConvexSplit { lambda: t_minus / (t_plus + t_minus), first, second, first_support, second_support })
}

/// Convex decomposition of a rank-one POVM into extremal rank-one POVMs whose
/// elements are nonnegative multiples of the original ones.
#[derive(Debug, Clone)]
pub struct ExtremalSplit {
    pub weights: Vec<f64>,
    pub components: Vec<RankOnePovm>,
    /// For each component, the original index of each of its elements.
    pub support_maps: Vec<Vec<usize>>,
}

impl ExtremalSplit {
    /// `Σ_k w_k · component_k`, as elements indexed like the original POVM.
    pub fn recombine(&self, r: usize, n: usize) -> Vec<CMatrix> {
        let mut out = vec![CMatrix::zeros(r, r); n];
        for ((w, comp), map) in self.weights.iter().zip(&self.components).zip(&self.support_maps) {
            for (k, &orig) in map.iter().enumerate() {
                out[orig] += comp.element(k) * Complex64::new(*w, 0.0);
            }
        }
        out
    }

    /// Largest elementwise deviation between the recombination and `original`.
    pub fn reconstruction_error(&self, original: &RankOnePovm) -> f64 {
        self.recombine(original.dim(), original.len())
            .iter()
            .enumerate()
            .map(|(i, m)| max_abs(&(m - original.element(i))))
            .fold(0.0, f64::max)
    }

    /// Index of the component with the largest weight (lowest index on ties).
    pub fn heaviest(&self) -> usize {
        let mut best = 0;
        for (k, w) in self.weights.iter().enumerate() {
            if *w > self.weights[best] {
                best = k;
            }
        }
        best
    }
}

/// Decomposes a valid rank-one POVM into extremal components.
///
/// Each step is a binary split `p = λ·E + (1 − λ)·Q` where `E` is an extremal
/// POVM supported inside `p`, found by following the first branch of
/// repeated [`extremal_split_once`] calls. `Q` loses at least one element, so
/// the chain ends after at most `N − r` steps with an extremal remainder.
pub fn extremal_decompose(p: &RankOnePovm, tol: &Tolerances) -> Result<ExtremalSplit> {
    if !p.is_valid(tol) {
        return Err(Error::Precondition("POVM does not resolve the identity".into()));
    }
    let max_steps = p.len().saturating_sub(p.dim());
    let mut weights = Vec::new();
    let mut components = Vec::new();
    let mut support_maps = Vec::new();

    let mut current = p.clone();
    let mut support: Vec<usize> = (0..p.len()).collect();
    let mut remaining = 1.0;
    let mut steps = 0;
    while let Some(c0) = current.find_null_combination(tol) {
        steps += 1;
        if steps > max_steps {
            return Err(Error::NumericalFailure(format!(
                "extremal decomposition did not terminate within {max_steps} splits"
            )));
        }
        let c = direction_to_extremal_face(&current, c0, max_steps, tol)?;
        let split = extremal_split_once(&current, &c, tol)?;
        weights.push(remaining * split.lambda);
        support_maps.push(split.first_support.iter().map(|&i| support[i]).collect());
        components.push(split.first);
        remaining *= 1.0 - split.lambda;
        support = split.second_support.iter().map(|&i| support[i]).collect();
        current = split.second;
    }
    weights.push(remaining);
    components.push(current);
    support_maps.push(support);
    Ok(ExtremalSplit { weights, components, support_maps })
}

/// Follows the first branch of successive splits down to an extremal POVM
/// `E` and returns the null combination of `p` pointing at it:
/// `s_i = w_i(E) / w_i(p) − 1`, scaled to `‖s‖_∞ = 1`.
fn direction_to_extremal_face(p: &RankOnePovm, c0: Vec<f64>, max_steps: usize, tol: &Tolerances) -> Result<Vec<f64>> {
    let mut face = p.clone();
    let mut support: Vec<usize> = (0..p.len()).collect();
    let mut c = c0;
    for _ in 0..=max_steps {
        let split = extremal_split_once(&face, &c, tol)?;
        support = split.first_support.iter().map(|&i| support[i]).collect();
        face = split.first;
        match face.find_null_combination(tol) {
            Some(next) => c = next,
            None => {
                let base = p.weights();
                let mut s = vec![-1.0; p.len()];
                for (k, &i) in support.iter().enumerate() {
                    s[i] = face.vectors[k].norm_squared() / base[i] - 1.0;
                }
                let scale = s.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
                return Ok(s.into_iter().map(|x| x / scale).collect());
            }
        }
    }
    Err(Error::NumericalFailure("descent to an extremal face did not terminate".into()))
}

/// Checks whether the dual complementary channel maps every element of `p` to
/// a multiple of the identity, `Ẽ*(|α_i⟩⟨α_i|) = p_i I`, and returns the
/// `p_i` if so. `p` must live on the ancilla spanned by `ch`'s Kraus operators.
pub fn check_dice_condition(ch: &KrausChannel, p: &RankOnePovm, tol: &Tolerances) -> Result<Option<Vec<f64>>> {
    if p.dim() != ch.num_ops() {
        return Err(Error::DimensionMismatch(format!(
            "POVM lives on C^{}, channel has {} Kraus operators",
            p.dim(),
            ch.num_ops()
        )));
    }
    ch.require_square("the dice condition")?;
    let d = ch.d_in();
    let id = linalg::identity(d);
    let mut probs = Vec::with_capacity(p.len());
    for alpha in p.vectors() {
        let b = ch.dual_apply(alpha)?;
        let pi = linalg::trace(&b).re / d as f64;
        if max_abs(&(b - &id * Complex64::new(pi, 0.0))) > tol.eps_eq {
            return Ok(None);
        }
        probs.push(pi);
    }
    Ok(Some(probs))
}
