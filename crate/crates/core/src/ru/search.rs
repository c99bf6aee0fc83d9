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

//! Numerical search for random-unitary decompositions.
//!
//! The unknown is an `r×N` matrix `M` with orthonormal rows (`MM† = I_r`)
//! whose columns are the vectors of a rank-one POVM on the canonical ancilla.
//! With `A_i = Σ_j conj(M_ji) K_j` the objective
//!
//! ```text
//! f(M) = Σ_i ‖A_i†A_i − (Tr[A_i†A_i]/d)·I‖_F²
//! ```
//!
//! vanishes exactly when every POVM element is mapped to a multiple of the
//! identity, and then `√p_i U_i = A_i` is a decomposition with `N` terms.
//! Each restart runs Riemannian gradient descent with Armijo backtracking and
//! a polar retraction, then a damped Gauss-Newton polish of the residuals.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RuDecomposition;
use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, frobenius, hermitian_part, polar_factor, CMatrix};
use crate::random::{derive_seed, random_coisometry, rng_from_seed};
use crate::tolerance::Tolerances;

/// Largest Frobenius distance between the Choi operators of the channel and
/// a reported decomposition.
pub const RECONSTRUCTION_LIMIT: f64 = 1e-6;

/// Descent hands over to the Gauss-Newton polish below this objective.
const POLISH_START: f64 = 1e-3;
const POLISH_ITERS: usize = 60;
const POLISH_TARGET: f64 = 1e-28;
const ARMIJO: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Candidate cardinalities tried in order; `None` means `r, r+1, ..., r²`.
    pub schedule: Option<Vec<usize>>,
    pub restarts: usize,
    pub max_iters: usize,
    pub step: f64,
    pub obj_tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { schedule: None, restarts: 20, max_iters: 5000, step: 0.1, obj_tol: 1e-12, seed: 0 }
    }
}

impl SearchConfig {
    fn schedule_for(&self, r: usize) -> Result<Vec<usize>> {
        if self.restarts == 0
            || self.max_iters == 0
            || self.step.is_nan()
            || self.step <= 0.0
            || self.obj_tol.is_nan()
            || self.obj_tol <= 0.0
        {
            return Err(Error::OutOfRange(format!("invalid search configuration {self:?}")));
        }
        match &self.schedule {
            None => Ok((r..=r * r).collect()),
            Some(list) => {
                if list.is_empty() || list.iter().any(|&n| n < r || n > r * r) {
                    return Err(Error::OutOfRange(format!(
                        "schedule {list:?} must be non-empty and within [{r}, {}]",
                        r * r
                    )));
                }
                Ok(list.clone())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NotFound,
    NotUnital,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartRecord {
    pub n: usize,
    pub restart: usize,
    pub objective: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub status: SearchStatus,
    pub decomposition: Option<RuDecomposition>,
    /// Choi rank `rank R_E`.
    pub rank: usize,
    /// `rank R_E`
    pub cardinality_bound_low: usize,
    /// `(rank R_E)²`
    pub cardinality_bound_high: usize,
    pub objective_trace: Vec<RestartRecord>,
    /// Smallest objective over all restarts (infinite if none ran).
    pub best_objective: f64,
    pub entropy_bits: Option<f64>,
    /// Frobenius distance between the channel's Choi operator and the
    /// decomposition's.
    pub residual: Option<f64>,
}

/// The dice objective `f(M)` for a fixed set of Kraus operators.
#[derive(Debug, Clone)]
pub struct DiceObjective {
    kraus: Vec<CMatrix>,
    d: usize,
}

impl DiceObjective {
    pub fn new(ch: &KrausChannel) -> Result<Self> {
        ch.require_square("the dice objective")?;
        Ok(DiceObjective { kraus: ch.ops().to_vec(), d: ch.d_in() })
    }

    /// Ancilla dimension `r`.
    pub fn ancilla_dim(&self) -> usize {
        self.kraus.len()
    }

    fn mixed(&self, m: &CMatrix, i: usize) -> CMatrix {
        crate::channel::mix_kraus(&self.kraus, m.column(i).iter().copied())
    }

    /// Traceless part of `A†A`.
    fn defect(&self, a: &CMatrix) -> CMatrix {
        let b = a.adjoint() * a;
        let shift = linalg::trace(&b) / Complex64::new(self.d as f64, 0.0);
        b - linalg::identity(self.d) * shift
    }

    pub fn value(&self, m: &CMatrix) -> f64 {
        (0..m.ncols()).map(|i| frobenius(&self.defect(&self.mixed(m, i))).powi(2)).sum()
    }

    /// Objective and Euclidean gradient with respect to the real inner
    /// product `Re Tr[G† dM]`: `G_ji = 4 Tr[C_i A_i† K_j]`.
    pub fn value_and_gradient(&self, m: &CMatrix) -> (f64, CMatrix) {
        let (r, n) = m.shape();
        let mut f = 0.0;
        let mut grad = CMatrix::zeros(r, n);
        for i in 0..n {
            let a = self.mixed(m, i);
            let c = self.defect(&a);
            f += frobenius(&c).powi(2);
            let ca = c * a.adjoint();
            for (j, k) in self.kraus.iter().enumerate() {
                // Tr[C A† K] = Σ_{pq} (C A†)_{pq} K_{qp}
                grad[(j, i)] = linalg::hs_inner(&ca.adjoint(), k) * Complex64::new(4.0, 0.0);
            }
        }
        (f, grad)
    }

    /// Projection of a Euclidean gradient onto the tangent space of the
    /// co-isometries at `m`: `G − sym(G M†) M`.
    pub fn riemannian_gradient(&self, m: &CMatrix, grad: &CMatrix) -> CMatrix {
        grad - hermitian_part(&(grad * m.adjoint())) * m
    }

    /// Stacked real residuals (traceless defects, then `MM† − I`) and their
    /// Jacobian with respect to `(Re M_ji, Im M_ji)`, column index
    /// `2 (j + r i) + {0, 1}`.
    fn residuals_and_jacobian(&self, m: &CMatrix) -> (DVector<f64>, DMatrix<f64>) {
        let (r, n) = m.shape();
        let d = self.d;
        let dd = d * d;
        let rows = 2 * n * dd + 2 * r * r;
        let mut res = DVector::zeros(rows);
        let mut jac = DMatrix::zeros(rows, 2 * r * n);
        let eye = linalg::identity(d);
        let units = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        for i in 0..n {
            let a = self.mixed(m, i);
            let c = self.defect(&a);
            let base = 2 * i * dd;
            for (idx, z) in c.iter().enumerate() {
                res[base + 2 * idx] = z.re;
                res[base + 2 * idx + 1] = z.im;
            }
            for (j, k) in self.kraus.iter().enumerate() {
                let x = a.adjoint() * k;
                for (s, e) in units.iter().enumerate() {
                    let db = x.adjoint() * *e + &x * e.conj();
                    let dc = &db - &eye * (linalg::trace(&db) / Complex64::new(d as f64, 0.0));
                    let col = 2 * (j + r * i) + s;
                    for (idx, z) in dc.iter().enumerate() {
                        jac[(base + 2 * idx, col)] = z.re;
                        jac[(base + 2 * idx + 1, col)] = z.im;
                    }
                }
            }
        }
        let q = m * m.adjoint() - linalg::identity(r);
        let qbase = 2 * n * dd;
        // column-major flat index of entry (a, b) is a + r b
        for (idx, z) in q.iter().enumerate() {
            res[qbase + 2 * idx] = z.re;
            res[qbase + 2 * idx + 1] = z.im;
        }
        for i in 0..n {
            for j in 0..r {
                for (s, e) in units.iter().enumerate() {
                    let col = 2 * (j + r * i) + s;
                    let mut dq = CMatrix::zeros(r, r);
                    for b in 0..r {
                        dq[(j, b)] += *e * m[(b, i)].conj();
                        dq[(b, j)] += m[(b, i)] * e.conj();
                    }
                    for (idx, z) in dq.iter().enumerate() {
                        jac[(qbase + 2 * idx, col)] = z.re;
                        jac[(qbase + 2 * idx + 1, col)] = z.im;
                    }
                }
            }
        }
        (res, jac)
    }

    /// Decomposition induced by the columns of `m`.
    pub fn extract(&self, m: &CMatrix, tol: &Tolerances) -> Result<RuDecomposition> {
        let mut probs = Vec::new();
        let mut unitaries = Vec::new();
        for i in 0..m.ncols() {
            let a = self.mixed(m, i);
            let p = linalg::trace(&(a.adjoint() * &a)).re / self.d as f64;
            if p > tol.eps_eq {
                probs.push(p);
                unitaries.push(polar_factor(&a));
            }
        }
        let total: f64 = probs.iter().sum();
        if probs.is_empty() {
            return Err(Error::NumericalFailure("all induced probabilities vanished".into()));
        }
        probs.iter_mut().for_each(|p| *p /= total);
        RuDecomposition::new(probs, unitaries, tol)
    }
}

struct RestartOutcome {
    m: CMatrix,
    objective: f64,
    iterations: usize,
}

fn descend(obj: &DiceObjective, mut m: CMatrix, cfg: &SearchConfig) -> RestartOutcome {
    let (mut f, mut grad) = obj.value_and_gradient(&m);
    let mut step = cfg.step;
    let mut iterations = 0;
    while iterations < cfg.max_iters && f >= POLISH_START.max(cfg.obj_tol) {
        iterations += 1;
        let xi = obj.riemannian_gradient(&m, &grad);
        let slope = frobenius(&xi).powi(2);
        if slope < 1e-30 {
            break;
        }
        let mut accepted = false;
        while step > 1e-14 {
            let trial = polar_factor(&(&m - &xi * Complex64::new(step, 0.0)));
            let ft = obj.value(&trial);
            if ft <= f - ARMIJO * step * slope {
                m = trial;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        let next = obj.value_and_gradient(&m);
        f = next.0;
        grad = next.1;
    }
    RestartOutcome { m, objective: f, iterations }
}

/// Levenberg-Marquardt on the stacked residuals, retracting each step.
fn polish(obj: &DiceObjective, start: RestartOutcome) -> RestartOutcome {
    let RestartOutcome { mut m, objective: mut f, iterations } = start;
    let (r, n) = m.shape();
    let mut mu: Option<f64> = None;
    for _ in 0..POLISH_ITERS {
        if f < POLISH_TARGET {
            break;
        }
        let (res, jac) = obj.residuals_and_jacobian(&m);
        let jtj = jac.transpose() * &jac;
        let rhs = -(jac.transpose() * &res);
        let damping = *mu.get_or_insert_with(|| 1e-6 * jtj.diagonal().max().max(1e-12));
        let mut system = jtj.clone();
        for k in 0..system.nrows() {
            system[(k, k)] += damping;
        }
        let Some(chol) = system.cholesky() else {
            mu = Some(damping * 10.0);
            continue;
        };
        let delta = chol.solve(&rhs);
        let step = CMatrix::from_fn(r, n, |j, i| {
            let col = 2 * (j + r * i);
            Complex64::new(delta[col], delta[col + 1])
        });
        let trial = polar_factor(&(&m + step));
        let ft = obj.value(&trial);
        if ft < f {
            m = trial;
            f = ft;
            mu = Some((damping / 3.0).max(1e-300));
        } else {
            mu = Some(damping * 4.0);
            if damping > 1e12 {
                break;
            }
        }
    }
    RestartOutcome { m, objective: f, iterations }
}

/// Searches for a random-unitary decomposition of `ch` with as few terms as
/// the schedule allows. `NotFound` never certifies that none exists.
pub fn search_decomposition(ch: &KrausChannel, cfg: &SearchConfig, tol: &Tolerances) -> Result<SearchReport> {
    ch.require_square("decomposition search")?;
    let choi = ch.to_choi();
    let rank = choi.rank(tol);
    let mut report = SearchReport {
        status: SearchStatus::NotUnital,
        decomposition: None,
        rank,
        cardinality_bound_low: rank,
        cardinality_bound_high: rank * rank,
        objective_trace: Vec::new(),
        best_objective: f64::INFINITY,
        entropy_bits: None,
        residual: None,
    };
    if !ch.is_unital(tol)? {
        return Ok(report);
    }
    report.status = SearchStatus::NotFound;
    let canonical = choi.canonical_kraus(tol)?;
    let obj = DiceObjective::new(&canonical)?;
    let r = obj.ancilla_dim();
    for n in cfg.schedule_for(r)? {
        for restart in 0..cfg.restarts {
            let seed = derive_seed(cfg.seed, ((n as u64) << 32) | restart as u64);
            let start = random_coisometry(r, n, &mut rng_from_seed(seed));
            let mut outcome = descend(&obj, start, cfg);
            if outcome.objective < POLISH_START.max(cfg.obj_tol) {
                outcome = polish(&obj, outcome);
            }
            report.objective_trace.push(RestartRecord {
                n,
                restart,
                objective: outcome.objective,
                iterations: outcome.iterations,
            });
            report.best_objective = report.best_objective.min(outcome.objective);
            if outcome.objective >= cfg.obj_tol {
                continue;
            }
            let Ok(dec) = obj.extract(&outcome.m, tol) else { continue };
            let residual = dec.to_choi().distance(&choi);
            if residual <= RECONSTRUCTION_LIMIT {
                report.status = SearchStatus::Found;
                report.entropy_bits = Some(dec.entropy_bits());
                report.residual = Some(residual);
                report.decomposition = Some(dec);
                return Ok(report);
            }
        }
    }
    Ok(report)
}
