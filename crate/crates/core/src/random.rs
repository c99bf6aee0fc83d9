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

//! Seeded samplers: Ginibre matrices, Haar unitaries, the flat simplex.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::channel::KrausChannel;
use crate::linalg::{hermitian_eigen, polar_factor, CMatrix, CVector};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream index (splitmix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard complex normal sample, `E|z|² = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-distributed `d×d` unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(d, d, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-random unit vector in `C^d`.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    CVector::from_fn(d, |_, _| complex_normal(rng)).normalize()
}

/// Uniform sample from the probability simplex with `k` entries
/// (normalized i.i.d. exponentials, i.e. Dirichlet(1, ..., 1)).
pub fn flat_simplex<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Random `r×n` matrix with orthonormal rows (`r ≤ n`).
pub fn random_coisometry<R: Rng + ?Sized>(r: usize, n: usize, rng: &mut R) -> CMatrix {
    polar_factor(&ginibre(r, n, rng))
}

/// Random channel with `m` Kraus operators on `C^d`: Ginibre operators
/// `G_j` normalized as `K_j = G_j S^{-1/2}` with `S = Σ_j G_j† G_j`.
pub fn random_kraus_channel<R: Rng + ?Sized>(d: usize, m: usize, rng: &mut R) -> KrausChannel {
    let raw: Vec<CMatrix> = (0..m.max(1)).map(|_| ginibre(d, d, rng)).collect();
    let s = crate::linalg::sum_kdag_k(&raw);
    let (vals, vecs) = hermitian_eigen(&s);
    let inv_sqrt =
        CMatrix::from_diagonal(&CVector::from_iterator(d, vals.iter().map(|&v| Complex64::new(1.0 / v.sqrt(), 0.0))));
    let s_inv_sqrt = &vecs * inv_sqrt * vecs.adjoint();
    KrausChannel::new(raw.iter().map(|g| g * &s_inv_sqrt).collect()).expect("normalized Kraus operators are complete")
}
