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

//! Seeded generators of random-unitary test channels with known ground truth.

use num_complex::Complex64;
use rand::Rng;

use super::RuDecomposition;
use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::random::{flat_simplex, haar_unitary, rng_from_seed};
use crate::tolerance::Tolerances;

/// `K` Haar unitaries mixed with flat-simplex weights. Returns the Kraus form
/// `{√p_i U_i}` and the generating decomposition. Deterministic per seed.
pub fn generate_random_ru_channel(d: usize, k: usize, seed: u64) -> Result<(KrausChannel, RuDecomposition)> {
    if d == 0 || k == 0 || k > d * d {
        return Err(Error::OutOfRange(format!("need d >= 1 and 1 <= K <= d^2, got d = {d}, K = {k}")));
    }
    let mut rng = rng_from_seed(seed);
    let probs = flat_simplex(k, &mut rng);
    let unitaries = (0..k).map(|_| haar_unitary(d, &mut rng)).collect();
    finish(probs, unitaries)
}

/// A unital qubit channel: a Pauli channel with random support and weights,
/// sandwiched between two Haar rotations, `W_i = V_L σ_i V_R`.
pub fn generate_unital_qubit_channel(seed: u64) -> Result<(KrausChannel, RuDecomposition)> {
    let mut rng = rng_from_seed(seed);
    let support = rng.random_range(1..=4usize);
    let mut indices: Vec<usize> = (0..4).collect();
    for i in (1..4).rev() {
        indices.swap(i, rng.random_range(0..=i));
    }
    let weights = flat_simplex(support, &mut rng);
    let left = haar_unitary(2, &mut rng);
    let right = haar_unitary(2, &mut rng);
    let unitaries = indices[..support].iter().map(|&i| &left * linalg::pauli(i) * &right).collect();
    finish(weights, unitaries)
}

/// `n` unitaries sharing one commuting family, `V_L diag(e^{iφ}) V_R`, mixed
/// with flat-simplex weights. The Choi rank is at most `d`, so `n` may exceed
/// `rank²` while every term stays unitary.
pub fn generate_overcomplete_ru_channel(d: usize, n: usize, seed: u64) -> Result<(KrausChannel, RuDecomposition)> {
    if d == 0 || n == 0 {
        return Err(Error::OutOfRange(format!("need d >= 1 and n >= 1, got d = {d}, n = {n}")));
    }
    let mut rng = rng_from_seed(seed);
    let probs = flat_simplex(n, &mut rng);
    let left = haar_unitary(d, &mut rng);
    let right = haar_unitary(d, &mut rng);
    let unitaries = (0..n)
        .map(|_| {
            let phases = CMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
                } else {
                    linalg::ZERO
                }
            });
            &left * phases * &right
        })
        .collect();
    finish(probs, unitaries)
}

fn finish(probs: Vec<f64>, unitaries: Vec<CMatrix>) -> Result<(KrausChannel, RuDecomposition)> {
    let tol = Tolerances::default();
    let dec = RuDecomposition::new(probs, unitaries, &tol)?;
    let ch = dec.to_channel(&tol)?;
    Ok((ch, dec))
}
