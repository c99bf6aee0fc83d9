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

//! Acceptance suite. Prints one `[PASS]` / `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use ruchan::correction::haar_pure_states;
use ruchan::linalg::{self, max_abs, CMatrix, CVector};
use ruchan::povm::check_dice_condition;
use ruchan::random::{complex_normal, random_coisometry, random_kraus_channel, rng_from_seed};
use ruchan::ru::{
    ancilla_vectors, decomposition_from_povm, entropy_and_bounds, generate_overcomplete_ru_channel,
    generate_random_ru_channel, generate_unital_qubit_channel, pauli_decompose_qubit, reduce_cardinality,
    search_decomposition, DiceObjective,
};
use ruchan::{
    extremal_decompose, simulate_correction, DensityMatrix, KrausChannel, RankOnePovm, RuDecomposition, SearchConfig,
    SearchStatus, Tolerances,
};

fn verdict(id: &str, name: &str, pass: bool, detail: String, elapsed: Duration, budget: Duration) -> bool {
    let in_time = elapsed <= budget;
    let ok = pass && in_time;
    println!(
        "[{}] {id}: {name} ({detail}; {:.2}s of {:.0}s budget)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    ok
}

fn basis_op(d: usize, k: usize, l: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(k, l)] = linalg::ONE;
    m
}

/// Decomposition used by the pipeline: closed form for qubits, search otherwise.
fn pipeline_decompose(ch: &KrausChannel, tol: &Tolerances) -> Option<RuDecomposition> {
    if ch.d_in() == 2 {
        pauli_decompose_qubit(ch, tol).ok()
    } else {
        let report = search_decomposition(ch, &SearchConfig::default(), tol).unwrap();
        report.decomposition
    }
}

fn ac1_representation_round_trip() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut rng = rng_from_seed(1001);
    let mut worst_action = 0.0_f64;
    let mut worst_orth = 0.0_f64;
    for trial in 0..200 {
        let d = [2, 3, 4][trial % 3];
        let m = rng.random_range(1..=d * d);
        let ch = random_kraus_channel(d, m, &mut rng);
        let canonical = ch.to_choi().canonical_kraus(&tol).unwrap();
        for k in 0..d {
            for l in 0..d {
                let x = basis_op(d, k, l);
                worst_action = worst_action.max(max_abs(&(ch.apply_operator(&x) - canonical.apply_operator(&x))));
            }
        }
        for (j, a) in canonical.ops().iter().enumerate() {
            for b in &canonical.ops()[j + 1..] {
                worst_orth = worst_orth.max(linalg::hs_inner(a, b).norm());
            }
        }
    }
    let ok = verdict(
        "AC-1",
        "Kraus -> Choi -> canonical Kraus round trip",
        worst_action <= 1e-9 && worst_orth <= 1e-9,
        format!("max action error {worst_action:.2e}, max |Tr K_j†K_l| {worst_orth:.2e}"),
        start.elapsed(),
        Duration::from_secs(30),
    );
    ok
}

fn ac2_cardinality_window() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut rank_ok = 0;
    let mut window_ok = 0;
    let mut found = 0;
    let mut worst_residual = 0.0_f64;
    let mut total = 0;
    for d in [2usize, 3] {
        let mut rng = rng_from_seed(2000 + d as u64);
        for i in 0..100 {
            total += 1;
            let k = rng.random_range(1..=d * d);
            let (ch, truth) = generate_random_ru_channel(d, k, 20_000 + 1000 * d as u64 + i).unwrap();
            let choi = ch.to_choi();
            let rank = choi.rank(&tol);
            if rank <= truth.len() {
                rank_ok += 1;
            }
            if let Some(dec) = pipeline_decompose(&ch, &tol) {
                found += 1;
                let residual = dec.to_choi().distance(&choi);
                worst_residual = worst_residual.max(residual);
                if dec.len() >= rank && dec.len() <= rank * rank && residual <= 1e-6 {
                    window_ok += 1;
                }
            } else {
                println!("  no decomposition for d = {d}, K = {k}, instance {i}");
            }
        }
    }
    let ok = verdict(
        "AC-2",
        "rank R_E <= K <= (rank R_E)^2 on generated channels",
        rank_ok == total && window_ok == found && found == total,
        format!(
            "rank <= K_true in {rank_ok}/{total}, found {found}/{total}, in window {window_ok}/{found}, worst residual {worst_residual:.2e}"
        ),
        start.elapsed(),
        Duration::from_secs(600),
    );
    ok
}

fn ac3_qubit_equality() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut equal = 0;
    let mut worst = 0.0_f64;
    for seed in 0..100 {
        let (ch, _) = generate_unital_qubit_channel(3000 + seed).unwrap();
        let dec = pauli_decompose_qubit(&ch, &tol).unwrap();
        let choi = ch.to_choi();
        if dec.len() == choi.rank(&tol) {
            equal += 1;
        }
        worst = worst.max(dec.to_choi().distance(&choi));
    }
    let ok = verdict(
        "AC-3",
        "qubit Pauli form has K = rank R_E",
        equal == 100 && worst <= 1e-9,
        format!("K = rank in {equal}/100, worst residual {worst:.2e}"),
        start.elapsed(),
        Duration::from_secs(5),
    );
    ok
}

fn ac4_extremal_decomposition() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut rng = rng_from_seed(4000);
    let mut worst_recon = 0.0_f64;
    let mut bad_components = 0;
    for trial in 0..50 {
        let r = [2usize, 3][trial % 2];
        let n = rng.random_range(r * r + 1..=3 * r * r);
        let povm = RankOnePovm::random(r, n, &mut rng).unwrap();
        let split = extremal_decompose(&povm, &tol).unwrap();
        worst_recon = worst_recon.max(split.reconstruction_error(&povm));
        bad_components += split.components.iter().filter(|c| c.len() > r * r || !c.is_extremal(&tol)).count();
    }

    let mut heredity_failures = 0;
    let mut worst_channel = 0.0_f64;
    for trial in 0..50u64 {
        let d = [2usize, 3][trial as usize % 2];
        let n = rng.random_range(d * d + 1..=3 * d * d);
        let (ch, dec) = generate_overcomplete_ru_channel(d, n, 4100 + trial).unwrap();
        let choi = ch.to_choi();
        let canonical = choi.canonical_kraus(&tol).unwrap();
        let r = canonical.num_ops();
        let (vectors, _) = ancilla_vectors(&canonical, &dec).unwrap();
        let povm = RankOnePovm::new(r, vectors).unwrap();
        assert!(povm.len() > r * r, "instance must exceed the extremal bound");
        assert!(check_dice_condition(&canonical, &povm, &tol).unwrap().is_some());
        let split = extremal_decompose(&povm, &tol).unwrap();
        for comp in &split.components {
            let dice = check_dice_condition(&canonical, comp, &tol).unwrap();
            match (dice, decomposition_from_povm(&canonical, comp, &tol)) {
                (Some(_), Ok(sub)) => {
                    let dist = sub.to_choi().distance(&choi);
                    worst_channel = worst_channel.max(dist);
                    if dist > 1e-8 {
                        heredity_failures += 1;
                    }
                }
                _ => heredity_failures += 1,
            }
        }
    }
    let ok = verdict(
        "AC-4",
        "extremal decomposition and dice-condition heredity",
        worst_recon <= 1e-9 && bad_components == 0 && heredity_failures == 0 && worst_channel <= 1e-8,
        format!(
            "worst reconstruction {worst_recon:.2e}, oversized/non-extremal components {bad_components}, \
             heredity failures {heredity_failures}, worst component channel error {worst_channel:.2e}"
        ),
        start.elapsed(),
        Duration::from_secs(60),
    );
    ok
}

fn ac5_entropy_bounds() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut checked = 0;
    let mut violations = 0;
    let mut check = |dec: &RuDecomposition, ch: &KrausChannel| {
        let b = entropy_and_bounds(dec, &ch.to_choi(), &tol);
        checked += 1;
        if !(b.ok && b.h_bits <= b.bound_rank + 1e-9 && b.h_bits <= b.bound_dim + 1e-9) {
            violations += 1;
        }
    };
    for seed in 0..40 {
        let (ch, _) = generate_unital_qubit_channel(5000 + seed).unwrap();
        check(&pauli_decompose_qubit(&ch, &tol).unwrap(), &ch);
    }
    for k in 1..=4 {
        let (ch, _) = generate_random_ru_channel(3, k, 5100 + k as u64).unwrap();
        let dec = pipeline_decompose(&ch, &tol).expect("search finds generated channel");
        check(&dec, &ch);
    }
    for seed in 0..10 {
        let (ch, dec) = generate_overcomplete_ru_channel(3, 12, 5200 + seed).unwrap();
        let canonical = ch.to_choi().canonical_kraus(&tol).unwrap();
        let (vectors, _) = ancilla_vectors(&canonical, &dec).unwrap();
        let povm = RankOnePovm::new(canonical.num_ops(), vectors).unwrap();
        check(&reduce_cardinality(&canonical, &povm, &tol).unwrap(), &ch);
    }
    let adversarial = RuDecomposition::new(vec![1.0 / 16.0; 16], vec![linalg::identity(2); 16], &tol).unwrap();
    let flagged = entropy_and_bounds(&adversarial, &KrausChannel::identity(2).to_choi(), &tol);
    let ok = verdict(
        "AC-5",
        "H(p) <= 2 log2 rank and H(p) <= 4 log2 d",
        violations == 0 && !flagged.ok && flagged.h_bits > flagged.bound_rank,
        format!(
            "{violations} violations in {checked} pipeline decompositions; 16-way identity split H = {:.3} bits, ok = {}",
            flagged.h_bits, flagged.ok
        ),
        start.elapsed(),
        Duration::from_secs(5),
    );
    ok
}

fn ac6_environment_assisted_correction() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut worst_fidelity = f64::INFINITY;
    let mut worst_deviation = 0.0_f64;
    let mut pairs = 0;
    for i in 0..50u64 {
        let (ch, d) = if i % 2 == 0 {
            (generate_unital_qubit_channel(6000 + i).unwrap().0, 2)
        } else {
            let k = 1 + (i as usize / 2) % 9;
            (generate_random_ru_channel(3, k, 6000 + i).unwrap().0, 3)
        };
        let dec = pipeline_decompose(&ch, &tol).expect("pipeline decomposition");
        let states = haar_pure_states(d, 100, 6500 + i);
        let report = simulate_correction(&ch, &dec, &states, i, &tol).unwrap();
        worst_fidelity = worst_fidelity.min(report.worst_fidelity);
        worst_deviation = worst_deviation.max(report.max_weight_deviation);
        pairs += 1;
    }
    let ok = verdict(
        "AC-6",
        "perfect correction from the environment measurement",
        worst_fidelity >= 1.0 - 1e-9 && worst_deviation <= 1e-9,
        format!(
            "{pairs} pairs x 100 inputs, worst fidelity 1 - {:.2e}, max |w_i - p_i| {worst_deviation:.2e}",
            1.0 - worst_fidelity
        ),
        start.elapsed(),
        Duration::from_secs(60),
    );
    ok
}

fn ac7_non_unital_negative_controls() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut gated = 0;
    for i in 1..=20 {
        let gamma = i as f64 / 20.0;
        let ch = KrausChannel::amplitude_damping(gamma).unwrap();
        let report = search_decomposition(&ch, &SearchConfig::default(), &tol).unwrap();
        if report.status == SearchStatus::NotUnital && report.decomposition.is_none() {
            gated += 1;
        }
    }
    let ok = verdict(
        "AC-7",
        "amplitude damping is reported not_unital",
        gated == 20,
        format!("{gated}/20 gated"),
        start.elapsed(),
        Duration::from_secs(5),
    );
    ok
}

/// Brute-force `⟨α| Tr_sys[V ρ V†] |α⟩` from an explicitly indexed dilation.
fn dilation_oracle(ch: &KrausChannel, alpha: &CVector, rho: &CMatrix) -> Complex64 {
    let (d, r) = (ch.d_in(), ch.num_ops());
    let mut v = vec![vec![linalg::ZERO; d]; d * r];
    for (j, k) in ch.ops().iter().enumerate() {
        for a in 0..d {
            for b in 0..d {
                v[a * r + j][b] = k[(a, b)];
            }
        }
    }
    let mut anc = vec![vec![linalg::ZERO; r]; r];
    for j in 0..r {
        for l in 0..r {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        anc[j][l] += v[a * r + j][b] * rho[(b, c)] * v[a * r + l][c].conj();
                    }
                }
            }
        }
    }
    let mut out = linalg::ZERO;
    for j in 0..r {
        for l in 0..r {
            out += alpha[j].conj() * anc[j][l] * alpha[l];
        }
    }
    out
}

fn ac8_numerical_self_checks() -> bool {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut rng = rng_from_seed(8000);

    let mut worst_grad = 0.0_f64;
    let mut worst_riem = 0.0_f64;
    for point in 0..20 {
        let d = [2usize, 3][point % 2];
        let ch = random_kraus_channel(d, rng.random_range(2..=d * d), &mut rng);
        let canonical = ch.to_choi().canonical_kraus(&tol).unwrap();
        let obj = DiceObjective::new(&canonical).unwrap();
        let r = obj.ancilla_dim();
        let n = rng.random_range(r..=r * r);
        let m = random_coisometry(r, n, &mut rng);
        let (_, grad) = obj.value_and_gradient(&m);
        let h = 1e-6;
        let mut fd = CMatrix::zeros(r, n);
        for j in 0..r {
            for i in 0..n {
                for unit in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                    let mut dir = CMatrix::zeros(r, n);
                    dir[(j, i)] = unit;
                    let plus = obj.value(&(&m + &dir * Complex64::new(h, 0.0)));
                    let minus = obj.value(&(&m - &dir * Complex64::new(h, 0.0)));
                    fd[(j, i)] += unit * ((plus - minus) / (2.0 * h));
                }
            }
        }
        worst_grad = worst_grad.max(linalg::frobenius(&(&fd - &grad)) / linalg::frobenius(&grad));

        // Riemannian gradient against the retracted objective along a tangent direction
        let xi = obj.riemannian_gradient(&m, &grad);
        let raw = CMatrix::from_fn(r, n, |_, _| complex_normal(&mut rng));
        let tangent = obj.riemannian_gradient(&m, &raw);
        let retract = |t: f64| obj.value(&linalg::polar_factor(&(&m + &tangent * Complex64::new(t, 0.0))));
        let directional = (retract(h) - retract(-h)) / (2.0 * h);
        let analytic = linalg::hs_inner(&xi, &tangent).re;
        worst_riem = worst_riem.max((directional - analytic).abs() / analytic.abs().max(1e-12));
    }

    let mut worst_dual = 0.0_f64;
    for _ in 0..100 {
        let d = rng.random_range(2..=3usize);
        let ch = random_kraus_channel(d, rng.random_range(1..=d * d), &mut rng);
        let alpha = CVector::from_fn(ch.num_ops(), |_, _| complex_normal(&mut rng));
        let psi = CVector::from_fn(d, |_, _| complex_normal(&mut rng));
        let mix = CVector::from_fn(d, |_, _| complex_normal(&mut rng));
        let rho = DensityMatrix::new(
            (DensityMatrix::pure(&psi).into_matrix() + DensityMatrix::pure(&mix).into_matrix())
                * Complex64::new(0.5, 0.0),
            &tol,
        )
        .unwrap();
        let lhs = linalg::trace(&(ch.dual_apply(&alpha).unwrap() * rho.matrix()));
        let via_complement = {
            let comp = ch.complementary_apply(&rho).unwrap();
            (alpha.adjoint() * comp.matrix() * &alpha)[(0, 0)]
        };
        let rhs = dilation_oracle(&ch, &alpha, rho.matrix());
        worst_dual = worst_dual.max((lhs - rhs).norm()).max((lhs - via_complement).norm());
    }

    let ok = verdict(
        "AC-8",
        "gradient vs finite differences, dual vs dilation oracle",
        worst_grad <= 1e-5 && worst_riem <= 1e-5 && worst_dual <= 1e-10,
        format!(
            "gradient rel. error {worst_grad:.2e}, retracted directional rel. error {worst_riem:.2e}, dual error {worst_dual:.2e}"
        ),
        start.elapsed(),
        Duration::from_secs(60),
    );
    ok
}

fn main() -> std::process::ExitCode {
    let criteria: [fn() -> bool; 8] = [
        ac1_representation_round_trip,
        ac2_cardinality_window,
        ac3_qubit_equality,
        ac4_extremal_decomposition,
        ac5_entropy_bounds,
        ac6_environment_assisted_correction,
        ac7_non_unital_negative_controls,
        ac8_numerical_self_checks,
    ];
    let failed = criteria.iter().filter(|run| !run()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
