//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`; a failed assertion also shows
//! it).  Every check is exact integer arithmetic with zero tolerance.

use num_bigint::BigInt;
use parhilb::cells;
use parhilb::fock::{fock_character, verify_heisenberg, CohModel};
use parhilb::genfun::{
    admissible_vectors, goettsche_series, parabolic_poincare_series, verify_cell_vs_product,
    BettiData,
};
use parhilb::lattice::{
    mu, shift_index, verify_dimension_lemmas, IndexVector, ShiftConvention, Window,
};
use parhilb::poly::UniPoly;
use parhilb::series::TruncationOrder;
use parhilb::weights::verify_coherence;
use std::collections::BTreeMap;

fn report(number: u32, name: &str, passed: bool) {
    println!(
        "criterion {number} ({name}): {}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {number} ({name}) failed");
}

/// All integer partitions of `n`, as non-increasing part lists.
fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_1_classical_reduction() {
    let expected_p = [1usize, 1, 2, 3, 5, 7, 11, 15];
    let mut ok = true;
    for (n, &p) in expected_p.iter().enumerate() {
        let v = IndexVector::from_entries([(0, n as i64)]);
        let labels = cells::enumerate_labels(&v);
        ok &= labels.len() == p;
        // Independent oracle: Σ_λ z^{2(n−ℓ(λ))} over partitions of n.
        let mut oracle = UniPoly::zero();
        for lambda in partitions(n as i64) {
            oracle.add_term(BigInt::from(1), 2 * (n as u32 - lambda.len() as u32));
        }
        ok &= cells::punctual_poincare(&v) == oracle;
    }
    let order = TruncationOrder::new(2, []);
    let series = goettsche_series(&[1, 0, 1, 0, 1], &order);
    let c = series
        .coefficient(&IndexVector::from_entries([(0, 2)]))
        .unwrap();
    ok &= c.display("z") == "1+2z^2+3z^4+2z^6+z^8";
    report(1, "classical reduction", ok);
}

#[test]
fn criterion_2_dual_path_punctual_identity() {
    let window = Window::new(-2, 3).unwrap();
    let report_inner = verify_cell_vs_product(&window, 5);
    let ok = report_inner.passed() && report_inner.cases >= 2000;
    report(2, "dual-path punctual identity", ok);
}

#[test]
fn criterion_3_tangent_weight_coherence() {
    let window = Window::new(-2, 3).unwrap();
    let r = verify_coherence(&window, 4, 2);
    let ok = r.passed() && r.labels_checked > 1000;
    report(3, "tangent-weight coherence", ok);
}

#[test]
fn criterion_4_dimension_estimate_lemmas() {
    let r = verify_dimension_lemmas(4);
    let ok = r.passed() && r.single_cases > 0 && r.pair_cases > 0;
    report(4, "dimension-estimate lemmas", ok);
}

#[test]
fn criterion_5_heisenberg_relations() {
    let mut ok = true;
    // μ(m·e₀) = (−1)^{m−1}·m.
    for m in 1..=6i64 {
        let expected = if m % 2 == 1 { m } else { -m };
        ok &= mu(&IndexVector::from_entries([(0, m)])).unwrap() == expected;
    }
    let gen_order = TruncationOrder::for_window(4, -2, 3, 1);
    let state_order = TruncationOrder::for_window(2, -2, 3, 1);
    for divisor in [[1u32, 0, 1], [1, 2, 1]] {
        let betti = BettiData {
            surface: [1, 0, 1, 0, 1],
            divisor,
        };
        let model = CohModel::hyperbolic(&betti).unwrap();
        let r = verify_heisenberg(&model, &gen_order, &state_order);
        ok &= r.passed() && r.generator_pairs > 1000;
    }
    report(5, "Heisenberg relations", ok);
}

#[test]
fn criterion_6_character_identity() {
    let window = Window::new(-2, 3).unwrap();
    let order = TruncationOrder::for_window(3, window.lo, window.hi, 2);
    let mut ok = true;
    for divisor in [[1u32, 0, 1], [1, 2, 1]] {
        let betti = BettiData {
            surface: [1, 0, 1, 0, 1],
            divisor,
        };
        let model = CohModel::hyperbolic(&betti).unwrap();
        ok &= fock_character(&model, &order) == parabolic_poincare_series(&betti, &window, &order);
    }
    report(6, "character identity", ok);
}

/// Independent transcription of the index-shift case formulas, used as the
/// golden oracle for the verbatim convention.
fn oracle_shift(v: &IndexVector, beta: i64, lo: i64, hi: i64) -> (IndexVector, (i64, i64)) {
    let rho = |a: i64| v.get(a);
    let mut out = IndexVector::zero();
    if beta > 0 {
        // New window (α₋ − α₊ + β, β).
        let (lo2, hi2) = (lo - hi + beta, beta);
        for alpha in lo2..hi2 {
            let value = if (0 < alpha && alpha < beta) || (lo <= alpha && alpha < 0) {
                rho(alpha)
            } else if alpha == 0 {
                rho(0) + (beta..hi).map(rho).sum::<i64>()
            } else if lo - hi + beta <= alpha && alpha < lo {
                rho(alpha - lo + hi)
            } else {
                0
            };
            out.set(alpha, value);
        }
        (out, (lo2, hi2))
    } else {
        // New window (β + 1, β + α₊ − α₋); the moved block reads the source
        // levels [α₋, β) exclusive.
        let (lo2, hi2) = (beta + 1, beta + hi - lo);
        for alpha in lo2..hi2 {
            let value = if (beta < alpha && alpha < 0) || (0 < alpha && alpha < hi) {
                rho(alpha)
            } else if alpha == 0 {
                rho(0) - (lo..=beta).map(rho).sum::<i64>()
            } else if hi <= alpha && alpha < beta + hi - lo {
                rho(alpha - hi + lo)
            } else {
                0
            };
            out.set(alpha, value);
        }
        (out, (lo2, hi2))
    }
}

#[test]
fn criterion_7_shift_isomorphism_invariance() {
    let betti = BettiData::rational();
    let window = Window::new(-2, 3).unwrap();
    let base_order = TruncationOrder::for_window(4, window.lo, window.hi, 2);
    let base = parabolic_poincare_series(&betti, &window, &base_order);
    let vectors = admissible_vectors(&window, 4, 2);
    let mut ok = true;

    // Verbatim convention against the independent transcription above.
    let mut oracle_cases = 0usize;
    for v in &vectors {
        for beta in [-2i64, -1, 1, 2] {
            let shifted = shift_index(v, beta, window, ShiftConvention::PaperLiteral).unwrap();
            let (expected_v, (lo2, hi2)) = oracle_shift(v, beta, window.lo, window.hi);
            ok &= shifted.v == expected_v;
            // Clamping aside (β = −1 leaves no negative levels), the window
            // bounds must match the transcribed ones.
            ok &= shifted.window.hi == hi2 && (shifted.window.lo == lo2 || lo2 >= 0);
            oracle_cases += 1;
        }
    }
    ok &= oracle_cases == vectors.len() * 4;

    // Frozen spot checks of the verbatim formulas.
    let v = IndexVector::from_entries([(0, 3), (-2, 1), (1, 2)]);
    let (sv, w) = oracle_shift(&v, 1, -2, 3);
    ok &= sv == IndexVector::from_entries([(0, 5), (-2, 1), (-4, 2)]) && w == (-4, 1);
    let (sv, w) = oracle_shift(&v, -2, -2, 3);
    ok &= sv == IndexVector::from_entries([(0, 2), (-1, 0), (1, 2)]) && w == (-1, 3);

    // Degree preservation and coefficient invariance under the d-preserving
    // convention, with the shifted series computed in the shifted window.
    let mut groups: BTreeMap<(i64, i64), Vec<(IndexVector, IndexVector)>> = BTreeMap::new();
    for v in &vectors {
        for beta in [-2i64, -1, 1, 2] {
            let shifted = shift_index(v, beta, window, ShiftConvention::DPreserving).unwrap();
            ok &= shifted.v.degree() == v.degree();
            groups
                .entry((shifted.window.lo, shifted.window.hi))
                .or_default()
                .push((v.clone(), shifted.v));
        }
    }
    for ((lo, hi), pairs) in groups {
        let target = Window::new(lo, hi).unwrap();
        let x0_max = pairs.iter().map(|(_, v2)| v2.rho0()).max().unwrap_or(0) as u32;
        let cap = pairs
            .iter()
            .flat_map(|(_, v2)| v2.iter().filter(|&(a, _)| a != 0).map(|(_, m)| m))
            .max()
            .unwrap_or(0) as u32;
        let order = TruncationOrder::for_window(x0_max, lo, hi, cap.max(1));
        let series = parabolic_poincare_series(&betti, &target, &order);
        for (v, v2) in pairs {
            ok &= base.coefficient(&v).unwrap() == series.coefficient(&v2).unwrap();
        }
    }
    report(7, "shift-isomorphism invariance", ok);
}

#[test]
fn criterion_8_specialization() {
    let window = Window::new(-2, 3).unwrap();
    let order = TruncationOrder::for_window(6, window.lo, window.hi, 2);
    let betti = BettiData::rational();
    let parabolic = parabolic_poincare_series(&betti, &window, &order);
    let ok = parabolic.specialize_x_to_zero() == goettsche_series(&betti.surface, &order);
    report(8, "specialization", ok);
}
