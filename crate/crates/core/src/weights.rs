//! Equivariant tangent weights at a fixed point.
//!
//! The two-torus acting on the affine plane acts on the moduli; at the fixed
//! point labeled by `η` the tangent space decomposes into characters
//! `λ^i μ^j`.  The decomposition is the sum of four explicit terms indexed by
//! the staircase data of `η`; after cancellation all coefficients are
//! non-negative and the total equals `d(ψ(η))`.  Counting the weights made
//! positive by a generic one-parameter subgroup recovers the cell dimension.

use crate::cells::CellLabel;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("label has parts below the declared lowest level {alpha_minus}: {label}")]
    LevelBelowWindow { alpha_minus: i64, label: String },
    #[error("negative coefficient {coeff} at (λ^{i}, μ^{j}) after cancellation")]
    NegativeCoefficient { i: i64, j: i64, coeff: i64 },
    #[error("index-range widening changed the weight decomposition")]
    UnstableRanges,
    #[error("no cocharacter separates the weight support as required")]
    NoCocharacter,
    #[error("weight support contains a pair with i=0, j>0: ({0}, {1})")]
    ForbiddenPair(i64, i64),
}

/// Laurent polynomial in the two torus characters, sparse over `(i, j)`
/// exponent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPair {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentPair {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: i64, j: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> i64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    /// Sum of all coefficients (the dimension of the representation when the
    /// class is effective).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }
}

impl Serialize for LaurentPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (i, j, c) in self.iter() {
            seq.serialize_element(&[i, j, c])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(deserializer)?;
        let mut out = LaurentPair::zero();
        for [i, j, c] in triples {
            out.add_term(i, j, c);
        }
        Ok(out)
    }
}

/// Staircase data of a label: the monomial-ideal column heights `b` and the
/// cumulative level table `h̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Staircase {
    /// `b[i-1]` = number of parts with inner index `≥ i`; non-increasing,
    /// trailing zeros dropped.
    pub b: Vec<i64>,
    /// `(α, i) ↦ Σ_{β ≥ α} η_β(i)` tabulated over the support rectangle.
    pub hbar: BTreeMap<(i64, i64), i64>,
}

impl Staircase {
    /// `b_i` for `i ≥ 0` with implicit trailing zeros.
    pub fn b_at(&self, i: i64) -> i64 {
        if i < 0 {
            // One step left of the staircase: every part counts.
            self.b.first().copied().unwrap_or(0)
        } else {
            self.b.get(i as usize).copied().unwrap_or(0)
        }
    }
}

/// Cumulative column count `h̄_{α,i} = Σ_{β ≥ α} η_β(i)`.
fn hbar_of(label: &CellLabel, alpha: i64, i: i64) -> i64 {
    label
        .iter()
        .filter(|&(beta, m, _)| beta >= alpha && m == i)
        .map(|(_, _, mult)| mult as i64)
        .sum()
}

/// Builds the staircase of a label.  `Σ b_i` equals the level-0 mass of
/// `ψ(η)`.
pub fn staircase(label: &CellLabel) -> Staircase {
    let max_m = label.max_m();
    let mut b = Vec::new();
    for i in 1..=max_m {
        let count: i64 = label
            .iter()
            .filter(|&(_, m, _)| m >= i)
            .map(|(_, _, mult)| mult as i64)
            .sum();
        b.push(count);
    }
    while b.last() == Some(&0) {
        b.pop();
    }
    let levels = label.levels();
    let lo = levels.first().copied().unwrap_or(0).min(0);
    let hi = levels.last().copied().unwrap_or(0).max(1);
    let mut hbar = BTreeMap::new();
    for alpha in lo..=hi + 1 {
        for i in 0..=max_m {
            let value = hbar_of(label, alpha, i);
            if value != 0 {
                hbar.insert((alpha, i), value);
            }
        }
    }
    Staircase { b, hbar }
}

/// One evaluation of the four-term weight sum with explicit index caps.
fn weight_sum(label: &CellLabel, alpha_minus: i64, pad: i64) -> LaurentPair {
    let st = staircase(label);
    let b = |i: i64| st.b_at(i);
    let hb = |alpha: i64, i: i64| hbar_of(label, alpha, i);
    let eta = |alpha: i64, i: i64| label.eta(alpha, i);

    let m_hi = label.max_m() + pad;
    let alpha_hi = label.levels().last().copied().unwrap_or(0).max(1) + 1 + pad;
    let alpha_lo = alpha_minus - pad;

    let mut t = LaurentPair::zero();

    // Deformations of the underlying monomial ideal (the classical
    // double-sum over the staircase).
    for j in 1..=m_hi {
        for i in 1..=j {
            for s in b(j)..b(j - 1) {
                t.add_term(i - j - 1, b(i - 1) - s - 1, 1);
                t.add_term(j - i, s - b(i - 1), 1);
            }
        }
    }

    // Correction sum over the admissible triple set: (i) α ≥ α₋ with
    // i, j ≥ 1; (ii) α > 0, i ≥ 1, j = 0; (iii) α > 1, i = 0, j ≥ 0.
    let mut triples = Vec::new();
    for alpha in alpha_lo..=alpha_hi {
        for i in 0..=m_hi {
            for j in 0..=m_hi {
                let cond = (alpha >= alpha_minus && i >= 1 && j >= 1)
                    || (alpha > 0 && i >= 1 && j == 0)
                    || (alpha > 1 && i == 0);
                if cond {
                    triples.push((alpha, i, j));
                }
            }
        }
    }
    for (alpha, i, j) in triples {
        for a in 0..hb(alpha, j) {
            t.add_term(j - i, b(j) - b(i) - hb(alpha, i) + a, 1);
            t.add_term(j - i, b(j) - b(i) - hb(alpha - 1, i) + a, -1);
        }
    }

    // Subtraction indexed by the non-positive levels.
    for alpha in alpha_lo..=0 {
        for i in 1..=m_hi {
            for a in 0..eta(alpha - 1, i) {
                t.add_term(-i, b(0) - b(i) + a - hb(alpha - 1, i), -1);
            }
        }
    }

    // Addition over the positive-level column at each inner index.
    for j in 0..=m_hi {
        for a in 0..hb(1, j) {
            t.add_term(j, b(j) - b(0) - hb(1, 0) + a, 1);
        }
    }

    t
}

/// Tangent-space weight decomposition at the fixed point of `η`, as a Laurent
/// polynomial in the two torus characters.
///
/// `alpha_minus` is the declared lowest level; the label may not have parts
/// below it.  The index ranges of the four terms are finite once `η` is
/// fixed; the implementation evaluates them at their natural caps and asserts
/// that widening every cap by two leaves the result unchanged.  A negative
/// coefficient surviving cancellation is a hard error.
pub fn tangent_weights(label: &CellLabel, alpha_minus: i64) -> Result<LaurentPair, WeightError> {
    if label.levels().first().is_some_and(|&lo| lo < alpha_minus) {
        return Err(WeightError::LevelBelowWindow {
            alpha_minus,
            label: label.to_string(),
        });
    }
    let t = weight_sum(label, alpha_minus, 0);
    let widened = weight_sum(label, alpha_minus, 2);
    if t != widened {
        return Err(WeightError::UnstableRanges);
    }
    for (i, j, coeff) in t.iter() {
        if coeff < 0 {
            return Err(WeightError::NegativeCoefficient { i, j, coeff });
        }
    }
    Ok(t)
}

/// Integer weights `(w₁, w₂)` such that `i·w₂ + j·w₁ > 0` exactly when
/// `i > 0`, for every `(i, j)` in `support`.  Requires that no pair has
/// `i = 0, j > 0`.
pub fn generic_cocharacter(support: &[(i64, i64)]) -> Result<(i64, i64), WeightError> {
    if let Some(&(i, j)) = support.iter().find(|&&(i, j)| i == 0 && j > 0) {
        return Err(WeightError::ForbiddenPair(i, j));
    }
    let max_j = support.iter().map(|&(_, j)| j.abs()).max().unwrap_or(0);
    let candidate = (1, max_j + 1);
    let separates = |w1: i64, w2: i64| {
        support
            .iter()
            .all(|&(i, j)| (i * w2 + j * w1 > 0) == (i > 0))
    };
    if separates(candidate.0, candidate.1) {
        return Ok(candidate);
    }
    // The closed-form candidate works whenever the precondition holds; a
    // bounded search backs it up so a structural violation surfaces as an
    // error rather than a wrong count.
    for w2 in 1..=4 * (max_j + 1) {
        if separates(1, w2) {
            return Ok((1, w2));
        }
    }
    Err(WeightError::NoCocharacter)
}

/// Number of tangent weights (with multiplicity) made positive by a generic
/// cocharacter; equals the cell dimension of the label.
pub fn positive_weight_count(label: &CellLabel) -> Result<i64, WeightError> {
    let alpha_minus = label.levels().first().copied().unwrap_or(0).min(-1);
    let t = tangent_weights(label, alpha_minus)?;
    let (w1, w2) = generic_cocharacter(&t.support())?;
    Ok(t.iter()
        .filter(|&(i, j, _)| i * w2 + j * w1 > 0)
        .map(|(_, _, c)| c)
        .sum())
}

/// Outcome of the bulk coherence sweep over a window.
#[derive(Debug, Clone, Serialize)]
pub struct CoherenceReport {
    pub labels_checked: usize,
    pub violations: Vec<String>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every cell label of every admissible vector with `ρ₀ ≤ max_n`,
/// support in `window`, and jump multiplicities at most `cap`: the tangent
/// decomposition must be effective, total `d(v)`, and have exactly
/// cell-dimension many positive weights under the generic cocharacter.
pub fn verify_coherence(
    window: &crate::lattice::Window,
    max_n: i64,
    cap: i64,
) -> CoherenceReport {
    use rayon::prelude::*;
    let vectors = crate::genfun::admissible_vectors(window, max_n, cap);
    let results: Vec<(usize, Vec<String>)> = vectors
        .par_iter()
        .map(|v| {
            let mut checked = 0usize;
            let mut violations = Vec::new();
            for label in crate::cells::enumerate_labels(v) {
                checked += 1;
                match tangent_weights(&label, window.lo) {
                    Err(e) => violations.push(format!("{label}: {e}")),
                    Ok(t) => {
                        if !t.is_effective() {
                            violations.push(format!("{label}: negative weight coefficient"));
                        }
                        if t.total() != v.degree() {
                            violations.push(format!(
                                "{label}: total {} ≠ d(v) = {}",
                                t.total(),
                                v.degree()
                            ));
                        }
                    }
                }
                match positive_weight_count(&label) {
                    Err(e) => violations.push(format!("{label}: {e}")),
                    Ok(count) => {
                        if count != label.cell_dimension() {
                            violations.push(format!(
                                "{label}: {count} positive weights ≠ dimension {}",
                                label.cell_dimension()
                            ));
                        }
                    }
                }
            }
            (checked, violations)
        })
        .collect();
    let mut report = CoherenceReport {
        labels_checked: 0,
        violations: Vec::new(),
    };
    for (checked, violations) in results {
        report.labels_checked += checked;
        report.violations.extend(violations);
    }
    report
}
