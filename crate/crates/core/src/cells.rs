//! Fixed-point labels of the punctual moduli and their cell structure.
//!
//! A label is a finite multiset of generators `m·e₀ + e_α`; the labels with
//! weighted sum `v` are in bijection with the torus fixed points of the
//! punctual moduli at `v`, and the attracting cell of the label `η` is affine
//! of dimension `ρ₀(v) − ‖η‖`, where `‖η‖` counts the parts at levels
//! `α ≤ 0`.

use crate::lattice::IndexVector;
use crate::poly::UniPoly;
use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("invalid part (alpha={alpha}, m={m}): level constraint violated")]
    InvalidPart { alpha: i64, m: i64 },
    #[error("vector {0} has a negative-level entry; top-cell analysis needs none")]
    NegativeLevels(String),
    #[error("top-cell contract violation: {0}")]
    ContractViolation(String),
}

/// Multiset of generator parts, keyed by `(α, m)` with positive multiplicity.
///
/// Validity: parts at levels `α > 0` need `m ≥ 0`; parts at `α ≤ 0` need
/// `m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CellLabel {
    parts: BTreeMap<(i64, i64), u64>,
}

impl CellLabel {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(
        parts: impl IntoIterator<Item = (i64, i64, u64)>,
    ) -> Result<Self, CellError> {
        let mut map = BTreeMap::new();
        for (alpha, m, mult) in parts {
            if mult == 0 {
                continue;
            }
            let valid = if alpha > 0 { m >= 0 } else { m >= 1 };
            if !valid {
                return Err(CellError::InvalidPart { alpha, m });
            }
            *map.entry((alpha, m)).or_insert(0) += mult;
        }
        Ok(Self { parts: map })
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.parts.iter().map(|(&(a, m), &c)| (a, m, c))
    }

    /// Multiplicity of the part `m·e₀ + e_α`.
    pub fn count(&self, alpha: i64, m: i64) -> u64 {
        self.parts.get(&(alpha, m)).copied().unwrap_or(0)
    }

    /// Total multiplicity of parts at level `α` with inner index `m = j`;
    /// the column entry `η_α(j)` of the label.
    pub fn eta(&self, alpha: i64, j: i64) -> i64 {
        self.count(alpha, j) as i64
    }

    pub fn num_parts(&self) -> u64 {
        self.parts.values().sum()
    }

    /// Weighted sum of the parts as an index vector.
    pub fn psi(&self) -> IndexVector {
        let mut v = IndexVector::zero();
        for (alpha, m, mult) in self.iter() {
            v.set(0, v.get(0) + m * mult as i64);
            if alpha != 0 {
                v.set(alpha, v.get(alpha) + mult as i64);
            }
        }
        v
    }

    /// `‖η‖`: number of parts (with multiplicity) at levels `α ≤ 0`.
    pub fn seminorm(&self) -> i64 {
        self.iter()
            .filter(|&(alpha, _, _)| alpha <= 0)
            .map(|(_, _, mult)| mult as i64)
            .sum()
    }

    /// Dimension of the attracting cell: `ρ₀(ψ(η)) − ‖η‖`.
    pub fn cell_dimension(&self) -> i64 {
        let dim = self.psi().rho0() - self.seminorm();
        debug_assert!(dim >= 0, "cell dimension must be non-negative: {self}");
        dim
    }

    /// Largest inner index `m` appearing in any part.
    pub fn max_m(&self) -> i64 {
        self.iter().map(|(_, m, _)| m).max().unwrap_or(0)
    }

    /// Levels present in the label, ascending.
    pub fn levels(&self) -> Vec<i64> {
        let mut levels: Vec<i64> = self.iter().map(|(a, _, _)| a).collect();
        levels.sort_unstable();
        levels.dedup();
        levels
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, (alpha, m, mult)) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({alpha},{m})x{mult}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for CellLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for (alpha, m, mult) in self.iter() {
            seq.serialize_element(&[alpha, m, mult as i64])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CellLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(deserializer)?;
        CellLabel::from_parts(triples.into_iter().map(|[a, m, c]| (a, m, c.max(0) as u64)))
            .map_err(serde::de::Error::custom)
    }
}

/// Multisets of `count` values `≥ min_value` with sum `≤ budget`, returned as
/// non-increasing sequences.
fn multisets(count: i64, min_value: i64, budget: i64, max_first: i64) -> Vec<Vec<i64>> {
    if count == 0 {
        return vec![Vec::new()];
    }
    if count < 0 || min_value * count > budget {
        return Vec::new();
    }
    let mut out = Vec::new();
    let hi = (budget - min_value * (count - 1)).min(max_first);
    for first in min_value..=hi {
        for mut rest in multisets(count - 1, min_value, budget - first, first) {
            let mut seq = vec![first];
            seq.append(&mut rest);
            out.push(seq);
        }
    }
    out
}

/// Partitions of `n` into parts `≥ 1` (non-increasing).
fn partitions(n: i64, max_part: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first) {
            let mut seq = vec![first];
            seq.append(&mut rest);
            out.push(seq);
        }
    }
    out
}

/// All labels with weighted sum exactly `v`, in canonical (sorted) order.
/// Empty when no label exists (equivalently, when `v` is not admissible).
pub fn enumerate_labels(v: &IndexVector) -> Vec<CellLabel> {
    if v.iter().any(|(_, value)| value < 0) {
        return Vec::new();
    }
    let n = v.rho0();
    let jump_levels: Vec<(i64, i64)> = v.iter().filter(|&(a, _)| a != 0).collect();

    // Distribute the level-0 mass across the inner indices of the jump parts,
    // then spend the remainder on level-0 parts.
    let mut labels = Vec::new();
    let mut stack: Vec<(usize, i64, Vec<(i64, i64, u64)>)> = vec![(0, n, Vec::new())];
    while let Some((idx, budget, parts)) = stack.pop() {
        if idx == jump_levels.len() {
            for tail in partitions(budget, budget) {
                let mut all = parts.clone();
                for m in tail {
                    all.push((0, m, 1));
                }
                labels.push(CellLabel::from_parts(all).expect("constructed parts are valid"));
            }
            continue;
        }
        let (alpha, count) = jump_levels[idx];
        let min_value = if alpha > 0 { 0 } else { 1 };
        for seq in multisets(count, min_value, budget, budget) {
            let used: i64 = seq.iter().sum();
            let mut next = parts.clone();
            for m in seq {
                next.push((alpha, m, 1));
            }
            stack.push((idx + 1, budget - used, next));
        }
    }
    labels.sort();
    labels.dedup();
    labels
}

/// `Σ_η z^{2·dim(η)}` over the labels of `v`: the cells are affine, so each
/// contributes a single even cohomological degree.
pub fn punctual_poincare(v: &IndexVector) -> UniPoly {
    let mut poly = UniPoly::zero();
    for label in enumerate_labels(v) {
        poly.add_term(BigInt::one(), 2 * label.cell_dimension() as u32);
    }
    poly
}

/// `Σ_η L^{dim(η)}`: the class of the punctual moduli at `v` as a sum of
/// affine cells.
pub fn punctual_motive(v: &IndexVector) -> UniPoly {
    let mut poly = UniPoly::zero();
    for label in enumerate_labels(v) {
        poly.add_term(BigInt::one(), label.cell_dimension() as u32);
    }
    poly
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopCells {
    pub dimension: i64,
    pub labels: Vec<CellLabel>,
}

/// Maximal cell dimension and the labels attaining it, for `v` without
/// negative levels.  Cross-checks the closed-form characterization of the
/// maximal cells (no level-0 parts when positive jumps exist; the single part
/// `n·e₀` otherwise) and fails loudly on disagreement.
pub fn top_cells(v: &IndexVector) -> Result<TopCells, CellError> {
    if !v.rho_minus_is_zero() {
        return Err(CellError::NegativeLevels(v.to_string()));
    }
    let labels = enumerate_labels(v);
    let dimension = labels.iter().map(|l| l.cell_dimension()).max().unwrap_or(0);
    let top: Vec<CellLabel> = labels
        .into_iter()
        .filter(|l| l.cell_dimension() == dimension)
        .collect();

    let n = v.rho0();
    let has_jumps = !v.rho_plus_is_zero();
    let eps_v = if v.is_zero() { 1 } else { 0 };
    let eps_plus = if has_jumps { 0 } else { 1 };
    let bound = n - eps_plus + eps_v;
    if dimension != bound && !(v.is_zero() && dimension == 0) {
        return Err(CellError::ContractViolation(format!(
            "max dimension {dimension} differs from bound {bound} at v={v}"
        )));
    }
    for label in &top {
        let ok = if has_jumps {
            label.iter().all(|(alpha, _, _)| alpha != 0)
        } else if !v.is_zero() {
            label.iter().collect::<Vec<_>>() == vec![(0, n, 1)]
        } else {
            label.num_parts() == 0
        };
        if !ok {
            return Err(CellError::ContractViolation(format!(
                "label {label} attains the top dimension but fails the characterization at v={v}"
            )));
        }
    }
    Ok(TopCells {
        dimension,
        labels: top,
    })
}
