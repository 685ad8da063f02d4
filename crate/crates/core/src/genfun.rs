//! Closed-form generating functions for the Hilbert-scheme families:
//! the surface product formula, its parabolic refinement with one variable per
//! jump level, the punctual local class series, and a brute-force
//! cross-check of the latter against direct cell enumeration.

use crate::cells;
use crate::lattice::{IndexVector, Window};
use crate::series::{expand_factor, MultiDegree, MultiSeries, TruncationOrder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Betti numbers of the ambient surface (`X`, real dimension 4) and the
/// divisor (`D`, real dimension 2).  Poincaré duality is not assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiData {
    #[serde(rename = "X")]
    pub surface: [u32; 5],
    #[serde(rename = "D")]
    pub divisor: [u32; 3],
}

impl BettiData {
    /// The hyperbolic default used throughout the tests: rational surface
    /// with `b = (1,0,1,0,1)` and a rational divisor `b = (1,0,1)`.
    pub fn rational() -> Self {
        Self {
            surface: [1, 0, 1, 0, 1],
            divisor: [1, 0, 1],
        }
    }
}

/// Sign and degree data of one `(1 ± z^i x^d)^{±b}` factor.
struct Factor {
    sign: i64,
    degree: MultiDegree,
    exponent: i64,
}

fn product(factors: Vec<Factor>, order: &TruncationOrder) -> MultiSeries {
    let expanded: Vec<MultiSeries> = factors
        .into_par_iter()
        .filter(|f| f.exponent != 0)
        .map(|f| expand_factor(f.sign, &f.degree, f.exponent, order).expect("nonzero degree"))
        .collect();
    expanded
        .into_iter()
        .fold(MultiSeries::one(order.clone()), |acc, f| {
            acc.mul(&f).expect("shared order")
        })
}

/// The five factors of the surface product at `x₀`-degree `m`, for a series
/// in `(z, x₀)`:
/// numerator `(1+z^{2m−1}x₀^m)^{b₁}(1+z^{2m+1}x₀^m)^{b₃}`, denominator
/// `(1−z^{2m−2}x₀^m)^{b₀}(1−z^{2m}x₀^m)^{b₂}(1−z^{2m+2}x₀^m)^{b₄}`.
fn surface_factors_at(b: &[u32; 5], m: u32, out: &mut Vec<Factor>) {
    let signs = [-1i64, 1, -1, 1, -1];
    for (i, (&bi, &sign)) in b.iter().zip(signs.iter()).enumerate() {
        out.push(Factor {
            sign,
            degree: MultiDegree::new(2 * m - 2 + i as u32, m, []),
            exponent: sign * bi as i64,
        });
    }
}

/// The three divisor factors at `x₀`-degree `m` with offset `a ∈ {0, 1}`:
/// `(1+z^{2(m−a)+1}x₀^m x_α)^{b₁} / (1−z^{2(m−a)}x₀^m x_α)^{b₀}
///  (1−z^{2(m−a)+2}x₀^m x_α)^{b₂}`.
fn divisor_factors_at(b: &[u32; 3], alpha: i64, a: u32, m: u32, out: &mut Vec<Factor>) {
    let signs = [-1i64, 1, -1];
    for (i, (&bi, &sign)) in b.iter().zip(signs.iter()).enumerate() {
        out.push(Factor {
            sign,
            degree: MultiDegree::new(2 * (m - a) + i as u32, m, [(alpha, 1)]),
            exponent: sign * bi as i64,
        });
    }
}

/// Asserts (in debug builds) that every factor beyond the cut is the identity
/// at this truncation order, so cutting the infinite product is lossless.
fn assert_cut_exact(factors: &[Factor], order: &TruncationOrder) {
    if cfg!(debug_assertions) {
        for f in factors {
            if f.exponent == 0 {
                continue;
            }
            let s = expand_factor(f.sign, &f.degree, f.exponent, order).expect("nonzero degree");
            debug_assert_eq!(s, MultiSeries::one(order.clone()), "factor cut too early");
        }
    }
}

/// The surface series in `(z, x₀)`, truncated at the given order.
pub fn goettsche_series(b: &[u32; 5], order: &TruncationOrder) -> MultiSeries {
    let mut factors = Vec::new();
    for m in 1..=order.x0_max {
        surface_factors_at(b, m, &mut factors);
    }
    let mut beyond = Vec::new();
    for m in order.x0_max + 1..=order.x0_max + 2 {
        surface_factors_at(b, m, &mut beyond);
    }
    assert_cut_exact(&beyond, order);
    product(factors, order)
}

/// The parabolic refinement in `(z, x₀, x_α)`: the surface series times one
/// divisor product per window level, with offset `a = 1` below level 0 and
/// `a = 0` above.
pub fn parabolic_poincare_series(
    b: &BettiData,
    window: &Window,
    order: &TruncationOrder,
) -> MultiSeries {
    let mut factors = Vec::new();
    let mut beyond = Vec::new();
    for m in 1..=order.x0_max {
        surface_factors_at(&b.surface, m, &mut factors);
    }
    for m in order.x0_max + 1..=order.x0_max + 2 {
        surface_factors_at(&b.surface, m, &mut beyond);
    }
    for alpha in window.levels() {
        let a = if alpha < 0 { 1 } else { 0 };
        for m in a..=order.x0_max {
            divisor_factors_at(&b.divisor, alpha, a, m, &mut factors);
        }
        for m in order.x0_max + 1..=order.x0_max + 2 {
            divisor_factors_at(&b.divisor, alpha, a, m, &mut beyond);
        }
    }
    assert_cut_exact(&beyond, order);
    product(factors, order)
}

/// The punctual local class series in `(L, x₀, x_α)` (the `z`-slot of the
/// multidegree holds the `L`-exponent):
/// `∏_{i≥1}(1−L^{i−1}x₀^i)⁻¹ · ∏_{α<0}∏_{i≥1}(1−L^{i−1}x₀^i x_α)⁻¹
///  · ∏_{α>0}∏_{i≥0}(1−L^i x₀^i x_α)⁻¹`.
pub fn local_punctual_series(window: &Window, order: &TruncationOrder) -> MultiSeries {
    let mut factors = Vec::new();
    for i in 1..=order.x0_max {
        factors.push(Factor {
            sign: -1,
            degree: MultiDegree::new(i - 1, i, []),
            exponent: -1,
        });
    }
    for alpha in window.levels() {
        if alpha < 0 {
            for i in 1..=order.x0_max {
                factors.push(Factor {
                    sign: -1,
                    degree: MultiDegree::new(i - 1, i, [(alpha, 1)]),
                    exponent: -1,
                });
            }
        } else {
            for i in 0..=order.x0_max {
                factors.push(Factor {
                    sign: -1,
                    degree: MultiDegree::new(i, i, [(alpha, 1)]),
                    exponent: -1,
                });
            }
        }
    }
    let mut beyond = Vec::new();
    for i in order.x0_max + 1..=order.x0_max + 2 {
        beyond.push(Factor {
            sign: -1,
            degree: MultiDegree::new(i - 1, i, []),
            exponent: -1,
        });
    }
    assert_cut_exact(&beyond, order);
    product(factors, order)
}

/// All admissible index vectors with `ρ₀ ≤ max_n`, support in `window`, and
/// each jump multiplicity at most `cap`.
pub fn admissible_vectors(window: &Window, max_n: i64, cap: i64) -> Vec<IndexVector> {
    let levels: Vec<i64> = window.levels().collect();
    let mut out = Vec::new();
    let mut current: Vec<(i64, i64)> = Vec::new();
    fn rec(
        levels: &[i64],
        idx: usize,
        cap: i64,
        max_n: i64,
        current: &mut Vec<(i64, i64)>,
        out: &mut Vec<IndexVector>,
    ) {
        if idx == levels.len() {
            let minus: i64 = current.iter().filter(|&&(a, _)| a < 0).map(|&(_, m)| m).sum();
            for n in minus..=max_n {
                let mut v = IndexVector::from_entries(current.iter().copied());
                v.set(0, n);
                debug_assert!(v.is_admissible());
                out.push(v);
            }
            return;
        }
        for m in 0..=cap {
            if m > 0 {
                current.push((levels[idx], m));
            }
            rec(levels, idx + 1, cap, max_n, current, out);
            if m > 0 {
                current.pop();
            }
        }
    }
    rec(&levels, 0, cap, max_n, &mut current, &mut out);
    out.sort();
    out
}

/// One mismatch found by [`verify_cell_vs_product`].
#[derive(Debug, Clone, Serialize)]
pub struct CellProductMismatch {
    pub v: IndexVector,
    pub from_cells: String,
    pub from_product: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellProductReport {
    pub cases: usize,
    pub mismatches: Vec<CellProductMismatch>,
}

impl CellProductReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Dual-path check: for every admissible `v` in range, the sum of `L^dim`
/// over the cells of `v` must equal the coefficient of `x^v` in the punctual
/// local series.
pub fn verify_cell_vs_product(window: &Window, max_n: i64) -> CellProductReport {
    let cap = max_n.max(1);
    let order = TruncationOrder::for_window(max_n.max(0) as u32, window.lo, window.hi, cap as u32);
    let series = local_punctual_series(window, &order);
    let vectors = admissible_vectors(window, max_n, cap);
    let mismatches: Vec<CellProductMismatch> = vectors
        .par_iter()
        .filter_map(|v| {
            let from_cells = cells::punctual_motive(v);
            let from_product = series.coefficient(v).expect("v within order");
            if from_cells == from_product {
                None
            } else {
                Some(CellProductMismatch {
                    v: v.clone(),
                    from_cells: from_cells.display("L"),
                    from_product: from_product.display("L"),
                })
            }
        })
        .collect();
    CellProductReport {
        cases: vectors.len(),
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{shift_index, ShiftConvention};
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn goettsche_point_like() {
        let order = TruncationOrder::new(3, []);
        let s = goettsche_series(&[1, 0, 0, 0, 0], &order);
        let v = IndexVector::from_entries([(0, 2)]);
        let c = s.coefficient(&v).unwrap();
        assert_eq!(c.display("z"), "1+z^2");
        // Matches the motive count under L ↦ z².
        let mut motive_z2 = crate::poly::UniPoly::zero();
        for (d, coeff) in cells::punctual_motive(&v).iter() {
            motive_z2.add_term(coeff.clone(), 2 * d);
        }
        assert_eq!(c, motive_z2);
    }

    #[test]
    fn goettsche_projective_plane() {
        let order = TruncationOrder::new(3, []);
        let s = goettsche_series(&BettiData::rational().surface, &order);
        let c = s.coefficient(&IndexVector::from_entries([(0, 2)])).unwrap();
        assert_eq!(c.display("z"), "1+2z^2+3z^4+2z^6+z^8");
        let c0 = s.coefficient(&IndexVector::zero()).unwrap();
        assert_eq!(c0.display("z"), "1");
    }

    #[test]
    fn parabolic_divisor_coefficient() {
        let window = Window::new(-1, 2).unwrap();
        let order = TruncationOrder::for_window(2, -1, 2, 2);
        let s = parabolic_poincare_series(&BettiData::rational(), &window, &order);
        // x^{e₁} picks out the scheme isomorphic to the divisor itself.
        let c = s.coefficient(&IndexVector::from_entries([(1, 1)])).unwrap();
        assert_eq!(c.display("z"), "1+z^2");
        assert_eq!(
            s.coefficient(&IndexVector::zero()).unwrap().display("z"),
            "1"
        );
    }

    #[test]
    fn parabolic_specializes_to_goettsche() {
        let window = Window::new(-2, 3).unwrap();
        let order = TruncationOrder::for_window(3, -2, 3, 2);
        let b = BettiData::rational();
        let s = parabolic_poincare_series(&b, &window, &order);
        assert_eq!(s.specialize_x_to_zero(), goettsche_series(&b.surface, &order));
    }

    #[test]
    fn parabolic_coefficients_effective() {
        let window = Window::new(-1, 2).unwrap();
        let order = TruncationOrder::for_window(2, -1, 2, 2);
        let s = parabolic_poincare_series(&BettiData::rational(), &window, &order);
        for v in admissible_vectors(&window, 2, 2) {
            let c = s.coefficient(&v).unwrap();
            assert!(c.all_coeffs_nonneg(), "negative coefficient at {v}");
            assert_eq!(c.coeff(0), BigInt::one(), "constant term at {v}");
        }
    }

    #[test]
    fn local_series_examples() {
        let window = Window::new(-1, 2).unwrap();
        let order = TruncationOrder::for_window(3, -1, 2, 2);
        let s = local_punctual_series(&window, &order);
        let at = |entries: &[(i64, i64)]| {
            s.coefficient(&IndexVector::from_entries(entries.iter().copied()))
                .unwrap()
                .display("L")
        };
        assert_eq!(at(&[(0, 2)]), "1+L");
        assert_eq!(at(&[(0, 2), (1, 1)]), "1+2L+L^2");
        assert_eq!(at(&[(0, 1), (-1, 1)]), "1");
    }

    #[test]
    fn cells_vs_product_small_windows() {
        let report = verify_cell_vs_product(&Window::new(-1, 2).unwrap(), 3);
        assert!(report.passed(), "{:?}", report.mismatches);
        assert!(report.cases > 0);
        let trivial = verify_cell_vs_product(&Window::new(-1, 2).unwrap(), 0);
        assert!(trivial.passed());
    }

    #[test]
    fn cells_vs_product_wide_window() {
        let report = verify_cell_vs_product(&Window::new(-2, 3).unwrap(), 4);
        assert!(report.passed(), "{:?}", report.mismatches);
    }

    #[test]
    fn shift_invariance_of_coefficients() {
        let b = BettiData::rational();
        let window = Window::new(-2, 3).unwrap();
        let order = TruncationOrder::for_window(4, window.lo, window.hi, 2);
        let s = parabolic_poincare_series(&b, &window, &order);
        let mut checked = 0usize;
        for v in admissible_vectors(&window, 2, 1) {
            for beta in [1i64, 2, -1] {
                let shifted = match shift_index(&v, beta, window, ShiftConvention::DPreserving) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let w2 = shifted.window;
                let order2 = TruncationOrder::for_window(4, w2.lo, w2.hi, 2);
                if !order2.admits_vector(&shifted.v) {
                    continue;
                }
                let s2 = parabolic_poincare_series(&b, &w2, &order2);
                assert_eq!(
                    s.coefficient(&v).unwrap(),
                    s2.coefficient(&shifted.v).unwrap(),
                    "coefficient changed under shift β={beta} of {v}"
                );
                checked += 1;
            }
        }
        assert!(checked > 20, "only {checked} shift cases exercised");
    }

    #[test]
    fn betti_json_round_trip() {
        let b = BettiData {
            surface: [1, 2, 3, 2, 1],
            divisor: [1, 2, 1],
        };
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(text, r#"{"X":[1,2,3,2,1],"D":[1,2,1]}"#);
        let back: BettiData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, b);
    }
}
