//! Super-symmetric Fock model: states are products of creation generators
//! `(u, a)` with `u` in the generator cone and `a` a cohomology class of the
//! space attached to `u` (the surface when `ρ(u) = 0`, the divisor
//! otherwise).  Creation acts by signed sorted insertion, annihilation by the
//! pairing-twisted super-derivation, and the commutation relation
//! `[𝔮_{u₁}(a₁), 𝔮_{u₂}(a₂)] = ε_{u₁+u₂}·μ(u₁)·(∫a₁a₂)·id` is verified
//! exhaustively on basis states.

use crate::genfun::BettiData;
use crate::lattice::{classify_generator, mu, GeneratorClass, IndexVector};
use crate::series::{MultiDegree, MultiSeries, TruncationOrder};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("{0} is not a generator")]
    NotGenerator(String),
    #[error("class index {index} out of range for {space:?}")]
    BadClass { space: Space, index: usize },
    #[error("default pairing needs matching Betti numbers b_{0} = b_{1}")]
    DualityMismatch(usize, usize),
    #[error("default skew pairing needs an even middle Betti number, got {0}")]
    OddMiddle(u32),
    #[error("pairing matrix is not graded-symmetric at ({0},{1})")]
    NotGradedSymmetric(usize, usize),
    #[error("pairing matrix pairs non-complementary degrees at ({0},{1})")]
    DegreeViolation(usize, usize),
    #[error("pairing matrix is degenerate")]
    Degenerate,
}

/// Which space a class lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Surface,
    Divisor,
}

impl Space {
    pub fn real_dimension(self) -> u32 {
        match self {
            Space::Surface => 4,
            Space::Divisor => 2,
        }
    }
}

/// The space attached to a generator: the surface iff all jump levels vanish.
pub fn space_of(u: &IndexVector) -> Space {
    if u.rho_is_zero() {
        Space::Surface
    } else {
        Space::Divisor
    }
}

/// Basis classes with their cohomological degrees and intersection pairings
/// for the surface and the divisor.
#[derive(Debug, Clone)]
pub struct CohModel {
    surface_degrees: Vec<u32>,
    divisor_degrees: Vec<u32>,
    surface_pairing: Vec<Vec<i64>>,
    divisor_pairing: Vec<Vec<i64>>,
}

/// Exact determinant by cofactor expansion (matrices here are tiny).
fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut det = BigInt::zero();
    for (col, &entry) in m[0].iter().enumerate() {
        if entry == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = BigInt::from(entry) * determinant(&minor);
        if col % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Degrees as a flat ascending list from a Betti vector.
fn degrees_of(betti: &[u32]) -> Vec<u32> {
    betti
        .iter()
        .enumerate()
        .flat_map(|(d, &b)| std::iter::repeat(d as u32).take(b as usize))
        .collect()
}

/// Default pairing on one space: complementary-degree blocks are matched
/// index-by-index (hyperbolic), the even middle block is the identity, and
/// the odd middle block pairs consecutive classes skewly.
fn default_pairing(degrees: &[u32], dim: u32) -> Result<Vec<Vec<i64>>, FockError> {
    let n = degrees.len();
    let mut pairing = vec![vec![0i64; n]; n];
    let by_degree = |d: u32| -> Vec<usize> {
        (0..n).filter(|&i| degrees[i] == d).collect()
    };
    for d in 0..=dim / 2 {
        let dual = dim - d;
        let lo = by_degree(d);
        let hi = by_degree(dual);
        if d < dual {
            if lo.len() != hi.len() {
                return Err(FockError::DualityMismatch(d as usize, dual as usize));
            }
            // ∫ab = (−1)^{d·(dim−d)} ∫ba.
            let flip = if (d * dual) % 2 == 0 { 1 } else { -1 };
            for (&i, &j) in lo.iter().zip(hi.iter()) {
                pairing[i][j] = 1;
                pairing[j][i] = flip;
            }
        } else if d % 2 == 0 {
            for &i in &lo {
                pairing[i][i] = 1;
            }
        } else {
            if lo.len() % 2 != 0 {
                return Err(FockError::OddMiddle(lo.len() as u32));
            }
            for pair in lo.chunks(2) {
                pairing[pair[0]][pair[1]] = 1;
                pairing[pair[1]][pair[0]] = -1;
            }
        }
    }
    Ok(pairing)
}

fn validate_pairing(degrees: &[u32], dim: u32, pairing: &[Vec<i64>]) -> Result<(), FockError> {
    let n = degrees.len();
    for i in 0..n {
        for j in 0..n {
            if pairing[i][j] != 0 && degrees[i] + degrees[j] != dim {
                return Err(FockError::DegreeViolation(i, j));
            }
            let flip = if (degrees[i] * degrees[j]) % 2 == 0 { 1 } else { -1 };
            if pairing[i][j] != flip * pairing[j][i] {
                return Err(FockError::NotGradedSymmetric(i, j));
            }
        }
    }
    if determinant(pairing).is_zero() {
        return Err(FockError::Degenerate);
    }
    Ok(())
}

impl CohModel {
    /// The default model for the given Betti numbers.
    pub fn hyperbolic(betti: &BettiData) -> Result<Self, FockError> {
        let surface_degrees = degrees_of(&betti.surface);
        let divisor_degrees = degrees_of(&betti.divisor);
        let surface_pairing = default_pairing(&surface_degrees, 4)?;
        let divisor_pairing = default_pairing(&divisor_degrees, 2)?;
        let model = Self {
            surface_degrees,
            divisor_degrees,
            surface_pairing,
            divisor_pairing,
        };
        model.validate()?;
        Ok(model)
    }

    /// User-supplied pairings; both matrices are validated for complementary
    /// degrees, graded symmetry, and non-degeneracy.
    pub fn with_pairing(
        betti: &BettiData,
        surface_pairing: Vec<Vec<i64>>,
        divisor_pairing: Vec<Vec<i64>>,
    ) -> Result<Self, FockError> {
        let model = Self {
            surface_degrees: degrees_of(&betti.surface),
            divisor_degrees: degrees_of(&betti.divisor),
            surface_pairing,
            divisor_pairing,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), FockError> {
        validate_pairing(&self.surface_degrees, 4, &self.surface_pairing)?;
        validate_pairing(&self.divisor_degrees, 2, &self.divisor_pairing)
    }

    pub fn degrees(&self, space: Space) -> &[u32] {
        match space {
            Space::Surface => &self.surface_degrees,
            Space::Divisor => &self.divisor_degrees,
        }
    }

    pub fn check_class(&self, space: Space, index: usize) -> Result<(), FockError> {
        if index < self.degrees(space).len() {
            Ok(())
        } else {
            Err(FockError::BadClass { space, index })
        }
    }

    pub fn integral(&self, space: Space, i: usize, j: usize) -> i64 {
        match space {
            Space::Surface => self.surface_pairing[i][j],
            Space::Divisor => self.divisor_pairing[i][j],
        }
    }

    pub fn is_odd(&self, space: Space, index: usize) -> bool {
        self.degrees(space)[index] % 2 == 1
    }
}

/// `⟨a₁⊗t^u, a₂⊗t^{−u}⟩ = μ(u)·∫ a₁·a₂` on the space of `u`.
pub fn pairing(
    model: &CohModel,
    u: &IndexVector,
    a: usize,
    a2: usize,
) -> Result<i64, FockError> {
    if classify_generator(u) == GeneratorClass::NotGenerator {
        return Err(FockError::NotGenerator(u.to_string()));
    }
    let space = space_of(u);
    model.check_class(space, a)?;
    model.check_class(space, a2)?;
    Ok(mu(u).expect("generator") * model.integral(space, a, a2))
}

/// One tensor factor `𝔮_{m·e₀+e_α}(class)` of a basis state.  `alpha = 0`
/// encodes the pure `m·e₀` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factor {
    pub alpha: i64,
    pub m: i64,
    pub class: usize,
}

impl Factor {
    pub fn generator(&self) -> IndexVector {
        IndexVector::generator(self.alpha, self.m)
    }

    pub fn space(&self) -> Space {
        if self.alpha == 0 {
            Space::Surface
        } else {
            Space::Divisor
        }
    }

    /// `z`-degree contribution `deg(a) + 2(ρ₀(u) − 1 − g(−u))`; `g(−u)` is
    /// `−1` exactly for the positive-level generators.
    fn z_degree(&self, model: &CohModel) -> i64 {
        let g_neg = if self.alpha > 0 { -1 } else { 0 };
        model.degrees(self.space())[self.class] as i64 + 2 * (self.m - 1 - g_neg)
    }
}

/// A basis state: a sorted product of factors, odd classes squaring to zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct FockState {
    factors: Vec<Factor>,
}

impl FockState {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn multidegree(&self, model: &CohModel) -> MultiDegree {
        let mut z = 0i64;
        let mut x = IndexVector::zero();
        for f in &self.factors {
            z += f.z_degree(model);
            x = x.add(&f.generator());
        }
        debug_assert!(z >= 0 && x.iter().all(|(_, v)| v >= 0));
        MultiDegree::new(
            z as u32,
            x.rho0() as u32,
            x.iter().filter(|&(a, _)| a != 0).map(|(a, v)| (a, v as u32)),
        )
    }
}

/// An integer linear combination of basis states.  Coefficients are plain
/// machine integers: they are products of μ-values, pairing entries, and
/// small multiplicities, far from overflow.
pub type Combination = BTreeMap<FockState, i64>;

fn accumulate(into: &mut Combination, state: FockState, coeff: i64) {
    if coeff == 0 {
        return;
    }
    *into.entry(state).or_insert(0) += coeff;
}

fn normalize(comb: &mut Combination) {
    comb.retain(|_, c| *c != 0);
}

/// Creation: signed sorted insertion of the new factor (Koszul sign from the
/// odd factors it passes); an odd duplicate kills the state.
fn create(model: &CohModel, factor: Factor, state: &FockState) -> Option<(FockState, i64)> {
    let odd = model.is_odd(factor.space(), factor.class);
    let pos = state.factors.partition_point(|f| *f < factor);
    if odd && state.factors[pos..].first() == Some(&factor) {
        return None;
    }
    let mut sign = 1i64;
    if odd {
        let passed = state.factors[..pos]
            .iter()
            .filter(|f| model.is_odd(f.space(), f.class))
            .count();
        if passed % 2 == 1 {
            sign = -1;
        }
    }
    let mut factors = state.factors.clone();
    factors.insert(pos, factor);
    Some((FockState { factors }, sign))
}

/// Annihilation: the super-derivation twisted by the pairing, acting from
/// the left with the Koszul sign of the factors it passes.
fn annihilate(
    model: &CohModel,
    u: &IndexVector,
    class: usize,
    state: &FockState,
) -> Combination {
    let target = u.neg();
    let space = space_of(u);
    let odd = model.is_odd(space, class);
    let mu_u = mu(u).expect("generator");
    let mut out = Combination::new();
    let mut sign = 1i64;
    for (k, f) in state.factors.iter().enumerate() {
        if f.generator() == target {
            let coeff = mu_u * model.integral(space, class, f.class);
            if coeff != 0 {
                let mut factors = state.factors.clone();
                factors.remove(k);
                accumulate(&mut out, FockState { factors }, sign * coeff);
            }
        }
        if odd && model.is_odd(f.space(), f.class) {
            sign = -sign;
        }
    }
    normalize(&mut out);
    out
}

/// Applies `𝔮_u(class)` to a single basis state.
pub fn apply_q(
    model: &CohModel,
    u: &IndexVector,
    class: usize,
    state: &FockState,
) -> Result<Combination, FockError> {
    let space = space_of(u);
    model.check_class(space, class)?;
    match classify_generator(u) {
        GeneratorClass::PosC(alpha) => {
            let factor = Factor {
                alpha,
                m: u.rho0(),
                class,
            };
            let mut out = Combination::new();
            if let Some((s, sign)) = create(model, factor, state) {
                out.insert(s, sign);
            }
            Ok(out)
        }
        GeneratorClass::NegC(_) => Ok(annihilate(model, u, class, state)),
        GeneratorClass::NotGenerator => Err(FockError::NotGenerator(u.to_string())),
    }
}

/// Applies `𝔮_u(class)` to a combination.
pub fn apply_q_comb(
    model: &CohModel,
    u: &IndexVector,
    class: usize,
    comb: &Combination,
) -> Result<Combination, FockError> {
    let mut out = Combination::new();
    for (state, coeff) in comb {
        for (s, c) in apply_q(model, u, class, state)? {
            accumulate(&mut out, s, c * coeff);
        }
    }
    normalize(&mut out);
    Ok(out)
}

/// Per-pair outcome of [`commutator_check`].
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub states_checked: usize,
    pub residuals: Vec<(FockState, Combination)>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Evaluates `[𝔮_{u₁}(a₁), 𝔮_{u₂}(a₂)]` (super-commutator when both classes
/// are odd) on each given basis state and compares with
/// `ε_{u₁+u₂}·μ(u₁)·(∫a₁a₂)·id`.
pub fn commutator_check(
    model: &CohModel,
    u1: &IndexVector,
    a1: usize,
    u2: &IndexVector,
    a2: usize,
    states: &[FockState],
) -> Result<CommutatorReport, FockError> {
    model.check_class(space_of(u1), a1)?;
    model.check_class(space_of(u2), a2)?;
    let odd1 = model.is_odd(space_of(u1), a1);
    let odd2 = model.is_odd(space_of(u2), a2);
    let koszul = if odd1 && odd2 { -1i64 } else { 1 };
    let expected: i64 = if u1.add(u2).is_zero() {
        mu(u1).expect("generator") * model.integral(space_of(u1), a1, a2)
    } else {
        0
    };
    let mut residuals = Vec::new();
    for state in states {
        let mut single = Combination::new();
        single.insert(state.clone(), 1);
        let forward = apply_q_comb(model, u1, a1, &apply_q_comb(model, u2, a2, &single)?)?;
        let backward = apply_q_comb(model, u2, a2, &apply_q_comb(model, u1, a1, &single)?)?;
        let mut residual = forward;
        for (s, c) in backward {
            accumulate(&mut residual, s, c * (-koszul));
        }
        accumulate(&mut residual, state.clone(), -expected);
        normalize(&mut residual);
        if !residual.is_empty() {
            residuals.push((state.clone(), residual));
        }
    }
    Ok(CommutatorReport {
        states_checked: states.len(),
        residuals,
    })
}

/// All creation generators `(α, m)` whose index vectors fit the order.
fn creation_generators(order: &TruncationOrder) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in 1..=order.x0_max as i64 {
        out.push((0, m));
    }
    for (&alpha, &cap) in &order.x_max {
        if cap == 0 {
            continue;
        }
        let m_lo = if alpha > 0 { 0 } else { 1 };
        for m in m_lo..=order.x0_max as i64 {
            out.push((alpha, m));
        }
    }
    out.sort();
    out
}

/// All basis states whose multidegree fits the truncation order.
pub fn enumerate_states(model: &CohModel, order: &TruncationOrder) -> Vec<FockState> {
    let mut slots: Vec<Factor> = Vec::new();
    for (alpha, m) in creation_generators(order) {
        let space = if alpha == 0 { Space::Surface } else { Space::Divisor };
        for class in 0..model.degrees(space).len() {
            slots.push(Factor { alpha, m, class });
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<Factor> = Vec::new();
    fn rec(
        model: &CohModel,
        order: &TruncationOrder,
        slots: &[Factor],
        idx: usize,
        x: &IndexVector,
        current: &mut Vec<Factor>,
        out: &mut Vec<FockState>,
    ) {
        if idx == slots.len() {
            out.push(FockState {
                factors: current.clone(),
            });
            return;
        }
        let f = slots[idx];
        let odd = model.is_odd(f.space(), f.class);
        let mut x_here = x.clone();
        let mut mult = 0usize;
        loop {
            rec(model, order, slots, idx + 1, &x_here, current, out);
            if odd && mult == 1 {
                break;
            }
            x_here = x_here.add(&f.generator());
            if !order.admits_vector(&x_here) {
                break;
            }
            current.push(f);
            mult += 1;
        }
        current.truncate(current.len() - mult);
    }
    rec(model, order, &slots, 0, &IndexVector::zero(), &mut current, &mut out);
    out.sort();
    out
}

/// Counts basis states by multidegree; matches the parabolic product series
/// on the common truncation range.
pub fn fock_character(model: &CohModel, order: &TruncationOrder) -> MultiSeries {
    let mut series = MultiSeries::zero(order.clone());
    let mut counts: BTreeMap<MultiDegree, i64> = BTreeMap::new();
    for state in enumerate_states(model, order) {
        *counts.entry(state.multidegree(model)).or_insert(0) += 1;
    }
    for (degree, count) in counts {
        let m = MultiSeries::monomial(count, degree, order.clone()).expect("within order");
        series = series.add(&m).expect("shared order");
    }
    series
}

/// Summary of an exhaustive commutator sweep.
#[derive(Debug, Clone)]
pub struct HeisenbergReport {
    pub generator_pairs: usize,
    pub states: usize,
    pub failures: Vec<String>,
}

impl HeisenbergReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the commutation relation for every ordered pair of generators
/// `u ∈ ±C` fitting `gen_order` and every class pair, on every basis state
/// fitting `state_order`.
pub fn verify_heisenberg(
    model: &CohModel,
    gen_order: &TruncationOrder,
    state_order: &TruncationOrder,
) -> HeisenbergReport {
    let states = enumerate_states(model, state_order);
    let mut ops: Vec<(IndexVector, usize)> = Vec::new();
    for (alpha, m) in creation_generators(gen_order) {
        let u = IndexVector::generator(alpha, m);
        let space = space_of(&u);
        for class in 0..model.degrees(space).len() {
            ops.push((u.clone(), class));
            ops.push((u.neg(), class));
        }
    }
    // Unordered pairs suffice: the computed bracket satisfies
    // [q₂,q₁] = −(−1)^{|a₁||a₂|}[q₁,q₂] identically, so the swapped check is
    // redundant given μ(−u) = −μ(u) and the graded symmetry of ∫.
    let pairs: Vec<(usize, usize)> = (0..ops.len())
        .flat_map(|i| (i..ops.len()).map(move |j| (i, j)))
        .collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (u1, a1) = &ops[i];
            let (u2, a2) = &ops[j];
            let report = commutator_check(model, u1, *a1, u2, *a2, &states)
                .expect("valid generators and classes");
            if report.passed() {
                None
            } else {
                Some(format!(
                    "[q_{{{u1}}}({a1}), q_{{{u2}}}({a2})]: {} residual states",
                    report.residuals.len()
                ))
            }
        })
        .collect();
    HeisenbergReport {
        generator_pairs: pairs.len(),
        states: states.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{parabolic_poincare_series, BettiData};
    use crate::lattice::Window;
    use num_traits::One;

    fn rational_model() -> CohModel {
        CohModel::hyperbolic(&BettiData::rational()).unwrap()
    }

    fn odd_model() -> CohModel {
        CohModel::hyperbolic(&BettiData {
            surface: [1, 0, 1, 0, 1],
            divisor: [1, 2, 1],
        })
        .unwrap()
    }

    fn single(state: FockState) -> Combination {
        let mut c = Combination::new();
        c.insert(state, 1);
        c
    }

    #[test]
    fn model_construction() {
        let m = rational_model();
        assert_eq!(m.degrees(Space::Surface), &[0, 2, 4]);
        assert_eq!(m.degrees(Space::Divisor), &[0, 2]);
        assert_eq!(m.integral(Space::Surface, 0, 2), 1);
        assert_eq!(m.integral(Space::Surface, 1, 1), 1);
        assert_eq!(m.integral(Space::Surface, 0, 0), 0);
        let odd = odd_model();
        assert_eq!(odd.degrees(Space::Divisor), &[0, 1, 1, 2]);
        assert_eq!(odd.integral(Space::Divisor, 1, 2), 1);
        assert_eq!(odd.integral(Space::Divisor, 2, 1), -1);
        // An odd middle Betti number has no non-degenerate skew pairing.
        assert!(CohModel::hyperbolic(&BettiData {
            surface: [1, 0, 1, 0, 1],
            divisor: [1, 1, 1],
        })
        .is_err());
        // A zero matrix is rejected as degenerate.
        assert!(matches!(
            CohModel::with_pairing(
                &BettiData::rational(),
                vec![vec![0; 3]; 3],
                vec![vec![0, 1], vec![1, 0]],
            ),
            Err(FockError::Degenerate)
        ));
    }

    #[test]
    fn pairing_examples() {
        let m = rational_model();
        let e0 = IndexVector::generator(0, 1);
        assert_eq!(pairing(&m, &e0, 0, 2).unwrap(), 1);
        let two_e0 = IndexVector::generator(0, 2);
        assert_eq!(pairing(&m, &two_e0, 0, 2).unwrap(), -2);
        assert_eq!(pairing(&m, &e0, 0, 0).unwrap(), 0);
    }

    #[test]
    fn creation_and_annihilation_on_vacuum() {
        let m = rational_model();
        let e0 = IndexVector::generator(0, 1);
        let created = apply_q(&m, &e0, 1, &FockState::vacuum()).unwrap();
        assert_eq!(created.len(), 1);
        let (state, coeff) = created.iter().next().unwrap();
        assert_eq!(coeff, &1);
        assert_eq!(
            state.factors(),
            &[Factor {
                alpha: 0,
                m: 1,
                class: 1
            }]
        );
        let killed = apply_q(&m, &e0.neg(), 1, &FockState::vacuum()).unwrap();
        assert!(killed.is_empty());
        // Single Leibniz term back to the vacuum, with coefficient
        // μ(−e₀)·∫a·a = −1 (the sign the commutation relation forces).
        let back = apply_q_comb(&m, &e0.neg(), 1, &created).unwrap();
        let mut expected = Combination::new();
        expected.insert(FockState::vacuum(), -1);
        assert_eq!(back, expected);
    }

    #[test]
    fn grading_shift_matches_operator_degree() {
        let m = odd_model();
        let order = TruncationOrder::for_window(3, -1, 2, 2);
        let states = enumerate_states(&m, &order);
        for (alpha, mm) in creation_generators(&order) {
            let u = IndexVector::generator(alpha, mm);
            let space = space_of(&u);
            for class in 0..m.degrees(space).len() {
                for dir in [1i64, -1] {
                    let op = if dir == 1 { u.clone() } else { u.neg() };
                    // deg(𝔮_op(a)) = deg(a) + 2(ρ₀(op) − 1 − g(−op)).
                    let g_neg = crate::lattice::g_value(&op.neg()).unwrap();
                    let op_z = m.degrees(space)[class] as i64 + 2 * (op.rho0() - 1 - g_neg);
                    for state in states.iter().take(40) {
                        let before = state.multidegree(&m);
                        for (out, _) in apply_q(&m, &op, class, state).unwrap() {
                            let after = out.multidegree(&m);
                            assert_eq!(after.z_deg as i64 - before.z_deg as i64, op_z);
                            assert_eq!(after.x_part().sub(&before.x_part()), op);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn odd_classes_square_to_zero() {
        let m = odd_model();
        let u = IndexVector::generator(1, 0);
        let once = apply_q(&m, &u, 1, &FockState::vacuum()).unwrap();
        let twice = apply_q_comb(&m, &u, 1, &once).unwrap();
        assert!(twice.is_empty());
        // Two distinct odd classes anticommute.
        let ab = apply_q_comb(&m, &u, 2, &once).unwrap();
        let once_b = apply_q(&m, &u, 2, &FockState::vacuum()).unwrap();
        let ba = apply_q_comb(&m, &u, 1, &once_b).unwrap();
        let (s1, c1) = ab.iter().next().unwrap();
        let (s2, c2) = ba.iter().next().unwrap();
        assert_eq!(s1, s2);
        assert_eq!(*c1, -c2);
    }

    #[test]
    fn commutator_spec_cases() {
        let m = rational_model();
        let order = TruncationOrder::for_window(2, -1, 2, 1);
        let states = enumerate_states(&m, &order);
        assert!(states.len() > 10);
        let e0 = IndexVector::generator(0, 1);
        let e1 = IndexVector::generator(1, 0);
        // Two creations commute.
        let r = commutator_check(&m, &e0, 0, &e1, 1, &states).unwrap();
        assert!(r.passed());
        // [q_{e₀}(1), q_{−e₀}(a)] with ∫ = 1 gives the identity.
        let r = commutator_check(&m, &e0, 0, &e0.neg(), 2, &states).unwrap();
        assert!(r.passed());
        // μ(2e₀) = −2.
        let two = IndexVector::generator(0, 2);
        let r = commutator_check(&m, &two, 0, &two.neg(), 2, &states).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn heisenberg_sweep_small() {
        for model in [rational_model(), odd_model()] {
            let gen_order = TruncationOrder::for_window(2, -1, 2, 1);
            let state_order = TruncationOrder::for_window(2, -1, 2, 1);
            let report = verify_heisenberg(&model, &gen_order, &state_order);
            assert!(report.passed(), "{:?}", report.failures);
            assert!(report.generator_pairs > 100);
        }
    }

    #[test]
    fn character_on_simple_vectors() {
        let m = rational_model();
        let order = TruncationOrder::for_window(2, -1, 2, 1);
        let series = fock_character(&m, &order);
        // Vacuum only at degree zero.
        assert_eq!(
            series.coefficient(&IndexVector::zero()).unwrap().display("z"),
            "1"
        );
        // One point: the surface Poincaré polynomial.
        assert_eq!(
            series
                .coefficient(&IndexVector::from_entries([(0, 1)]))
                .unwrap()
                .display("z"),
            "1+z^2+z^4"
        );
    }

    #[test]
    fn character_matches_product_series() {
        for betti in [
            BettiData::rational(),
            BettiData {
                surface: [1, 0, 1, 0, 1],
                divisor: [1, 2, 1],
            },
        ] {
            let m = CohModel::hyperbolic(&betti).unwrap();
            let window = Window::new(-2, 3).unwrap();
            let order = TruncationOrder::for_window(3, window.lo, window.hi, 2);
            let character = fock_character(&m, &order);
            let product = parabolic_poincare_series(&betti, &window, &order);
            assert_eq!(character, product);
        }
    }
}
