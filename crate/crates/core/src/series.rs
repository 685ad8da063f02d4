//! Exact truncated formal power series in `z`, `x₀`, and the level variables
//! `x_α`.
//!
//! Every series carries its truncation order; binary operations insist the
//! orders match, which rules out the silent order-mixing bugs endemic to
//! generating-function code.  Coefficients are arbitrary-precision integers.
//! The `z` direction is never truncated — the factors used by the product
//! formulas only produce finitely many `z`-degrees once the `x`-degrees are
//! capped.

use crate::lattice::IndexVector;
use crate::poly::UniPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("degree exceeds the truncation order")]
    OutOfOrder,
    #[error("truncation orders differ")]
    OrderMismatch,
    #[error("factor degree must not be the zero multidegree")]
    ZeroDegreeFactor,
}

/// Monomial exponent vector: `z^{z_deg} · x₀^{x0_deg} · ∏ x_α^{x_deg[α]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiDegree {
    pub z_deg: u32,
    pub x0_deg: u32,
    pub x_deg: BTreeMap<i64, u32>,
}

impl MultiDegree {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(z_deg: u32, x0_deg: u32, x_deg: impl IntoIterator<Item = (i64, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (alpha, deg) in x_deg {
            if deg > 0 {
                assert!(alpha != 0, "level 0 belongs in x0_deg");
                *map.entry(alpha).or_insert(0) += deg;
            }
        }
        Self {
            z_deg,
            x0_deg,
            x_deg: map,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.z_deg == 0 && self.x0_deg == 0 && self.x_deg.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut x_deg = self.x_deg.clone();
        for (&alpha, &deg) in &other.x_deg {
            *x_deg.entry(alpha).or_insert(0) += deg;
        }
        Self {
            z_deg: self.z_deg + other.z_deg,
            x0_deg: self.x0_deg + other.x0_deg,
            x_deg,
        }
    }

    /// The `x`-part as an index vector (dropping `z`).
    pub fn x_part(&self) -> IndexVector {
        let mut v = IndexVector::from_entries(
            self.x_deg.iter().map(|(&alpha, &deg)| (alpha, deg as i64)),
        );
        v.set(0, self.x0_deg as i64);
        v
    }
}

/// Truncation bounds: maximal `x₀`-degree and per-level caps.  The keys of
/// `x_max` are the admitted levels; absent levels admit only degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationOrder {
    pub x0_max: u32,
    pub x_max: BTreeMap<i64, u32>,
}

impl TruncationOrder {
    pub fn new(x0_max: u32, x_max: impl IntoIterator<Item = (i64, u32)>) -> Self {
        Self {
            x0_max,
            x_max: x_max.into_iter().filter(|&(a, _)| a != 0).collect(),
        }
    }

    /// Uniform per-level cap over the nonzero levels of a window `lo..hi`.
    pub fn for_window(x0_max: u32, lo: i64, hi: i64, cap: u32) -> Self {
        Self::new(x0_max, (lo..hi).filter(|&a| a != 0).map(|a| (a, cap)))
    }

    pub fn admits(&self, d: &MultiDegree) -> bool {
        d.x0_deg <= self.x0_max
            && d.x_deg
                .iter()
                .all(|(alpha, &deg)| deg <= self.x_max.get(alpha).copied().unwrap_or(0))
    }

    pub fn admits_vector(&self, v: &IndexVector) -> bool {
        v.iter().all(|(alpha, value)| {
            value >= 0
                && if alpha == 0 {
                    value <= self.x0_max as i64
                } else {
                    value <= self.x_max.get(&alpha).copied().unwrap_or(0) as i64
                }
        })
    }
}

/// Truncated series: sparse map from multidegrees to exact integer
/// coefficients, all within the attached order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    order: TruncationOrder,
    coeffs: BTreeMap<MultiDegree, BigInt>,
}

impl MultiSeries {
    pub fn zero(order: TruncationOrder) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: TruncationOrder) -> Self {
        let mut s = Self::zero(order);
        s.coeffs.insert(MultiDegree::zero(), BigInt::one());
        s
    }

    pub fn monomial(
        coeff: impl Into<BigInt>,
        degree: MultiDegree,
        order: TruncationOrder,
    ) -> Result<Self, SeriesError> {
        if !order.admits(&degree) {
            return Err(SeriesError::OutOfOrder);
        }
        let mut s = Self::zero(order);
        let coeff = coeff.into();
        if !coeff.is_zero() {
            s.coeffs.insert(degree, coeff);
        }
        Ok(s)
    }

    pub fn order(&self) -> &TruncationOrder {
        &self.order
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiDegree, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coeff_at(&self, d: &MultiDegree) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, degree: MultiDegree, coeff: BigInt) {
        if coeff.is_zero() || !self.order.admits(&degree) {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *slot += coeff;
        // Removal of a cancelled term is deferred to normalize().
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch);
        }
        let mut out = self.clone();
        for (d, c) in other.iter() {
            out.insert(d.clone(), c.clone());
        }
        out.normalize();
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch);
        }
        let mut out = Self::zero(self.order.clone());
        for (d1, c1) in self.iter() {
            for (d2, c2) in other.iter() {
                if d1.x0_deg + d2.x0_deg > self.order.x0_max {
                    continue;
                }
                let d = d1.add(d2);
                if self.order.admits(&d) {
                    out.insert(d, c1 * c2);
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Collects the terms whose `x`-part equals `v` as a polynomial in the
    /// remaining variable (the `z`-slot).
    pub fn coefficient(&self, v: &IndexVector) -> Result<UniPoly, SeriesError> {
        if !self.order.admits_vector(v) {
            return Err(SeriesError::OutOfOrder);
        }
        let mut poly = UniPoly::zero();
        for (d, c) in self.iter() {
            if &d.x_part() == v {
                poly.add_term(c.clone(), d.z_deg);
            }
        }
        Ok(poly)
    }

    /// Kills every term with a nonzero `x_α` degree (the specialization
    /// `x_α ↦ 0` for all `α ≠ 0`).
    pub fn specialize_x_to_zero(&self) -> Self {
        let mut out = Self::zero(self.order.clone());
        for (d, c) in self.iter() {
            if d.x_deg.is_empty() {
                out.coeffs.insert(d.clone(), c.clone());
            }
        }
        out
    }
}

/// Binomial coefficient `C(e, k)` for integer (possibly negative) `e`.
fn binomial(e: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= e - BigInt::from(i);
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= BigInt::from(i);
    }
    num / den
}

/// `(1 + c·x^d)^e` expanded to the truncation order; `e` may be negative.
pub fn expand_factor(
    coeff: impl Into<BigInt>,
    degree: &MultiDegree,
    exponent: i64,
    order: &TruncationOrder,
) -> Result<MultiSeries, SeriesError> {
    if degree.is_zero() {
        return Err(SeriesError::ZeroDegreeFactor);
    }
    let coeff = coeff.into();
    let e = BigInt::from(exponent);
    let mut out = MultiSeries::zero(order.clone());
    let mut power = MultiDegree::zero();
    let mut c_pow = BigInt::one();
    let mut k = 0u32;
    loop {
        let term = binomial(&e, k) * &c_pow;
        out.insert(power.clone(), term);
        k += 1;
        c_pow *= &coeff;
        power = power.add(degree);
        if !order.admits(&power) {
            break;
        }
        // A factor with no x-part would never leave the order; the zero-degree
        // guard above excludes the only such input (pure z-factors are not
        // used by the product formulas and would not terminate).
        if degree.x0_deg == 0 && degree.x_deg.is_empty() {
            break;
        }
        if exponent >= 0 && k > exponent as u32 {
            break;
        }
    }
    out.normalize();
    Ok(out)
}

impl Serialize for MultiSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            order: &'a TruncationOrder,
            terms: Terms<'a>,
        }
        struct Terms<'a>(&'a MultiSeries);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.coeffs.len()))?;
                for (d, c) in self.0.iter() {
                    seq.serialize_element(&(
                        d.z_deg,
                        d.x0_deg,
                        XDeg(&d.x_deg),
                        c.to_string(),
                    ))?;
                }
                seq.end()
            }
        }
        struct XDeg<'a>(&'a BTreeMap<i64, u32>);
        impl Serialize for XDeg<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (alpha, deg) in self.0 {
                    map.serialize_entry(&alpha.to_string(), deg)?;
                }
                map.end()
            }
        }
        Repr {
            order: &self.order,
            terms: Terms(self),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Repr {
            order: TruncationOrder,
            terms: Vec<(u32, u32, BTreeMap<String, u32>, String)>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut out = MultiSeries::zero(repr.order);
        for (z_deg, x0_deg, x_map, coeff) in repr.terms {
            let mut x_deg = Vec::new();
            for (key, deg) in x_map {
                let alpha: i64 = key
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad level key {key:?}")))?;
                x_deg.push((alpha, deg));
            }
            let coeff: BigInt = coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {coeff:?}")))?;
            out.insert(MultiDegree::new(z_deg, x0_deg, x_deg), coeff);
        }
        out.normalize();
        Ok(out)
    }
}
