//! Sparse univariate polynomials with exact big-integer coefficients, used
//! for Poincaré polynomials (variable `z`) and cell-count classes (variable
//! `L`).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), 0)
    }

    pub fn term(coeff: BigInt, degree: u32) -> Self {
        let mut poly = Self::default();
        poly.add_term(coeff, degree);
        poly
    }

    pub fn add_term(&mut self, coeff: BigInt, degree: u32) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: u32) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.iter() {
            out.add_term(c.clone(), d);
        }
        out
    }

    /// Value at 1: the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn all_coeffs_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    /// Renders e.g. `1+2z^2+z^4` for variable name `z`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (degree, coeff)) in self.iter().enumerate() {
            let mut c = coeff.clone();
            if idx == 0 {
                if c.sign() == num_bigint::Sign::Minus {
                    out.push('-');
                    c = -c;
                }
            } else if c.sign() == num_bigint::Sign::Minus {
                out.push('-');
                c = -c;
            } else {
                out.push('+');
            }
            let show_coeff = degree == 0 || !c.is_one();
            if show_coeff {
                out.push_str(&c.to_string());
            }
            if degree > 0 {
                out.push_str(var);
                if degree > 1 {
                    out.push_str(&format!("^{degree}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let mut p = UniPoly::one();
        p.add_term(BigInt::from(2), 2);
        p.add_term(BigInt::from(1), 4);
        assert_eq!(p.display("z"), "1+2z^2+z^4");
        assert_eq!(UniPoly::zero().display("z"), "0");
        let mut q = UniPoly::term(BigInt::from(-3), 1);
        q.add_term(BigInt::from(1), 0);
        assert_eq!(q.display("L"), "1-3L");
    }

    #[test]
    fn arithmetic() {
        let mut p = UniPoly::term(BigInt::from(5), 3);
        p.add_term(BigInt::from(-5), 3);
        assert!(p.is_zero());
        let a = UniPoly::term(BigInt::one(), 1);
        let b = a.add(&a);
        assert_eq!(b.coeff(1), BigInt::from(2));
        assert_eq!(b.eval_at_one(), BigInt::from(2));
    }
}
