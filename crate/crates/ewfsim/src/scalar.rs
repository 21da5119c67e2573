//! Exact real arithmetic in the ring generated by the rationals and square
//! roots of positive integers.
//!
//! A [`RadicalScalar`] is a sparse sum `Σ qₖ·√k` with `k` squarefree and every
//! stored `qₖ` nonzero. The representation is canonical, so structural
//! equality coincides with equality of real values.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision reduced fraction; the coefficient type for radicals.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// The scalar does not consist of exactly one term `q·√k`.
    #[error("scalar `{0}` is not a single radical monomial")]
    NotMonomial(String),
    /// The exact square root cannot be expressed as `q·√k`.
    #[error("square root of `{0}` is not representable exactly")]
    SqrtNotRepresentable(String),
}

/// Exact element of the ring ℚ[√2, √3, √5, …], stored as a map from
/// squarefree positive integers to rational coefficients. The key `1` holds
/// the rational part.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, Rational>,
}

/// Splits `n ≥ 1` as `root² · rem` with `rem` squarefree.
fn squarefree_split(n: u64) -> (u64, u64) {
    debug_assert!(n >= 1);
    let mut rem = 1u64;
    let mut root = 1u64;
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        let mut exp = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            exp += 1;
        }
        root *= p.pow(exp / 2);
        if exp % 2 == 1 {
            rem *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // remaining n is 1 or prime
    rem *= n;
    (root, rem)
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as an exact scalar. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::default();
        if !q.is_zero() {
            s.terms.insert(1, q);
        }
        s
    }

    /// `(num/den)·√root`, normalizing the radical to squarefree form.
    pub fn radical(num: i64, den: i64, root: u64) -> Self {
        assert!(den != 0, "zero denominator");
        assert!(root >= 1, "radicand must be positive");
        let (outer, rem) = squarefree_split(root);
        let coeff = Rational::new(BigInt::from(num) * BigInt::from(outer), BigInt::from(den));
        let mut s = Self::default();
        if !coeff.is_zero() {
            s.terms.insert(rem, coeff);
        }
        s
    }

    /// Exact `√n` for a positive integer `n`, as `c·√d` with `d` squarefree.
    pub fn sqrt_int(n: u64) -> Self {
        assert!(n >= 1, "radicand must be positive");
        Self::radical(1, 1, n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).map(|q| q.is_one()).unwrap_or(false)
    }

    /// Terms in ascending radical order; the key `1` entry is the rational part.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a plain rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The single `(k, q)` term of a monomial scalar.
    pub fn monomial(&self) -> Option<(u64, Rational)> {
        if self.terms.len() == 1 {
            let (k, q) = self.terms.iter().next().unwrap();
            Some((*k, q.clone()))
        } else {
            None
        }
    }

    /// Exact reciprocal of a single-term scalar: `1/(q·√k) = √k/(q·k)`.
    ///
    /// General field inversion is deliberately unsupported; every division
    /// site in the simulator divides by a monomial.
    pub fn invert_monomial(&self) -> Result<Self, ScalarError> {
        let (k, q) = self
            .monomial()
            .ok_or_else(|| ScalarError::NotMonomial(self.to_string()))?;
        let mut s = Self::default();
        s.terms
            .insert(k, (q * Rational::from_integer(BigInt::from(k))).recip());
        Ok(s)
    }

    /// Exact square root of a nonnegative rational scalar.
    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let q = self
            .as_rational()
            .ok_or_else(|| ScalarError::SqrtNotRepresentable(self.to_string()))?;
        if q.is_negative() {
            return Err(ScalarError::SqrtNotRepresentable(self.to_string()));
        }
        // √(a/b) = √(a·b)/b
        let prod = q.numer() * q.denom();
        let prod = prod
            .to_u64()
            .ok_or_else(|| ScalarError::SqrtNotRepresentable(self.to_string()))?;
        let (outer, rem) = squarefree_split(prod);
        let coeff = Rational::new(BigInt::from(outer), q.denom().clone());
        let mut s = Self::default();
        s.terms.insert(rem, coeff);
        Ok(s)
    }

    pub fn to_float(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, q)| q.to_f64().unwrap_or(f64::NAN) * (*k as f64).sqrt())
            .sum()
    }

    fn accumulate(&mut self, key: u64, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

impl Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.accumulate(*k, q);
        }
        out
    }
}

impl Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.accumulate(*k, &(-q));
        }
        out
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = RadicalScalar::default();
        for (ka, qa) in &self.terms {
            for (kb, qb) in &rhs.terms {
                // √a·√b = g·√(ab/g²) with g = gcd(a, b); a, b squarefree keeps
                // the product key squarefree.
                let g = gcd(*ka, *kb);
                let key = (ka / g) * (kb / g);
                let coeff = qa * qb * Rational::from_integer(BigInt::from(g));
                out.accumulate(key, &coeff);
            }
        }
        out
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        let mut out = RadicalScalar::default();
        for (k, q) in &self.terms {
            out.terms.insert(*k, -q);
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: RadicalScalar) -> RadicalScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: &RadicalScalar) -> RadicalScalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

fn fmt_coeff(f: &mut fmt::Formatter<'_>, q: &Rational, key: u64, lead: bool) -> fmt::Result {
    let mag = q.abs();
    if !lead {
        write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
    } else if q.is_negative() {
        write!(f, "-")?;
    }
    if key == 1 {
        write!(f, "{}", mag)
    } else if mag.is_one() {
        write!(f, "sqrt({})", key)
    } else {
        write!(f, "{}*sqrt({})", mag, key)
    }
}

impl fmt::Display for RadicalScalar {
    /// Canonical rendering: terms in ascending radical order, rational part
    /// first, e.g. `1/12`, `-1/6*sqrt(3)`, `1/2 + 1/2*sqrt(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, q)) in self.terms.iter().enumerate() {
            fmt_coeff(f, q, *k, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_frac(num: i64, den: u64) -> RadicalScalar {
        // num/√den in canonical form
        RadicalScalar::rational(num, 1) * RadicalScalar::sqrt_int(den).invert_monomial().unwrap()
    }

    #[test]
    fn sqrt_int_normalizes() {
        assert_eq!(RadicalScalar::sqrt_int(12), RadicalScalar::radical(2, 1, 3));
        assert_eq!(RadicalScalar::sqrt_int(1), RadicalScalar::one());
        assert_eq!(RadicalScalar::sqrt_int(2), RadicalScalar::radical(1, 1, 2));
        assert_eq!(RadicalScalar::sqrt_int(49), RadicalScalar::from_int(7));
    }

    #[test]
    fn add_cancels_and_merges() {
        let half_rt2 = RadicalScalar::radical(1, 2, 2); // 1/√2
        assert_eq!(&half_rt2 + &half_rt2, RadicalScalar::sqrt_int(2));
        let x = RadicalScalar::radical(3, 7, 5);
        assert!((&x + &(-&x)).is_zero());
        // (1 + √3/6) + (√3/3) = 1 + √3/2, cross-checked in floats
        let a = RadicalScalar::one() + RadicalScalar::radical(1, 6, 3);
        let b = RadicalScalar::radical(1, 3, 3);
        let sum = &a + &b;
        assert_eq!(sum, RadicalScalar::one() + RadicalScalar::radical(1, 2, 3));
        assert!((sum.to_float() - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn mul_reduces_cross_terms() {
        let rt2 = RadicalScalar::sqrt_int(2);
        let rt3 = RadicalScalar::sqrt_int(3);
        assert_eq!(&rt2 * &rt3, RadicalScalar::sqrt_int(6));
        // (1/√6)·(1/√2) = √3/6
        let prod = sqrt_frac(1, 6) * sqrt_frac(1, 2);
        assert_eq!(prod, RadicalScalar::radical(1, 6, 3));
        assert!((prod.to_float() - 1.0 / 12f64.sqrt()).abs() < 1e-12);
        // (1+√2)(1−√2) = −1
        let p = RadicalScalar::one() + RadicalScalar::sqrt_int(2);
        let m = RadicalScalar::one() - RadicalScalar::sqrt_int(2);
        assert_eq!(&p * &m, RadicalScalar::from_int(-1));
    }

    #[test]
    fn invert_monomial_cases() {
        let half_rt2 = RadicalScalar::radical(1, 2, 2);
        assert_eq!(
            half_rt2.invert_monomial().unwrap(),
            RadicalScalar::sqrt_int(2)
        );
        assert_eq!(
            RadicalScalar::rational(2, 3).invert_monomial().unwrap(),
            RadicalScalar::rational(3, 2)
        );
        // 1/(√3/6) = 2√3
        assert_eq!(
            RadicalScalar::radical(1, 6, 3).invert_monomial().unwrap(),
            RadicalScalar::radical(2, 1, 3)
        );
        assert!(matches!(
            RadicalScalar::zero().invert_monomial(),
            Err(ScalarError::NotMonomial(_))
        ));
        let two_terms = RadicalScalar::one() + RadicalScalar::sqrt_int(2);
        assert!(two_terms.invert_monomial().is_err());
    }

    #[test]
    fn sqrt_of_rational() {
        assert_eq!(
            RadicalScalar::rational(1, 12).sqrt().unwrap(),
            RadicalScalar::radical(1, 6, 3)
        );
        assert_eq!(
            RadicalScalar::rational(2, 3).sqrt().unwrap(),
            RadicalScalar::radical(1, 3, 6)
        );
        assert!(RadicalScalar::zero().sqrt().unwrap().is_zero());
        assert!(RadicalScalar::rational(-1, 4).sqrt().is_err());
        assert!(RadicalScalar::sqrt_int(2).sqrt().is_err());
    }

    #[test]
    fn to_float_values() {
        assert_eq!(RadicalScalar::zero().to_float(), 0.0);
        assert!((RadicalScalar::radical(1, 6, 3).to_float() - 0.2886751345948129).abs() < 1e-12);
        assert!((RadicalScalar::rational(1, 12).to_float() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(RadicalScalar::rational(1, 12).to_string(), "1/12");
        assert_eq!(RadicalScalar::radical(-1, 6, 3).to_string(), "-1/6*sqrt(3)");
        assert_eq!(
            (RadicalScalar::rational(1, 2) + RadicalScalar::radical(1, 2, 2)).to_string(),
            "1/2 + 1/2*sqrt(2)"
        );
        assert_eq!(RadicalScalar::sqrt_int(2).to_string(), "sqrt(2)");
        assert_eq!(
            (RadicalScalar::from_int(1) - RadicalScalar::sqrt_int(3)).to_string(),
            "1 - sqrt(3)"
        );
        assert_eq!(RadicalScalar::zero().to_string(), "0");
        assert_eq!(RadicalScalar::from_int(-2).to_string(), "-2");
    }

    #[test]
    fn sqrt_int_squares_back() {
        for n in 1..=200u64 {
            let s = RadicalScalar::sqrt_int(n);
            assert_eq!(&s * &s, RadicalScalar::from_int(n as i64), "n = {}", n);
        }
    }
}
