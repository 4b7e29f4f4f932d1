//! Truncated power series with exact big-rational coefficients.
//!
//! Arithmetic is exact; truncation is the only lossy step and is tracked by
//! the order `N` (a series stores the coefficients of `X^0 .. X^N`).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::BigRat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRat>, // length = order + 1
}

impl TruncatedSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRat::zero(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRat::one();
        s
    }

    /// Build from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        for n in 0..=order {
            s.coeffs[n] = p.coeff(n);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> BigRat {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Restrict (or zero-pad) to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRat::zero());
        coeffs.truncate(order + 1);
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut s = Self::zero(order);
        for n in 0..=order {
            s.coeffs[n] = self.coeff(n) + other.coeff(n);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut s = Self::zero(order);
        for n in 0..=order {
            s.coeffs[n] = self.coeff(n) - other.coeff(n);
        }
        s
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut s = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if !other.coeffs[j].is_zero() {
                    let t = &self.coeffs[i] * &other.coeffs[j];
                    s.coeffs[i + j] += t;
                }
            }
        }
        s
    }

    /// `X ↦ X^d`, re-truncated at `order`.
    pub fn substitute(&self, d: usize, order: usize) -> Self {
        assert!(d >= 1, "substitution degree must be positive");
        let mut s = Self::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            let m = n * d;
            if m <= order && !c.is_zero() {
                s.coeffs[m] = c.clone();
            }
        }
        s
    }

    /// `self^B` for a (possibly huge, possibly negative) integer exponent.
    ///
    /// Requires constant term 1. With `g = self - 1` of valuation `v ≥ 1`,
    /// this is `Σ_k binomial(B, k) g^k`, a finite sum since `g^k` starts at
    /// `X^{kv}`.
    pub fn pow_big(&self, exponent: &BigInt) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.order();
        let mut g = self.clone();
        g.coeffs[0] = BigRat::zero();
        let mut acc = Self::one(order);
        if g.coeffs.iter().all(|c| c.is_zero()) {
            return Ok(acc);
        }
        let mut g_pow = Self::one(order);
        let mut binom = BigRat::one();
        let mut k = BigInt::zero();
        loop {
            // binomial(B, k) = binomial(B, k-1) * (B - k + 1) / k
            k += 1;
            let factor = BigRat::from_integer(exponent - (&k - BigInt::one()))
                / BigRat::from_integer(k.clone());
            binom *= factor;
            g_pow = g_pow.mul(&g);
            if g_pow.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            acc = acc.add(&g_pow.scale(&binom));
        }
        Ok(acc)
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let order = self.order();
        let mut g = self.clone();
        g.coeffs[0] = BigRat::zero();
        let mut acc = Self::zero(order);
        let mut g_pow = Self::one(order);
        for k in 1..=order as i64 {
            g_pow = g_pow.mul(&g);
            if g_pow.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = BigRat::new(BigInt::from(sign), BigInt::from(k));
            acc = acc.add(&g_pow.scale(&c));
        }
        Ok(acc)
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero);
        }
        let order = self.order();
        let mut acc = Self::one(order);
        let mut pow = Self::one(order);
        let mut factorial = BigInt::one();
        for k in 1..=order as i64 {
            pow = pow.mul(self);
            if pow.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            factorial *= k;
            let c = BigRat::new(BigInt::one(), factorial.clone());
            acc = acc.add(&pow.scale(&c));
        }
        Ok(acc)
    }

    /// Multiplicative inverse, if the constant term is 1.
    pub fn reciprocal(&self) -> Result<Self> {
        self.pow_big(&BigInt::from(-1))
    }

    /// Extract integer coefficients; counting endpoints call this to assert
    /// integrality.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegerCoefficient { index })
                }
            })
            .collect()
    }

    /// Like `integer_coeffs`, additionally requiring non-negativity.
    pub fn counting_coeffs(&self) -> Result<Vec<BigInt>> {
        let ints = self.integer_coeffs()?;
        for (index, c) in ints.iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NonIntegerCoefficient { index });
            }
        }
        Ok(ints)
    }
}
