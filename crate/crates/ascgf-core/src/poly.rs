//! Dense polynomials with exact rational coefficients.
//!
//! Factored generating functions are the source of truth; these polynomials
//! are the derived view used for cancellation, partial fractions, and
//! cross-multiplied identity checks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Signed, Zero};

use crate::BigRat;

/// A polynomial in X, stored densely with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Poly { coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        Poly { coeffs }.trimmed()
    }

    /// The polynomial `1 - base^alpha * X^beta`.
    pub fn one_minus_q_pow_x_pow(base: &BigUint, alpha: u64, beta: u64) -> Self {
        let mut coeffs = vec![BigRat::zero(); beta as usize + 1];
        coeffs[0] = BigRat::one();
        let value = BigRat::from_integer(Pow::pow(base, alpha).into());
        coeffs[beta as usize] = -value;
        Poly { coeffs }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> BigRat {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Poly { coeffs }.trimmed()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly { coeffs }.trimmed()
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
        .trimmed()
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    ///
    /// Panics if `div` is zero.
    pub fn divmod(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (Poly::zero(), self.clone());
        }
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let qd = rem.len() - 1 - dd;
        let mut q = vec![BigRat::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in div.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = &c * b;
                    rem[k + j] -= t;
                }
            }
            q[k] = c;
        }
        (Poly { coeffs: q }.trimmed(), Poly { coeffs: rem }.trimmed())
    }

    /// Exact division; returns `None` when the remainder is non-zero.
    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(div);
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`,
    /// `g` monic (or zero).
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(d) = r0.degree() {
            let lead = r0.coeffs[d].clone();
            if !lead.is_one() {
                let inv = BigRat::one() / lead;
                r0 = r0.scale(&inv);
                s0 = s0.scale(&inv);
                t0 = t0.scale(&inv);
            }
        }
        (r0, s0, t0)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        self.xgcd(other).0
    }

    /// Largest absolute value among coefficient numerators, as an integer
    /// upper bound (coefficients here are integral in all callers).
    pub fn max_abs_numer(&self) -> BigUint {
        let mut best = BigUint::zero();
        for c in &self.coeffs {
            let n = c.numer().abs().to_biguint().expect("abs is non-negative");
            if n > best {
                best = n;
            }
        }
        best
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "X")?;
                } else {
                    write!(f, "X^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(ints: &[i64]) -> Poly {
        Poly::from_coeffs(
            ints.iter()
                .map(|&x| BigRat::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    #[test]
    fn divmod_round_trips() {
        let a = p(&[1, 0, -2, 5, 7]);
        let b = p(&[3, 1, 2]);
        let (q, r) = a.divmod(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < b.degree().unwrap());
    }

    #[test]
    fn exact_division_of_geometric_factor() {
        // 1 - Q^3 X^3 = (1 - Q X)(1 + Q X + Q^2 X^2) with Q = 3.
        let big = Poly::one_minus_q_pow_x_pow(&BigUint::from(3u32), 3, 3);
        let small = Poly::one_minus_q_pow_x_pow(&BigUint::from(3u32), 1, 1);
        let q = big.div_exact(&small).unwrap();
        assert_eq!(q, p(&[1, 3, 9]));
        assert!(p(&[1, 1, 1]).div_exact(&small).is_none());
    }

    #[test]
    fn xgcd_gives_bezout_identity() {
        let a = p(&[1, -1]).mul(&p(&[1, 0, 2]));
        let b = p(&[1, -1]).mul(&p(&[5, 1]));
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        // gcd is X - 1 up to normalization, hence monic of degree 1.
        assert_eq!(g.degree(), Some(1));
        assert!(g.coeffs()[1].is_one());
    }

    #[test]
    fn display_is_readable() {
        let q = p(&[1, 1, 3]);
        assert_eq!(alloc::format!("{q}"), "1 + X + 3*X^2");
    }
}
