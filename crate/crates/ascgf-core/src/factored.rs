//! Rational generating functions in the canonical factored form
//! `∏ (1 - q^α X^β)^e` over a fixed base `q`.
//!
//! The factor map is the source of truth: no zero exponents are stored, keys
//! are unique, and two functions over the same base are equal as rational
//! functions exactly when their maps are equal. Dense numerator/denominator
//! polynomials are derived views.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};

use crate::error::Result;
use crate::poly::Poly;
use crate::series::TruncatedSeries;

/// Key of one factor `1 - q^alpha X^beta`.
pub type FactorKey = (u64, u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredGf {
    base: BigUint,
    factors: BTreeMap<FactorKey, i64>,
}

impl FactoredGf {
    /// The empty product 1 over the given base.
    pub fn one(base: BigUint) -> Self {
        assert!(base >= BigUint::from(2u32), "base must be at least 2");
        FactoredGf {
            base,
            factors: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &BigUint {
        &self.base
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Iterate `(alpha, beta, exponent)` triples in key order.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u64, i64)> + '_ {
        self.factors.iter().map(|(&(a, b), &e)| (a, b, e))
    }

    /// Multiply by `(1 - q^alpha X^beta)^exp`, keeping the map canonical.
    pub fn mul_factor(&mut self, alpha: u64, beta: u64, exp: i64) {
        assert!(beta >= 1, "factor needs beta >= 1");
        if exp == 0 {
            return;
        }
        let slot = self.factors.entry((alpha, beta)).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.factors.remove(&(alpha, beta));
        }
    }

    pub fn mul(&self, other: &FactoredGf) -> FactoredGf {
        assert_eq!(self.base, other.base, "mixed bases in factored product");
        let mut out = self.clone();
        for (a, b, e) in other.factors() {
            out.mul_factor(a, b, e);
        }
        out
    }

    pub fn inverse(&self) -> FactoredGf {
        FactoredGf {
            base: self.base.clone(),
            factors: self.factors.iter().map(|(&k, &e)| (k, -e)).collect(),
        }
    }

    pub fn div(&self, other: &FactoredGf) -> FactoredGf {
        self.mul(&other.inverse())
    }

    /// Raise to an integer power.
    pub fn pow(&self, n: i64) -> FactoredGf {
        if n == 0 {
            return FactoredGf::one(self.base.clone());
        }
        FactoredGf {
            base: self.base.clone(),
            factors: self
                .factors
                .iter()
                .map(|(&k, &e)| (k, e.checked_mul(n).expect("factor exponent overflow")))
                .collect(),
        }
    }

    /// Substitute `X ↦ X^d` (all beta scale by `d`; the base stays fixed).
    pub fn substitute_xpow(&self, d: u64) -> FactoredGf {
        assert!(d >= 1);
        FactoredGf {
            base: self.base.clone(),
            factors: self
                .factors
                .iter()
                .map(|(&(a, b), &e)| ((a, b.checked_mul(d).expect("beta overflow")), e))
                .collect(),
        }
    }

    /// Substitute `X ↦ q^gamma X^delta`: each factor `1 - q^α X^β` becomes
    /// `1 - q^{α + βγ} X^{βδ}`.
    pub fn compose_scale(&self, gamma: u64, delta: u64) -> FactoredGf {
        assert!(delta >= 1);
        let mut out = FactoredGf::one(self.base.clone());
        for (a, b, e) in self.factors() {
            let alpha = a
                .checked_add(b.checked_mul(gamma).expect("alpha overflow"))
                .expect("alpha overflow");
            let beta = b.checked_mul(delta).expect("beta overflow");
            out.mul_factor(alpha, beta, e);
        }
        out
    }

    /// Exact power-series expansion to the given order.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(order);
        for (a, b, e) in self.factors() {
            if b as usize > order {
                // 1 - q^a X^b is 1 + O(X^{order+1}); nothing to do.
                continue;
            }
            let factor =
                TruncatedSeries::from_poly(&Poly::one_minus_q_pow_x_pow(&self.base, a, b), order);
            let powed = factor
                .pow_big(&BigInt::from(e))
                .expect("factor has constant term 1");
            acc = acc.mul(&powed);
        }
        acc
    }

    /// Dense numerator (factors with positive exponent) and denominator
    /// (negative exponents) polynomials.
    pub fn num_den_polys(&self) -> (Poly, Poly) {
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (a, b, e) in self.factors() {
            let f = Poly::one_minus_q_pow_x_pow(&self.base, a, b);
            if e > 0 {
                num = num.mul(&f.pow(e as u32));
            } else {
                den = den.mul(&f.pow((-e) as u32));
            }
        }
        (num, den)
    }

    /// Denominator factors only, as `(alpha, beta, multiplicity)` triples.
    pub fn denominator_factors(&self) -> Vec<(u64, u64, u32)> {
        self.factors()
            .filter(|&(_, _, e)| e < 0)
            .map(|(a, b, e)| (a, b, (-e) as u32))
            .collect()
    }

    /// Keep only factors with negative exponent (the denominator part),
    /// preserving their exponents.
    pub fn denominator_part(&self) -> FactoredGf {
        FactoredGf {
            base: self.base.clone(),
            factors: self
                .factors
                .iter()
                .filter(|(_, &e)| e < 0)
                .map(|(&k, &e)| (k, e))
                .collect(),
        }
    }

    /// Counting endpoint: expansion with integrality asserted.
    pub fn expand_counts(&self, order: usize) -> Result<Vec<BigInt>> {
        self.expand(order).integer_coeffs()
    }

    fn write_factor(&self, f: &mut fmt::Formatter<'_>, a: u64, b: u64) -> fmt::Result {
        write!(f, "(1")?;
        let coef: BigUint = Pow::pow(&self.base, a);
        if coef.is_one() {
            write!(f, "-")?;
        } else {
            write!(f, "-{coef}")?;
        }
        if b == 1 {
            write!(f, "X)")
        } else {
            write!(f, "X^{b})")
        }
    }

    fn write_side(&self, f: &mut fmt::Formatter<'_>, positive: bool) -> fmt::Result {
        for (a, b, e) in self.factors() {
            if (e > 0) != positive {
                continue;
            }
            self.write_factor(f, a, b)?;
            let m = e.unsigned_abs();
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FactoredGf {
    /// Symbolic product, e.g. `(1-X)(1-81X^3)/((1-9X)(1-9X^3))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let has_num = self.factors.values().any(|&e| e > 0);
        let has_den = self.factors.values().any(|&e| e < 0);
        if !has_num {
            write!(f, "1")?;
        } else {
            self.write_side(f, true)?;
        }
        if has_den {
            write!(f, "/(")?;
            self.write_side(f, false)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Convenience for building expected values in tests and callers.
pub fn factored_from(base: BigUint, triples: &[(u64, u64, i64)]) -> FactoredGf {
    let mut f = FactoredGf::one(base);
    for &(a, b, e) in triples {
        f.mul_factor(a, b, e);
    }
    f
}

impl FactoredGf {
    /// Parse the symbolic triples back into a function (used by IO layers).
    pub fn from_triples(base: BigUint, triples: &[(u64, u64, i64)]) -> FactoredGf {
        factored_from(base, triples)
    }

    pub fn to_display_string(&self) -> String {
        alloc::format!("{self}")
    }
}
