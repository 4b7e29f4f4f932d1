//! Multivariate series with exact coefficients and bounded weighted support.
//!
//! Variable `X_i` carries a weight (here always `p^i`); only monomials whose
//! weighted total degree stays within the bound are kept. This is exactly the
//! support the specialization `X_i ↦ X^{p^i}` consumes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::series::TruncatedSeries;
use crate::BigRat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariateSeries {
    weights: Vec<u64>,
    bound: u64,
    terms: BTreeMap<Vec<u32>, BigRat>,
}

impl MultivariateSeries {
    pub fn one(weights: Vec<u64>, bound: u64) -> Self {
        let nvars = weights.len();
        let mut terms = BTreeMap::new();
        terms.insert(alloc::vec![0u32; nvars], BigRat::one());
        MultivariateSeries {
            weights,
            bound,
            terms,
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&v, &w)| u64::from(v) * w)
            .sum()
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[u32]) -> BigRat {
        self.terms.get(exps).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRat)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: Vec<u32>, c: BigRat) {
        if c.is_zero() || self.weighted_degree(&exps) > self.bound {
            return;
        }
        match self.terms.entry(exps) {
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn mul(&self, other: &MultivariateSeries) -> MultivariateSeries {
        assert_eq!(self.weights, other.weights, "mixed variable weights");
        let bound = self.bound.min(other.bound);
        let mut out = MultivariateSeries {
            weights: self.weights.clone(),
            bound,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    /// Multiply by the polynomial `1 + c * X_var^pow`.
    pub fn mul_one_plus_monomial(&self, var: usize, pow: u32, c: &BigRat) -> MultivariateSeries {
        let mut out = self.clone();
        for (exps, coeff) in &self.terms {
            let mut e = exps.clone();
            e[var] += pow;
            out.insert(e, coeff * c);
        }
        out
    }

    /// Multiply by the geometric series `1/(1 - c * X_var^pow)`, truncated by
    /// the weighted bound.
    pub fn mul_geometric(&self, var: usize, pow: u32, c: &BigRat) -> MultivariateSeries {
        assert!(
            u64::from(pow) * self.weights[var] > 0,
            "geometric factor must move the degree"
        );
        let mut out = MultivariateSeries {
            weights: self.weights.clone(),
            bound: self.bound,
            terms: BTreeMap::new(),
        };
        for (exps, coeff) in &self.terms {
            let mut k = 0u32;
            let mut scale = BigRat::one();
            loop {
                let mut e = exps.clone();
                e[var] += pow * k;
                if self.weighted_degree(&e) > self.bound {
                    break;
                }
                out.insert(e, coeff * &scale);
                scale *= c;
                k += 1;
            }
        }
        out
    }

    /// Specialize `X_i ↦ X^{w_i}`: the monomial with exponents `v` lands on
    /// `X^{Σ v_i w_i}`, its weighted degree.
    pub fn specialize(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = alloc::vec![BigRat::zero(); order + 1];
        for (exps, c) in &self.terms {
            let n = self.weighted_degree(exps) as usize;
            if n <= order {
                coeffs[n] += c;
            }
        }
        TruncatedSeries::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(n))
    }

    #[test]
    fn geometric_times_complement_is_one() {
        let one = MultivariateSeries::one(alloc::vec![1, 3], 9);
        let g = one.mul_geometric(0, 1, &int(5));
        let back = g.mul_one_plus_monomial(0, 1, &int(-5));
        assert_eq!(back, one);
    }

    #[test]
    fn specialize_collapses_by_weighted_degree() {
        // (1 + X_0)(1 + X_1) with weights (1, 3): specializing sends
        // X_0 X_1 to X^4.
        let one = MultivariateSeries::one(alloc::vec![1, 3], 6);
        let f = one
            .mul_one_plus_monomial(0, 1, &int(1))
            .mul_one_plus_monomial(1, 1, &int(1));
        let s = f.specialize(6);
        assert_eq!(s.coeff(0), int(1));
        assert_eq!(s.coeff(1), int(1));
        assert_eq!(s.coeff(3), int(1));
        assert_eq!(s.coeff(4), int(1));
        assert_eq!(s.coeff(2), int(0));
    }
}
