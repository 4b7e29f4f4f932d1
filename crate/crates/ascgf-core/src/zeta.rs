//! Place-degree counts for `F_q(T)`, the zeta function of the projective
//! line, and the generic Euler-product evaluator.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::factored::{factored_from, FactoredGf};
use crate::group::prime_power_split;
use crate::series::TruncatedSeries;

/// Counts `b_n` of places of `F_q(T)` of degree `n`:
/// `b_1 = q + 1` (the monic linear polynomials plus the infinite place) and
/// for `n ≥ 2` the monic-irreducible count `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceTable {
    q: u64,
    counts: Vec<BigUint>, // counts[n-1] = b_n
}

impl PlaceTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len()
    }

    /// `b_n`; panics if `n` is out of range.
    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n - 1]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

fn integer_moebius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `Z_K(X) = 1/((1-X)(1-qX))` in factored form.
pub fn zeta_factored(q: u64) -> Result<FactoredGf> {
    if prime_power_split(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(factored_from(BigUint::from(q), &[(0, 1, -1), (1, 1, -1)]))
}

/// Count places of each degree up to `max_degree`, then validate the table
/// against the zeta identity `∏_n (1 - X^n)^{-b_n} = Z_K(X) + O(X^{N+1})`
/// before returning it.
pub fn place_counts(q: u64, max_degree: usize) -> Result<PlaceTable> {
    if prime_power_split(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    assert!(max_degree >= 1);
    let qb = BigUint::from(q);
    let mut counts = Vec::with_capacity(max_degree);
    counts.push(BigUint::from(q + 1));
    for n in 2..=max_degree as u64 {
        let mut total = BigInt::zero();
        for d in 1..=n {
            if n % d == 0 {
                let term = BigInt::from(Pow::pow(&qb, n / d));
                total += term * integer_moebius(d);
            }
        }
        let (quot, rem) = num_integer::Integer::div_rem(&total, &BigInt::from(n));
        debug_assert!(rem.is_zero(), "necklace count must divide evenly");
        counts.push(quot.to_biguint().expect("place counts are positive"));
    }
    let table = PlaceTable { q, counts };

    // Self-check: the table must reproduce the zeta function.
    let order = max_degree;
    let mut product = TruncatedSeries::one(order);
    for n in 1..=max_degree {
        let factor = TruncatedSeries::from_poly(
            &crate::poly::Poly::one_minus_q_pow_x_pow(&BigUint::one(), 0, n as u64),
            order,
        );
        let b = BigInt::from(table.count(n).clone());
        product = product.mul(&factor.pow_big(&(-b))?);
    }
    let zeta = zeta_factored(q)?.expand(order);
    if product != zeta {
        return Err(Error::Internal(alloc::format!(
            "place table for q={q} fails the zeta identity"
        )));
    }
    Ok(table)
}

/// Assemble a global series from a family of local ones:
/// `∏_{n=1}^{N} pow( local(q^n)(X^n), b_n )`, exactly, truncated at `N`.
///
/// `local(Q, k)` must return the local series at residue size `Q` to order
/// `k`; it is only ever asked for order `⌊N/n⌋`. Its constant term must be 1.
pub fn euler_product<F>(local: F, q: u64, order: usize) -> Result<TruncatedSeries>
where
    F: Fn(&BigUint, usize) -> Result<TruncatedSeries>,
{
    let places = place_counts(q, order.max(1))?;
    let qb = BigUint::from(q);
    let mut acc = TruncatedSeries::one(order);
    for n in 1..=order {
        let residue = Pow::pow(&qb, n as u64);
        let local_series = local(&residue, order / n)?;
        if !local_series.coeff(0).is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let substituted = local_series.substitute(n, order);
        let b = BigInt::from(places.count(n).clone());
        acc = acc.mul(&substituted.pow_big(&b)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigRat;

    #[test]
    fn small_place_counts_over_f2_and_f3() {
        // See the brute-force oracle below for the same values.
        let t2 = place_counts(2, 4).unwrap();
        assert_eq!(t2.counts(), &[3u32, 1, 2, 3].map(BigUint::from));
        let t3 = place_counts(3, 3).unwrap();
        assert_eq!(t3.counts(), &[4u32, 3, 8].map(BigUint::from));
        assert_eq!(*t3.count(2), BigUint::from((9u32 - 3) / 2));
    }

    // brute-force count of monic irreducible polynomials of degree n over F_p
    fn irreducible_count(p: u64, n: usize) -> u64 {
        let count_polys = |d: usize| p.pow(d as u32);
        // decode a monic degree-d polynomial from its lower coefficients
        let decode = |code: u64, d: usize| -> Vec<u64> {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                c.push(x % p);
                x /= p;
            }
            c.push(1);
            c
        };
        let divides = |den: &[u64], num: &[u64]| -> bool {
            let mut rem: Vec<u64> = num.to_vec();
            while rem.len() >= den.len() {
                let lead = *rem.last().unwrap();
                if lead != 0 {
                    let shift = rem.len() - den.len();
                    for (i, &dc) in den.iter().enumerate() {
                        let sub = (lead * dc) % p;
                        rem[shift + i] = (rem[shift + i] + p * p - sub) % p;
                    }
                }
                rem.pop();
            }
            rem.iter().all(|&c| c == 0)
        };
        let mut count = 0;
        for code in 0..count_polys(n) {
            let f = decode(code, n);
            let mut reducible = false;
            'search: for d in 1..=n / 2 {
                for gcode in 0..count_polys(d) {
                    let g = decode(gcode, d);
                    if divides(&g, &f) {
                        reducible = true;
                        break 'search;
                    }
                }
            }
            if !reducible {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn necklace_formula_matches_brute_force_enumeration() {
        for p in [2u64, 3] {
            let table = place_counts(p, 5).unwrap();
            for n in 2..=5 {
                assert_eq!(
                    *table.count(n),
                    BigUint::from(irreducible_count(p, n)),
                    "q={p} n={n}"
                );
            }
            // degree 1: the p monic linear polynomials plus the infinite place
            assert_eq!(*table.count(1), BigUint::from(p + 1));
        }
    }

    #[test]
    fn non_prime_power_is_rejected() {
        assert_eq!(place_counts(6, 3), Err(Error::NotPrimePower(6)));
        assert!(zeta_factored(10).is_err());
        assert!(place_counts(4, 3).is_ok());
    }

    #[test]
    fn euler_product_recovers_zeta() {
        // local factor 1/(1-X) for every place gives the divisor count.
        let s = euler_product(
            |_, order| {
                TruncatedSeries::from_poly(
                    &crate::poly::Poly::one_minus_q_pow_x_pow(&BigUint::one(), 0, 1),
                    order,
                )
                .pow_big(&BigInt::from(-1))
            },
            2,
            3,
        )
        .unwrap();
        let expected = zeta_factored(2).unwrap().expand(3);
        assert_eq!(s, expected);
    }

    #[test]
    fn euler_product_of_ones_is_one() {
        let s = euler_product(|_, order| Ok(TruncatedSeries::one(order)), 3, 5).unwrap();
        assert!(s.is_one());
    }

    #[test]
    fn euler_product_rejects_bad_constant_term() {
        let r = euler_product(
            |_, order| {
                Ok(TruncatedSeries::from_coeffs(alloc::vec![
                    BigRat::from_integer(2.into());
                    order + 1
                ]))
            },
            3,
            3,
        );
        assert_eq!(r, Err(Error::ConstantTermNotOne));
    }
}
