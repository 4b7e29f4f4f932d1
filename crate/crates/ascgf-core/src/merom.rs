//! Approximants for the order-3 cyclic conductor series and the finite
//! zeta-ratio identity behind them.
//!
//! The depth-A local approximant is
//! `H_A(X) = (1-X)(1+QX^2) ∏_{a=1}^{A} (1-Q^{a-1}X^{2a-1})^{(-1)^a} / (1-Q^2X^3)`
//! with `1 + QX^2` stored as `(1-Q^2X^4)/(1-QX^2)`. Its Euler product over
//! all places is a finite ratio of zeta values, meromorphic on the whole
//! plane, and the new inner pole radii `q^{-a/(2a-1)}` climb toward
//! `q^{-1/2}` — the circle past which the conductor series itself cannot be
//! continued.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed};

use crate::conductor::{global_cond_series, local_cond_gf};
use crate::error::{Error, Result};
use crate::factored::FactoredGf;
use crate::group::AbelianPGroup;
use crate::poly::Poly;
use crate::zeta::{euler_product, zeta_factored};
use crate::{BigRat, Rat};

/// `H_A` at residue size `Q`, in canonical factored form.
pub fn h_approx(residue: &BigUint, depth: u32) -> FactoredGf {
    assert!(depth >= 1, "approximation depth must be positive");
    let mut gf = FactoredGf::one(residue.clone());
    gf.mul_factor(0, 1, 1); // 1 - X
    gf.mul_factor(2, 4, 1); // 1 + QX^2 = (1 - Q^2 X^4) / (1 - Q X^2)
    gf.mul_factor(1, 2, -1);
    gf.mul_factor(2, 3, -1); // denominator 1 - Q^2 X^3
    for a in 1..=u64::from(depth) {
        let sign = if a % 2 == 0 { 1 } else { -1 };
        gf.mul_factor(a - 1, 2 * a - 1, sign);
    }
    gf
}

/// The Euler product of `H_A` over all places, as the finite zeta ratio
/// `Z(qX^2) Z(q^2X^3) / (Z(X) Z(q^2X^4) ∏_{a=1}^{A} Z(q^{a-1}X^{2a-1})^{(-1)^a})`.
pub fn zeta_ratio_global(q: u64, depth: u32) -> Result<FactoredGf> {
    assert!(depth >= 1);
    let zeta = zeta_factored(q)?;
    let mut gf = zeta.compose_scale(1, 2); // Z(qX^2)
    gf = gf.mul(&zeta.compose_scale(2, 3)); // Z(q^2X^3)
    gf = gf.mul(&zeta.compose_scale(0, 1).inverse()); // 1/Z(X)
    gf = gf.mul(&zeta.compose_scale(2, 4).inverse()); // 1/Z(q^2X^4)
    for a in 1..=u64::from(depth) {
        let piece = zeta.compose_scale(a - 1, 2 * a - 1);
        // denominator exponent (-1)^a
        if a % 2 == 0 {
            gf = gf.mul(&piece.inverse());
        } else {
            gf = gf.mul(&piece);
        }
    }
    Ok(gf)
}

/// Check that the Euler product of `H_A` matches the zeta ratio, exactly,
/// to the given order. Returns the first mismatching index, if any.
pub fn approximation_identity_mismatch(
    q: u64,
    depth: u32,
    order: usize,
) -> Result<Option<usize>> {
    let product = euler_product(
        |residue, n| Ok(h_approx(residue, depth).expand(n)),
        q,
        order,
    )?;
    let ratio = zeta_ratio_global(q, depth)?.expand(order);
    for n in 0..=order {
        if product.coeff(n) != ratio.coeff(n) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The inner pole radius exponents `a/(2a-1)` for `a = 1..=depth`; they are
/// automatically in lowest terms, pairwise distinct, and strictly decrease
/// toward 1/2 (so the radii `q^{-a/(2a-1)}` increase toward `q^{-1/2}`).
pub fn inner_radius_exponents(depth: u32) -> Vec<Rat> {
    (1..=i128::from(depth))
        .map(|a| Rat::new(a, 2 * a - 1))
        .collect()
}

/// The outer radius exponents `(a-1)/(2a-1)`, the other orbit of zeta
/// factor roots (outside the critical circle).
pub fn outer_radius_exponents(depth: u32) -> Vec<Rat> {
    (1..=i128::from(depth))
        .map(|a| Rat::new(a - 1, 2 * a - 1))
        .collect()
}

/// Exact symbolic check that
/// `F_cond / H_A = (1+X+QX^2) / ((1+QX^2) ∏_{a=1}^{A} (1-Q^{a-1}X^{2a-1})^{(-1)^a})`
/// as rational functions (cross-multiplied polynomial identity).
pub fn cond_quotient_identity_holds(residue: &BigUint, depth: u32) -> Result<bool> {
    let c3 = AbelianPGroup::new(3, alloc::vec![1])?;
    let cond = local_cond_gf(&c3, residue)?;
    let (cond_num, cond_den) = cond.num_den_polys();
    let (h_num, h_den) = h_approx(residue, depth).num_den_polys();

    let rb = BigRat::from_integer(BigInt::from(residue.clone()));
    let quad_num = Poly::from_coeffs(alloc::vec![BigRat::one(), BigRat::one(), rb.clone()]);
    let quad_den = Poly::from_coeffs(alloc::vec![BigRat::one(), BigRat::new(0.into(), 1.into()), rb]);

    // split ∏ (1-Q^{a-1}X^{2a-1})^{(-1)^a} into even (numerator) and odd
    // (denominator) parts
    let mut w_even = Poly::one();
    let mut w_odd = Poly::one();
    for a in 1..=u64::from(depth) {
        let f = Poly::one_minus_q_pow_x_pow(residue, a - 1, 2 * a - 1);
        if a % 2 == 0 {
            w_even = w_even.mul(&f);
        } else {
            w_odd = w_odd.mul(&f);
        }
    }

    // F_cond/H = quad_num * w_odd / (quad_den * w_even), cross-multiplied:
    let left = cond_num.mul(&h_den).mul(&quad_den).mul(&w_even);
    let right = h_num.mul(&cond_den).mul(&quad_num).mul(&w_odd);
    Ok(left == right)
}

/// Desk-scale proxy for the analytic error bound: the coefficients `d_n` of
/// `F_cond / (zeta ratio)` must satisfy `|d_n| ≤ margin · q^{n(1+ε)/2}` with
/// `ε = 1/A`, checked exactly as `|d_n|^{2A} ≤ margin^{2A} q^{n(A+1)}`.
pub fn cond_growth_bound_holds(
    q: u64,
    depth: u32,
    order: usize,
    margin: u64,
) -> Result<bool> {
    let c3 = AbelianPGroup::new(3, alloc::vec![1])?;
    let cond = global_cond_series(&c3, q, order)?;
    let ratio = zeta_ratio_global(q, depth)?.expand(order);
    let quotient = cond.mul(&ratio.reciprocal()?);
    let d = quotient.integer_coeffs()?;
    let two_a = 2 * depth;
    for (n, coeff) in d.iter().enumerate() {
        let lhs: BigUint = coeff
            .abs()
            .to_biguint()
            .expect("abs is non-negative")
            .pow(two_a);
        let rhs = BigUint::from(margin).pow(two_a)
            * Pow::pow(&BigUint::from(q), (n as u64) * u64::from(depth + 1));
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Factor-level restatement of the local approximation lemma: the quotient
/// `F_cond / H_A` may keep poles only on or outside the circle
/// `|X| = Q^{-1/2}`, i.e. the factored quotient has no denominator factor
/// with `α/β > 1/2`. (The roots of the leftover quadratic `1+X+QX^2` sit
/// exactly on that circle; the numeric check lives in the CLI demo.)
pub fn quotient_pole_radii_within_half(residue: &BigUint, depth: u32) -> Result<bool> {
    let c3 = AbelianPGroup::new(3, alloc::vec![1])?;
    let cond = local_cond_gf(&c3, residue)?;
    let quotient = cond.factored().div(&h_approx(residue, depth));
    let half = Rat::new(1, 2);
    for (alpha, beta, e) in quotient.factors() {
        if e < 0 && Rat::new(alpha as i128, beta as i128) > half {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact part of the accumulation report for one depth `A`.
#[derive(Debug, Clone)]
pub struct Approximant {
    pub depth: u32,
    pub zeta_ratio: FactoredGf,
    /// New inner pole radius exponent `A/(2A-1)`.
    pub new_radius_exponent: Rat,
    /// All inner radius exponents up to this depth.
    pub inner_radius_exponents: Vec<Rat>,
    pub outer_radius_exponents: Vec<Rat>,
    /// Truncation order to which the Euler product matched the zeta ratio.
    pub match_order: usize,
    pub quotient_identity_holds: bool,
}

/// Build the exact approximant tower for `A = 1..=depth_max`, verifying the
/// Euler-product identity to `order` and the symbolic quotient identity at
/// residue size `q` along the way.
pub fn approximant_tower(q: u64, depth_max: u32, order: usize) -> Result<Vec<Approximant>> {
    assert!(depth_max >= 2, "the tower needs at least two approximants");
    let residue = BigUint::from(q);
    let mut out = Vec::new();
    for depth in 1..=depth_max {
        if let Some(n) = approximation_identity_mismatch(q, depth, order)? {
            return Err(Error::Internal(alloc::format!(
                "zeta-ratio identity fails at X^{n} for q={q}, A={depth}"
            )));
        }
        out.push(Approximant {
            depth,
            zeta_ratio: zeta_ratio_global(q, depth)?,
            new_radius_exponent: Rat::new(i128::from(depth), 2 * i128::from(depth) - 1),
            inner_radius_exponents: inner_radius_exponents(depth),
            outer_radius_exponents: outer_radius_exponents(depth),
            match_order: order,
            quotient_identity_holds: cond_quotient_identity_holds(&residue, depth)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::pole_spectrum;
    use crate::factored::factored_from;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn depth_one_approximant_collapses() {
        // A = 1: the a = 1 factor (1-X)^{-1} cancels the (1-X) prefactor,
        // leaving (1-Q^2X^4)/((1-QX^2)(1-Q^2X^3)).
        let h = h_approx(&big(3), 1);
        let expected = factored_from(big(3), &[(2, 4, 1), (1, 2, -1), (2, 3, -1)]);
        assert_eq!(h, expected);
    }

    #[test]
    fn depth_two_adds_plus_one_factor() {
        // the a = 2 factor is (1 - Q X^3)^{+1}
        let h = h_approx(&big(3), 2);
        assert!(h.factors().any(|(a, b, e)| (a, b, e) == (1, 3, 1)));
    }

    #[test]
    fn quotient_expansion_has_constant_term_one() {
        let c3 = AbelianPGroup::new(3, alloc::vec![1]).unwrap();
        let cond = local_cond_gf(&c3, &big(3)).unwrap().expand(8);
        let h = h_approx(&big(3), 1).expand(8);
        let quotient = cond.mul(&h.reciprocal().unwrap());
        assert!(quotient.coeff(0).is_one());
    }

    #[test]
    fn depth_one_ratio_cancels_global_zeta() {
        // the ∏ term at a = 1 is Z(X)^{-1}, cancelling the Z(X) denominator
        let r = zeta_ratio_global(3, 1).unwrap();
        assert!(!r.factors().any(|(_, b, _)| b == 1));
    }

    #[test]
    fn euler_product_matches_zeta_ratio() {
        for depth in 1..=3 {
            assert_eq!(
                approximation_identity_mismatch(3, depth, 14).unwrap(),
                None,
                "A={depth}"
            );
        }
    }

    #[test]
    fn ratio_spectrum_has_inner_pole_radii() {
        // depth 4 over q = 3: radius exponents 3/5 (pole) and 4/7, 2/5, 3/7
        // (zeros) all appear; the would-be a = 2 entry at 2/3 cancels
        // exactly against the conductor-denominator zeta factor.
        let r = zeta_ratio_global(3, 4).unwrap();
        let spectrum = pole_spectrum(&r);
        let has = |num: i128, den: i128| {
            spectrum
                .iter()
                .any(|e| e.radius_exponent == Rat::new(num, den))
        };
        assert!(has(3, 5) && has(4, 7) && has(2, 5) && has(3, 7));
        assert!(!has(2, 3));
        let pole_3_5 = spectrum
            .iter()
            .find(|e| e.radius_exponent == Rat::new(3, 5))
            .unwrap();
        assert!(pole_3_5.net_order > 0);
    }

    #[test]
    fn inner_exponents_are_reduced_distinct_and_decreasing() {
        let exps = inner_radius_exponents(6);
        for (i, r) in exps.iter().enumerate() {
            let a = i as i128 + 1;
            assert_eq!(*r.numer(), a);
            assert_eq!(*r.denom(), 2 * a - 1);
            if i > 0 {
                assert!(exps[i - 1] > *r);
            }
            assert!(*r > Rat::new(1, 2));
        }
    }

    #[test]
    fn quotient_identity_is_exact() {
        for depth in 1..=4 {
            for residue in [3u64, 9] {
                assert!(
                    cond_quotient_identity_holds(&big(residue), depth).unwrap(),
                    "A={depth} Q={residue}"
                );
            }
        }
    }

    #[test]
    fn quotient_keeps_no_inner_poles() {
        for depth in 1..=4 {
            assert!(quotient_pole_radii_within_half(&big(3), depth).unwrap());
        }
    }

    #[test]
    fn growth_proxy_bound_holds() {
        for depth in 1..=4 {
            assert!(
                cond_growth_bound_holds(3, depth, 16, 10).unwrap(),
                "A={depth}"
            );
        }
    }
}
