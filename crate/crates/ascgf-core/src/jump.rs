//! Multivariate generating functions for cyclic groups `C_{p^e}` that track
//! the whole tuple of ramification jumps instead of just the last one.
//!
//! The local function is
//! `∏_{i=0}^{e-1} (1-Q^{p^i-1}X_i)(1-Q^{p^{i+1}}X_i^p) /
//!               ((1-Q^{p^i}X_i)(1-Q^{p^{i+1}-1}X_i^p))`
//! where `X_i` records `jump_i - p * jump_{i+1}`; plugging in
//! `X_i = X^{p^i}` recovers the last-jump generating function.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Pow;

use crate::conductor::global_asc_gf;
use crate::error::{Error, Result};
use crate::group::AbelianPGroup;
use crate::multivariate::MultivariateSeries;
use crate::series::TruncatedSeries;
use crate::zeta::euler_product;
use crate::BigRat;

/// One factor `(1 - Q^{q_exp} X_{var}^{var_pow})^{exp}` of the local
/// multivariate function, for reporting and display.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JumpFactor {
    pub var: usize,
    pub q_exp: u64,
    pub var_pow: u32,
    pub exp: i64,
}

/// The exact factored description of the local multivariate function for
/// `C_{p^e}`.
pub fn jump_local_factors(p: u64, e: u32) -> Result<Vec<JumpFactor>> {
    let mut factors = Vec::new();
    for i in 0..e {
        let pi = p.checked_pow(i).ok_or(Error::GroupTooLarge)?;
        let pi1 = p.checked_pow(i + 1).ok_or(Error::GroupTooLarge)?;
        let var = i as usize;
        factors.push(JumpFactor { var, q_exp: pi - 1, var_pow: 1, exp: 1 });
        factors.push(JumpFactor { var, q_exp: pi1, var_pow: p as u32, exp: 1 });
        factors.push(JumpFactor { var, q_exp: pi, var_pow: 1, exp: -1 });
        factors.push(JumpFactor { var, q_exp: pi1 - 1, var_pow: p as u32, exp: -1 });
    }
    Ok(factors)
}

/// Expand the local multivariate function for `C_{p^e}` at residue size `Q`
/// to weighted total degree `bound`, with `X_i` weighted by `p^i`.
pub fn jump_local_multivariate(
    p: u64,
    e: u32,
    residue: &BigUint,
    bound: u64,
) -> Result<MultivariateSeries> {
    assert!(e >= 1, "jump functions are defined for non-trivial cyclic groups");
    let weights: Vec<u64> = (0..e)
        .map(|i| p.checked_pow(i).ok_or(Error::GroupTooLarge))
        .collect::<Result<_>>()?;
    let mut acc = MultivariateSeries::one(weights, bound);
    for f in jump_local_factors(p, e)? {
        let value = BigRat::from_integer(BigInt::from(Pow::pow(residue, f.q_exp)));
        acc = match f.exp {
            1 => acc.mul_one_plus_monomial(f.var, f.var_pow, &(-value)),
            -1 => acc.mul_geometric(f.var, f.var_pow, &value),
            _ => unreachable!("jump factors are simple"),
        };
    }
    Ok(acc)
}

/// The specialized local series (all jumps collapsed onto the last-jump
/// grading) at residue size `Q`, to order `n`.
pub fn jump_local_specialized(
    p: u64,
    e: u32,
    residue: &BigUint,
    order: usize,
) -> Result<TruncatedSeries> {
    Ok(jump_local_multivariate(p, e, residue, order as u64)?.specialize(order))
}

/// Global series from the specialized local multivariate functions, checked
/// against the closed-form global function before being returned.
pub fn jump_global_series(p: u64, e: u32, q: u64, order: usize) -> Result<TruncatedSeries> {
    let series = euler_product(
        |residue, n| jump_local_specialized(p, e, residue, n),
        q,
        order,
    )?;
    let group = AbelianPGroup::cyclic(p, e)?;
    let closed = global_asc_gf(&group, q)?.expand(order);
    if series != closed {
        return Err(Error::Internal(alloc::format!(
            "jump specialization disagrees with the closed form for p={p} e={e} q={q}"
        )));
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductor::local_asc_gf;
    use num_traits::One;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn single_level_collapses_to_last_jump_function() {
        // e = 1: the product has one factor block and X_0 is the only grading.
        for p in [2u64, 3] {
            let g = AbelianPGroup::cyclic(p, 1).unwrap();
            let local = local_asc_gf(&g, &big(p)).unwrap().expand(10);
            let spec = jump_local_specialized(p, 1, &big(p), 10).unwrap();
            assert_eq!(local, spec);
        }
    }

    #[test]
    fn specialization_matches_last_jump_function_for_higher_e() {
        for (p, e) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
            for d in 1..=2u32 {
                let residue = Pow::pow(&big(p), d);
                let g = AbelianPGroup::cyclic(p, e).unwrap();
                let local = local_asc_gf(&g, &residue).unwrap().expand(12);
                let spec = jump_local_specialized(p, e, &residue, 12).unwrap();
                assert_eq!(local, spec, "p={p} e={e} d={d}");
            }
        }
    }

    #[test]
    fn jump_profile_count_matches_brute_force() {
        // Coefficient of X_0^0 X_1^1 for p = 3, e = 2, Q = 3: maps with
        // jump profile (j_0, j_1) = (3, 1). The oracle enumerates maps on
        // Z/9 x Z/3 (the k = 3 unit quotient) and reads the jumps off the
        // generated image subgroups.
        let mv = jump_local_multivariate(3, 2, &big(3), 9).unwrap();
        let coeff = mv.coeff(&[0, 1]);

        // nu(j/i): smallest k with 3^k * i >= j
        let nu = |j: u64, i: u64| -> u32 {
            let mut k = 0u32;
            while 3u64.pow(k) * i < j {
                k += 1;
            }
            k
        };
        // generators of the image of level j under phi = (x1, x2)
        let gens = |x1: u64, x2: u64, j: u64| -> (u64, u64) {
            (
                (3u64.pow(nu(j, 1)) * x1) % 9,
                (3u64.pow(nu(j, 2)) * x2) % 9,
            )
        };
        let mut matches = 0u64;
        for x1 in 0..9u64 {
            for x2 in [0u64, 3, 6] {
                // j_0 = smallest k with phi(level k+1) trivial
                let mut j0 = 0;
                loop {
                    let (g1, g2) = gens(x1, x2, j0 + 1);
                    if g1 == 0 && g2 == 0 {
                        break;
                    }
                    j0 += 1;
                }
                // j_1 = smallest k with phi(level k+1) killed by 3
                let mut j1 = 0;
                loop {
                    let (g1, g2) = gens(x1, x2, j1 + 1);
                    if (3 * g1) % 9 == 0 && (3 * g2) % 9 == 0 {
                        break;
                    }
                    j1 += 1;
                }
                if j0 == 3 && j1 == 1 {
                    matches += 1;
                }
            }
        }
        assert_eq!(matches, 18);
        assert_eq!(coeff, BigRat::from_integer(BigInt::from(18)));
    }

    #[test]
    fn global_specialized_series_matches_closed_form() {
        for (p, e) in [(3u64, 1u32), (3, 2), (2, 2)] {
            let s = jump_global_series(p, e, p, 10).unwrap();
            assert!(s.coeff(0).is_one(), "p={p} e={e}");
        }
    }
}
