//! Closed-form local and global generating functions for counting by the
//! last ramification jump, the derived ordinary-conductor series, and the
//! discriminant series for cyclic groups of prime order.
//!
//! The local generating function at residue size `Q` is
//! `∏_{i=0}^{t} (1 - (Q^{c_i} X)^{p^i}) / (1 - (Q^{c_{i+1}} X)^{p^i})`, and
//! the global one replaces each factor `1/(1 - Y)` by a zeta value, giving
//! `∏_{i=0}^{t} Z_K((q^{c_{i+1}} X)^{p^i}) / Z_K((q^{c_i} X)^{p^i})`.
//! Factors with `c_i = c_{i+1}` are 1 and are never emitted.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factored::FactoredGf;
use crate::group::AbelianPGroup;
use crate::poly::Poly;
use crate::series::TruncatedSeries;
use crate::zeta::{euler_product, zeta_factored};
use crate::BigRat;

fn check_power_of_p(value: &BigUint, p: u64) -> Result<()> {
    let pb = BigUint::from(p);
    let mut m = value.clone();
    if m < pb {
        return Err(Error::NotPowerOf {
            base: value.clone(),
            prime: p,
        });
    }
    while m > BigUint::one() {
        let (q, r) = num_integer::Integer::div_rem(&m, &pb);
        if !r.is_zero() {
            return Err(Error::NotPowerOf {
                base: value.clone(),
                prime: p,
            });
        }
        m = q;
    }
    Ok(())
}

/// Local generating function at a place with residue size `Q` (a power of
/// the group's prime), counting maps by last jump.
pub fn local_asc_gf(group: &AbelianPGroup, residue: &BigUint) -> Result<FactoredGf> {
    check_power_of_p(residue, group.p())?;
    let inv = group.invariant_sequence();
    let p = group.p();
    let t = group.exponent_exp() as usize;
    let mut gf = FactoredGf::one(residue.clone());
    for i in 0..=t {
        if inv.c_at(i) == inv.c_at(i + 1) {
            continue;
        }
        let beta = p
            .checked_pow(i as u32)
            .ok_or(Error::GroupTooLarge)?;
        gf.mul_factor(inv.c_scaled(i, i, p)?, beta, 1);
        gf.mul_factor(inv.c_scaled(i + 1, i, p)?, beta, -1);
    }
    Ok(gf)
}

/// Global generating function over `F_q(T)`, assembled from zeta values.
pub fn global_asc_gf(group: &AbelianPGroup, q: u64) -> Result<FactoredGf> {
    check_power_of_p(&BigUint::from(q), group.p())?;
    let inv = group.invariant_sequence();
    let p = group.p();
    let t = group.exponent_exp() as usize;
    let zeta = zeta_factored(q)?;
    let mut gf = FactoredGf::one(BigUint::from(q));
    for i in 0..=t {
        if inv.c_at(i) == inv.c_at(i + 1) {
            continue;
        }
        let delta = p.checked_pow(i as u32).ok_or(Error::GroupTooLarge)?;
        gf = gf.mul(&zeta.compose_scale(inv.c_scaled(i + 1, i, p)?, delta));
        gf = gf.mul(&zeta.compose_scale(inv.c_scaled(i, i, p)?, delta).inverse());
    }
    Ok(gf)
}

/// The local ordinary-conductor generating function
/// `F = 1 + X (F_local - 1)`, an exact rational function.
///
/// The denominator stays in factored form; the numerator splits into
/// extracted factors of the shape `1 - Q^α X^β` (merged into `factored`)
/// times a residual polynomial with no such factor. For a cyclic group of
/// order 3 this canonicalizes to `(1-X)(1+X+QX^2)/(1-Q^2X^3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCondGf {
    factored: FactoredGf,
    residual: Poly,
}

impl LocalCondGf {
    pub fn factored(&self) -> &FactoredGf {
        &self.factored
    }

    pub fn residual(&self) -> &Poly {
        &self.residual
    }

    pub fn expand(&self, order: usize) -> TruncatedSeries {
        self.factored
            .expand(order)
            .mul(&TruncatedSeries::from_poly(&self.residual, order))
    }

    /// Dense numerator and denominator polynomials of the full function.
    pub fn num_den_polys(&self) -> (Poly, Poly) {
        let (num, den) = self.factored.num_den_polys();
        (num.mul(&self.residual), den)
    }
}

pub fn local_cond_gf(group: &AbelianPGroup, residue: &BigUint) -> Result<LocalCondGf> {
    let asc = local_asc_gf(group, residue)?;
    let (asc_num, asc_den) = asc.num_den_polys();
    // F_cond = (1 - X) + X * F_asc, over the asc denominator
    let x = Poly::from_coeffs(alloc::vec![BigRat::zero(), BigRat::one()]);
    let one_minus_x = Poly::from_coeffs(alloc::vec![BigRat::one(), -BigRat::one()]);
    let mut numerator = one_minus_x.mul(&asc_den).add(&x.mul(&asc_num));
    let mut factored = asc.denominator_part();

    // cancel denominator factors that divide the numerator exactly
    loop {
        let mut progressed = false;
        for (alpha, beta, _) in factored.clone().factors() {
            let candidate = Poly::one_minus_q_pow_x_pow(residue, alpha, beta);
            if let Some(q) = numerator.div_exact(&candidate) {
                numerator = q;
                factored.mul_factor(alpha, beta, 1);
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }

    // pull factors 1 - Q^α X^β out of the remaining numerator, largest β
    // first so composite factors like 1 - X^2 stay whole
    let initial_degree = numerator.degree().unwrap_or(0) as u64;
    for beta in (1..=initial_degree).rev() {
        let mut alpha = 0u64;
        let mut power = BigUint::one();
        loop {
            if numerator.degree().map_or(true, |d| (d as u64) < beta) {
                break;
            }
            let candidate = Poly::one_minus_q_pow_x_pow(residue, alpha, beta);
            while let Some(q) = numerator.div_exact(&candidate) {
                numerator = q;
                factored.mul_factor(alpha, beta, 1);
            }
            // the leading coefficient bounds any extractable Q^α
            power *= residue;
            if power > numerator.max_abs_numer() {
                break;
            }
            alpha += 1;
        }
    }

    Ok(LocalCondGf {
        factored,
        residual: numerator,
    })
}

/// Check the conductor relation `F_cond - 1 = X (F_asc - 1)` as an exact
/// identity of rational functions (cross-multiplied polynomial equality).
pub fn cond_relation_holds(group: &AbelianPGroup, residue: &BigUint) -> Result<bool> {
    let asc = local_asc_gf(group, residue)?;
    let cond = local_cond_gf(group, residue)?;
    let (asc_num, asc_den) = asc.num_den_polys();
    let (cond_num, cond_den) = cond.num_den_polys();
    let x = Poly::from_coeffs(alloc::vec![BigRat::zero(), BigRat::one()]);
    let left = cond_num.sub(&cond_den).mul(&asc_den);
    let right = x.mul(&asc_num.sub(&asc_den)).mul(&cond_den);
    Ok(left == right)
}

/// Global ordinary-conductor series as an Euler product, exact to `order`.
/// No factored closed form is returned: in general none exists.
pub fn global_cond_series(
    group: &AbelianPGroup,
    q: u64,
    order: usize,
) -> Result<TruncatedSeries> {
    check_power_of_p(&BigUint::from(q), group.p())?;
    euler_product(
        |residue, n| Ok(local_cond_gf(group, residue)?.expand(n)),
        q,
        order,
    )
}

/// Discriminant series for a cyclic group of prime order p: the conductor
/// divisor scales by `p - 1`, so the series is the conductor series with
/// `X ↦ X^{p-1}`. For p = 2 the two series coincide; for p = 3 this is the
/// stated `F_disc(X) = F_cond(X^2)`; larger primes follow the same
/// conductor-discriminant argument and are flagged by the CLI as an
/// extension of the stated p = 3 case.
pub fn disc_series(group: &AbelianPGroup, q: u64, order: usize) -> Result<TruncatedSeries> {
    if group.multiplicities() != [1] {
        return Err(Error::NotCyclicPrimeOrder);
    }
    let d = (group.p() - 1) as usize;
    let cond = global_cond_series(group, q, order / d)?;
    Ok(cond.substitute(d, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored::factored_from;
    use num_bigint::BigInt;
    use num_traits::Pow;

    fn group(p: u64, m: &[u32]) -> AbelianPGroup {
        AbelianPGroup::new(p, m.to_vec()).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn local_gf_for_power_of_cyclic() {
        // C_{p^e}^r: (1-X)(1-Q^{p^e r}X^{p^e}) / ((1-Q^r X)(1-Q^{(p^e-1)r}X^{p^e}))
        for (p, e, r) in [(3u64, 1u32, 1u32), (3, 1, 2), (3, 2, 1), (2, 2, 1), (2, 3, 1)] {
            let mut m = alloc::vec![0u32; e as usize];
            m[e as usize - 1] = r;
            let g = group(p, &m);
            let residue = big(p * p);
            let pe = p.pow(e);
            let expected = factored_from(
                residue.clone(),
                &[
                    (0, 1, 1),
                    (u64::from(pe) * u64::from(r), u64::from(pe), 1),
                    (u64::from(r), 1, -1),
                    ((u64::from(pe) - 1) * u64::from(r), u64::from(pe), -1),
                ],
            );
            assert_eq!(local_asc_gf(&g, &residue).unwrap(), expected, "p={p} e={e} r={r}");
        }
    }

    #[test]
    fn local_gf_of_trivial_group_is_one() {
        let g = group(3, &[]);
        assert!(local_asc_gf(&g, &big(3)).unwrap().is_one());
        assert!(global_asc_gf(&g, 3).unwrap().is_one());
    }

    #[test]
    fn local_expansion_counts_by_cumulative_tau() {
        // a_1 = Q^{τ(1)} - 1 = Q - 1 for C_3; first coefficients 1, 2, 6 at Q=3.
        let g = group(3, &[1]);
        let s = local_asc_gf(&g, &big(3)).unwrap().expand(2);
        let ints = s.integer_coeffs().unwrap();
        assert_eq!(ints, [1, 2, 6].map(BigInt::from).to_vec());
    }

    #[test]
    fn rejects_residue_not_power_of_p() {
        let g = group(3, &[1]);
        assert!(local_asc_gf(&g, &big(2)).is_err());
        assert!(local_asc_gf(&g, &big(6)).is_err());
        assert!(global_asc_gf(&g, 2).is_err());
        assert!(local_asc_gf(&g, &big(27)).is_ok());
    }

    #[test]
    fn global_gf_for_c3_matches_simplified_form() {
        // r = 1: (1-X)(1-q^{p^e+1}X^{p^e}) / ((1-q^2 X)(1-q^{p^e-1}X^{p^e}))
        let g = group(3, &[1]);
        let f = global_asc_gf(&g, 3).unwrap();
        let expected = factored_from(big(3), &[(0, 1, 1), (4, 3, 1), (2, 1, -1), (2, 3, -1)]);
        assert_eq!(f, expected);
        assert_eq!(alloc::format!("{f}"), "(1-X)(1-81X^3)/((1-9X)(1-9X^3))");
    }

    #[test]
    fn global_gf_for_c9_cancels_intermediate_levels() {
        let g = group(3, &[0, 1]);
        let f = global_asc_gf(&g, 3).unwrap();
        let expected = factored_from(big(3), &[(0, 1, 1), (10, 9, 1), (2, 1, -1), (8, 9, -1)]);
        assert_eq!(f, expected);
    }

    #[test]
    fn c3_cond_canonical_form() {
        // (1-X)(1+X+QX^2)/(1-Q^2X^3) at every residue size
        for residue in [3u64, 9, 27] {
            let g = group(3, &[1]);
            let cond = local_cond_gf(&g, &big(residue)).unwrap();
            assert_eq!(
                cond.factored(),
                &factored_from(big(residue), &[(0, 1, 1), (2, 3, -1)])
            );
            let expected_residual = Poly::from_coeffs(alloc::vec![
                BigRat::one(),
                BigRat::one(),
                BigRat::from_integer(BigInt::from(residue)),
            ]);
            assert_eq!(cond.residual(), &expected_residual);
        }
    }

    #[test]
    fn c2_cond_collapses_to_pure_factored_form() {
        // (1 - X^2)/(1 - Q X^2): the residual polynomial is trivial.
        let g = group(2, &[1]);
        let cond = local_cond_gf(&g, &big(4)).unwrap();
        assert_eq!(
            cond.factored(),
            &factored_from(big(4), &[(0, 2, 1), (1, 2, -1)])
        );
        assert!(cond.residual().is_one());
    }

    #[test]
    fn cond_relation_is_exact() {
        for (p, m) in [
            (2u64, &[1][..]),
            (2, &[1, 1]),
            (2, &[0, 0, 1]),
            (3, &[1]),
            (3, &[2]),
            (3, &[0, 1]),
        ] {
            let g = group(p, m);
            for d in 1..=2u32 {
                let residue = BigUint::from(p).pow(d);
                assert!(
                    cond_relation_holds(&g, &residue).unwrap(),
                    "p={p} m={m:?} d={d}"
                );
            }
        }
    }

    #[test]
    fn cond_coefficients_shift_asc_by_one() {
        // [X^{k+1}] F_cond = [X^{k+1}] X (F_asc - 1) for k ≥ 0
        let g = group(3, &[0, 1]);
        let residue = big(3);
        let asc = local_asc_gf(&g, &residue).unwrap().expand(12);
        let cond = local_cond_gf(&g, &residue).unwrap().expand(12);
        assert_eq!(cond.coeff(1), asc.coeff(0) - BigRat::one());
        for k in 1..12 {
            assert_eq!(cond.coeff(k + 1), asc.coeff(k));
        }
    }

    #[test]
    fn global_cond_series_small_coefficients() {
        // a_0 = 1, a_1 = 0, a_2 = (q+1)(q-1).
        let g = group(3, &[1]);
        let s = global_cond_series(&g, 3, 4).unwrap();
        let ints = s.integer_coeffs().unwrap();
        assert_eq!(ints[0], BigInt::from(1));
        assert_eq!(ints[1], BigInt::from(0));
        assert_eq!(ints[2], BigInt::from(8));
    }

    #[test]
    fn disc_series_reindexes_cond() {
        let g = group(3, &[1]);
        let cond = global_cond_series(&g, 3, 6).unwrap();
        let disc = disc_series(&g, 3, 12).unwrap();
        for n in 0..=6 {
            assert_eq!(disc.coeff(2 * n), cond.coeff(n));
        }
        for n in 0..6 {
            assert!(disc.coeff(2 * n + 1).is_zero());
        }
        // a_4 of disc = a_2 of cond = 8
        assert_eq!(disc.coeff(4), BigRat::from_integer(BigInt::from(8)));
        assert!(disc_series(&group(3, &[0, 1]), 3, 4).is_err());
        assert!(disc_series(&group(3, &[2]), 3, 4).is_err());
    }

    #[test]
    fn c2_disc_equals_cond() {
        let g = group(2, &[1]);
        let cond = global_cond_series(&g, 2, 8).unwrap();
        let disc = disc_series(&g, 2, 8).unwrap();
        assert_eq!(cond, disc);
    }
}
