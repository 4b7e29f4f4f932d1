//! Exact pole analysis of factored rational generating functions and the
//! coefficient asymptotics that follow.
//!
//! Radii are compared as exact rational exponents: the factor
//! `(1 - q^α X^β)^e` has its roots on the circle of radius `q^{-α/β}`.
//! Nothing here is floating point.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::conductor::global_asc_gf;
use crate::error::{Error, Result};
use crate::factored::FactoredGf;
use crate::group::AbelianPGroup;
use crate::poly::Poly;
use crate::{BigRat, Rat};

/// All roots of factors at one radius, merged: `points` counts root slots
/// across factors (with factor multiplicity), `net_order` is the total order
/// of the function over those points, pole-positive (`Σ -e·β`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub radius_exponent: Rat,
    pub points: u64,
    pub net_order: i64,
}

/// Entries grouped by exact radius exponent `α/β`, innermost (largest
/// exponent, smallest radius) first. Factors that cancelled at identical
/// `(α, β)` keys never appear; partial cancellations between different keys
/// at the same radius show up in `net_order`.
pub fn pole_spectrum(f: &FactoredGf) -> Vec<SpectrumEntry> {
    let mut grouped: BTreeMap<Rat, (u64, i64)> = BTreeMap::new();
    for (alpha, beta, e) in f.factors() {
        let s = Rat::new(alpha as i128, beta as i128);
        let slot = grouped.entry(s).or_insert((0, 0));
        slot.0 += beta;
        slot.1 -= e * beta as i64;
    }
    grouped
        .into_iter()
        .rev()
        .map(|(radius_exponent, (points, net_order))| SpectrumEntry {
            radius_exponent,
            points,
            net_order,
        })
        .collect()
}

/// The innermost actual pole: the largest radius exponent whose net order is
/// positive.
pub fn innermost_pole(f: &FactoredGf) -> Option<SpectrumEntry> {
    pole_spectrum(f).into_iter().find(|e| e.net_order > 0)
}

/// Pole entries only (positive net order), innermost first.
pub fn pole_entries(f: &FactoredGf) -> Vec<SpectrumEntry> {
    pole_spectrum(f)
        .into_iter()
        .filter(|e| e.net_order > 0)
        .collect()
}

/// Report for the innermost pole of a global generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    /// Exponent s of the innermost pole radius `q^{-s}`.
    pub radius_exponent: Rat,
    /// The pole itself, `q^{-a'}`, when it is the expected simple real pole.
    pub pole_location: BigRat,
    pub multiplicity: u64,
    /// `C` with coefficient asymptotics `a_n ~ C q^{a' n}`.
    pub leading_constant: BigRat,
}

fn rational_power(q: u64, exp: i128) -> BigRat {
    let v = BigInt::from(Pow::pow(&BigUint::from(q), exp.unsigned_abs()));
    if exp >= 0 {
        BigRat::from_integer(v)
    } else {
        BigRat::new(BigInt::one(), v)
    }
}

/// Exact leading constant of the global counting series for a non-trivial
/// group: the factor `(1 - q^{a'} X)` is removed from the denominator and
/// the deflated function evaluated at `X = q^{-a'}`.
///
/// Uniqueness and simplicity of the innermost pole are verified, not
/// assumed: the entry must be the lone factor at its radius with `β = 1`
/// and exponent `-1`, and no other factor may vanish at `q^{-a'}`.
pub fn leading_constant(group: &AbelianPGroup, q: u64) -> Result<BigRat> {
    if group.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let f = global_asc_gf(group, q)?;
    let a_prime = group.invariant_sequence().a_prime();
    leading_constant_of(&f, a_prime)
}

/// The deflate-and-evaluate step for an arbitrary factored function whose
/// innermost pole is claimed to be simple at `q^{-a'}`.
pub fn leading_constant_of(f: &FactoredGf, a_prime: u64) -> Result<BigRat> {
    let innermost = innermost_pole(f).ok_or(Error::PoleNotSimple)?;
    let expected = Rat::from_integer(a_prime as i128);
    if innermost.radius_exponent != expected
        || innermost.points != 1
        || innermost.net_order != 1
    {
        return Err(Error::PoleNotSimple);
    }
    let q = f.base();
    let q_small = u64::try_from(q).map_err(|_| Error::GroupTooLarge)?;
    let mut constant = BigRat::one();
    let mut removed = false;
    for (alpha, beta, e) in f.factors() {
        if (alpha, beta) == (a_prime, 1) {
            if e != -1 {
                return Err(Error::PoleNotSimple);
            }
            removed = true;
            continue;
        }
        // factor value at X = q^{-a'}: 1 - q^{α - a' β}
        let gamma = alpha as i128 - (a_prime as i128) * (beta as i128);
        if gamma == 0 {
            return Err(Error::PoleNotSimple);
        }
        let value = BigRat::one() - rational_power(q_small, gamma);
        let powed = if e >= 0 {
            Pow::pow(&value, e as u32)
        } else {
            BigRat::one() / Pow::pow(&value, (-e) as u32)
        };
        constant *= powed;
    }
    if !removed {
        return Err(Error::PoleNotSimple);
    }
    Ok(constant)
}

pub fn pole_report(group: &AbelianPGroup, q: u64) -> Result<PoleReport> {
    let a_prime = group.invariant_sequence().a_prime();
    let constant = leading_constant(group, q)?;
    Ok(PoleReport {
        radius_exponent: Rat::from_integer(a_prime as i128),
        pole_location: rational_power(q, -(a_prime as i128)),
        multiplicity: 1,
        leading_constant: constant,
    })
}

/// One per-radius block of the exact coefficient formula: the contribution
/// of `numerator(X) / (1 - q^α X^β)^m` to `a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricBlock {
    pub alpha: u64,
    pub beta: u64,
    pub multiplicity: u32,
    pub numerator: Poly,
}

/// `a_n` as an exact finite sum of per-radius geometric blocks plus a
/// polynomial correction for small `n` (partial fractions over the factor
/// structure, complex-conjugate roots kept grouped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientFormula {
    base: BigUint,
    pub poly_part: Poly,
    pub blocks: Vec<GeometricBlock>,
}

impl CoefficientFormula {
    pub fn base(&self) -> &BigUint {
        &self.base
    }

    /// Evaluate the formula at one index.
    pub fn eval(&self, n: u64) -> BigRat {
        let mut total = if n <= self.poly_part.degree().unwrap_or(0) as u64 {
            self.poly_part.coeff(n as usize)
        } else {
            BigRat::zero()
        };
        for block in &self.blocks {
            let c = BigInt::from(Pow::pow(&self.base, block.alpha));
            for (u, coeff) in block.numerator.coeffs().iter().enumerate() {
                if coeff.is_zero() || (u as u64) > n {
                    continue;
                }
                let rest = n - u as u64;
                if rest % block.beta != 0 {
                    continue;
                }
                let k = rest / block.beta;
                // coefficient of Y^k in (1 - cY)^{-m}: binom(m-1+k, m-1) c^k
                let mut binom = BigInt::one();
                for l in 1..block.multiplicity as u64 {
                    binom = binom * BigInt::from(k + l) / BigInt::from(l);
                }
                let term = BigRat::from_integer(binom * Pow::pow(&c, k));
                total += coeff * term;
            }
        }
        total
    }
}

/// Partial-fraction decomposition over the exact factor structure.
///
/// Denominator factors must sit at pairwise distinct radii (so they are
/// pairwise coprime); the global counting functions built here always do.
pub fn exact_coefficient_formula(f: &FactoredGf) -> Result<CoefficientFormula> {
    let den_factors = f.denominator_factors();
    for (i, a) in den_factors.iter().enumerate() {
        for b in den_factors.iter().skip(i + 1) {
            if Rat::new(a.0 as i128, a.1 as i128) == Rat::new(b.0 as i128, b.1 as i128) {
                return Err(Error::SharedDenominatorRadius);
            }
        }
    }
    let (num, den) = f.num_den_polys();
    let (poly_part, remainder) = num.divmod(&den);

    let mut blocks = Vec::new();
    let mut check = Poly::zero();
    for &(alpha, beta, multiplicity) in &den_factors {
        let vj = Poly::one_minus_q_pow_x_pow(f.base(), alpha, beta).pow(multiplicity);
        let wj = den.div_exact(&vj).expect("den factors multiply to den");
        // numerator of this block: remainder * wj^{-1} mod vj
        let (g, s, _) = wj.xgcd(&vj);
        if g.degree() != Some(0) {
            return Err(Error::Internal(alloc::string::String::from(
                "denominator factors are not coprime",
            )));
        }
        let inv = s.scale(&(BigRat::one() / g.coeff(0)));
        let nj = remainder.mul(&inv).divmod(&vj).1;
        check = check.add(&nj.mul(&wj));
        blocks.push(GeometricBlock {
            alpha,
            beta,
            multiplicity,
            numerator: nj,
        });
    }
    if check != remainder {
        return Err(Error::Internal(alloc::string::String::from(
            "partial fractions failed to recombine",
        )));
    }
    // innermost (dominant) block first
    blocks.sort_by(|x, y| {
        Rat::new(y.alpha as i128, y.beta as i128).cmp(&Rat::new(x.alpha as i128, x.beta as i128))
    });
    Ok(CoefficientFormula {
        base: f.base().clone(),
        poly_part,
        blocks,
    })
}
