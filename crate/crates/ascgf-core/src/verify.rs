//! Independent oracles: element-level homomorphism counting on the finite
//! unit-group quotients, and the closed-form-vs-Euler-product equivalence.
//!
//! The brute-force path deliberately avoids `tau` and `torsion_size`; it
//! enumerates group elements and tests annihilation by repeated addition.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::conductor::{global_asc_gf, local_asc_gf};
use crate::error::{Error, Result};
use crate::group::AbelianPGroup;
use crate::series::TruncatedSeries;
use crate::zeta::euler_product;

/// The finite quotient of the principal-unit group at a place with residue
/// size `p^d`, below level `k + 1`: the product of `(Z/p^{ν((k+1)/i)})^d`
/// over the indices `i ≤ k` not divisible by `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitQuotient {
    p: u64,
    d: u32,
    k: u64,
    /// `(i, ν((k+1)/i))` per contributing index, ascending in `i`.
    indices: Vec<(u64, u32)>,
}

/// `ν(x) = min{ j ≥ 0 : p^j ≥ x }`, evaluated at `x = num/den` and
/// cross-checked against the equivalent count `#{ j ≥ 0 : p^j < x }`.
fn nu(p: u64, num: u64, den: u64) -> u32 {
    let mut j = 0u32;
    let mut pj = 1u128;
    while pj * u128::from(den) < u128::from(num) {
        pj *= u128::from(p);
        j += 1;
    }
    let count = (0..64)
        .take_while(|&jj| {
            u128::from(p).pow(jj) * u128::from(den) < u128::from(num)
        })
        .count() as u32;
    debug_assert_eq!(j, count, "the two definitions of nu agree");
    j
}

pub fn unit_quotient(p: u64, d: u32, k: u64) -> UnitQuotient {
    assert!(d >= 1);
    let mut indices = Vec::new();
    for i in 1..=k {
        if i % p == 0 {
            continue;
        }
        let exponent = nu(p, k + 1, i);
        debug_assert!(exponent > 0, "indices up to k always contribute");
        indices.push((i, exponent));
    }
    UnitQuotient { p, d, k, indices }
}

impl UnitQuotient {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn indices(&self) -> &[(u64, u32)] {
        &self.indices
    }

    /// The cyclic exponents `a_j` of the quotient (each `ν` value repeated
    /// `d` times): the group is `∏ Z/p^{a_j}`.
    pub fn cyclic_exponents(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.indices.len() * self.d as usize);
        for &(_, e) in &self.indices {
            for _ in 0..self.d {
                out.push(e);
            }
        }
        out
    }

    /// Total rank `d · #{i ≤ k : p ∤ i}`.
    pub fn rank(&self) -> usize {
        self.indices.len() * self.d as usize
    }
}

fn add_elements(a: &[u64], b: &[u64], moduli: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(moduli)
        .map(|((&x, &y), &m)| (x + y) % m)
        .collect()
}

/// Count elements of `g` annihilated by `p^a`, by enumeration and repeated
/// addition only.
fn count_killed_by(g: &AbelianPGroup, a: u32) -> Result<u64> {
    let moduli = g.cyclic_moduli()?;
    let total: u128 = moduli.iter().map(|&m| u128::from(m)).product();
    let total = u64::try_from(total).map_err(|_| Error::GroupTooLarge)?;
    let reps = g.p().checked_pow(a).ok_or(Error::GroupTooLarge)?;
    let mut killed = 0u64;
    for code in 0..total.max(1) {
        // decode the element
        let mut element = Vec::with_capacity(moduli.len());
        let mut x = code;
        for &m in &moduli {
            element.push(x % m);
            x /= m;
        }
        // p^a * element by repeated addition
        let mut acc = alloc::vec![0u64; moduli.len()];
        for _ in 0..reps {
            acc = add_elements(&acc, &element, &moduli);
        }
        if acc.iter().all(|&v| v == 0) {
            killed += 1;
        }
    }
    Ok(killed)
}

/// Count homomorphisms from the product of `Z/p^{a_j}` into `g` by
/// independent generator-image choices, every image set enumerated
/// element-by-element. The product of the per-generator choice counts must
/// stay within `guard`.
pub fn hom_count_bruteforce(
    cyclic_exponents: &[u32],
    g: &AbelianPGroup,
    guard: &BigUint,
) -> Result<BigUint> {
    let mut product = BigUint::one();
    for &a in cyclic_exponents {
        let choices = count_killed_by(g, a)?;
        product *= BigUint::from(choices);
        if product > *guard {
            return Err(Error::BruteForceGuardExceeded {
                count: product,
                guard: guard.clone(),
            });
        }
    }
    Ok(product)
}

/// Default guard for the brute-force path.
pub fn default_bruteforce_guard() -> BigUint {
    BigUint::from(1_000_000_000u64)
}

/// Outcome of one closed-form-vs-Euler-product comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

/// Expand the closed-form global function and assemble the Euler product of
/// the local ones by disjoint code paths, then compare coefficientwise.
pub fn closed_form_vs_euler(group: &AbelianPGroup, q: u64, order: usize) -> Result<Verdict> {
    let closed: TruncatedSeries = global_asc_gf(group, q)?.expand(order);
    let product = euler_product(
        |residue, n| Ok(local_asc_gf(group, residue)?.expand(n)),
        q,
        order,
    )?;
    for n in 0..=order {
        if closed.coeff(n) != product.coeff(n) {
            return Ok(Verdict {
                equal: false,
                first_mismatch: Some(n),
            });
        }
    }
    Ok(Verdict {
        equal: true,
        first_mismatch: None,
    })
}
