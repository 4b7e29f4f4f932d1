//! Finite abelian p-groups and their counting invariants.
//!
//! A group `G = ∏_e C_{p^e}^{m_e}` is stored as its prime together with the
//! multiplicity list `(m_1, ..., m_t)`; everything else (the c-sequence, the
//! ranks r_i, the pole exponents a and a', torsion sizes, τ) is derived.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianPGroup {
    p: u64,
    multiplicities: Vec<u32>, // multiplicities[e-1] = m_e; no trailing zeros
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factor a prime power, returning `(p, d)` with `n = p^d`, or `None`.
pub fn prime_power_split(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = n;
    for cand in 2..=u64::isqrt(n) {
        if n % cand == 0 {
            p = cand;
            break;
        }
    }
    let mut d = 0u32;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        d += 1;
    }
    (m == 1).then_some((p, d))
}

impl AbelianPGroup {
    /// Canonical constructor: checks primality and trims trailing zeros.
    pub fn new(p: u64, mut multiplicities: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        Ok(AbelianPGroup { p, multiplicities })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// Cyclic group of order p^e.
    pub fn cyclic(p: u64, e: u32) -> Result<Self> {
        let mut m = alloc::vec![0u32; e as usize];
        if e > 0 {
            m[e as usize - 1] = 1;
        }
        Self::new(p, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The multiplicity list `(m_1, ..., m_t)` with `m_t > 0` (empty for the
    /// trivial group).
    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn is_trivial(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `t` with exponent `p^t` (0 for the trivial group).
    pub fn exponent_exp(&self) -> u32 {
        self.multiplicities.len() as u32
    }

    pub fn order(&self) -> BigUint {
        let total: u64 = self
            .multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * u64::from(m))
            .sum();
        Pow::pow(&BigUint::from(self.p), total)
    }

    /// `dim_{F_p} G[p] = Σ_e m_e = c_1`.
    pub fn p_rank(&self) -> u64 {
        self.multiplicities.iter().map(|&m| u64::from(m)).sum()
    }

    /// `|G[p^r]| = p^{Σ_e m_e · min(e, r)}`.
    pub fn torsion_size(&self, r: u64) -> BigUint {
        let exp: u64 = self
            .multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| u64::from(m) * (i as u64 + 1).min(r))
            .sum();
        Pow::pow(&BigUint::from(self.p), exp)
    }

    /// `τ(k) = Σ_e m_e (k - ⌊k / p^e⌋)`.
    pub fn tau(&self, k: u64) -> u64 {
        let mut total = 0u64;
        let mut pe = 1u64;
        for &m in &self.multiplicities {
            // saturating is fine: once p^e > k the floor term is 0 anyway
            pe = pe.saturating_mul(self.p);
            total += u64::from(m) * (k - k / pe);
        }
        total
    }

    /// `∏_j |G[p^{a_j}]|` over the cyclic factors `Z/p^{a_j}` of `A`.
    pub fn hom_count_from(&self, a_prime: u64, a_exponents: &[u32]) -> Result<BigUint> {
        if a_prime != self.p {
            return Err(Error::PrimeMismatch {
                left: a_prime,
                right: self.p,
            });
        }
        let mut acc = BigUint::one();
        for &a in a_exponents {
            acc *= self.torsion_size(u64::from(a));
        }
        Ok(acc)
    }

    /// The moduli `p^{e_j}` of a fixed cyclic decomposition, one entry per
    /// cyclic factor. Errors out when an order would overflow `u64` (such
    /// groups are far beyond every enumeration bound).
    pub fn cyclic_moduli(&self) -> Result<Vec<u64>> {
        let mut moduli = Vec::new();
        for (i, &m) in self.multiplicities.iter().enumerate() {
            let modulus = self
                .p
                .checked_pow(i as u32 + 1)
                .ok_or(Error::GroupTooLarge)?;
            for _ in 0..m {
                moduli.push(modulus);
            }
        }
        Ok(moduli)
    }

    pub fn invariant_sequence(&self) -> InvariantSequence {
        InvariantSequence::of(self)
    }

    /// Canonical form of the CLI group specification, e.g. `p=3;m=1,0,2`.
    pub fn to_spec_string(&self) -> String {
        let mut s = alloc::format!("p={};m=", self.p);
        for (i, m) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&alloc::format!("{m}"));
        }
        s
    }

    /// Parse a specification like `p=3;m=1,0,2` (empty list = trivial group).
    pub fn from_spec_str(spec: &str) -> core::result::Result<Self, String> {
        let spec = spec.trim();
        let (p_part, m_part) = spec
            .split_once(';')
            .ok_or_else(|| String::from("expected \"p=<prime>;m=<comma-list>\""))?;
        let p_str = p_part
            .trim()
            .strip_prefix("p=")
            .ok_or_else(|| String::from("group spec must start with \"p=\""))?;
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| alloc::format!("invalid prime {p_str:?}"))?;
        let m_str = m_part
            .trim()
            .strip_prefix("m=")
            .ok_or_else(|| String::from("group spec must contain \"m=\""))?;
        let mut mults = Vec::new();
        if !m_str.trim().is_empty() {
            for piece in m_str.split(',') {
                let m: u32 = piece
                    .trim()
                    .parse()
                    .map_err(|_| alloc::format!("invalid multiplicity {piece:?}"))?;
                mults.push(m);
            }
        }
        Self::new(p, mults).map_err(|e| alloc::format!("{e}"))
    }
}

/// The invariant data attached to a group: the c-sequence
/// `c_0 = 0, c_1 = Σ m_e, c_{i+1} = c_i - m_i p^{-i}`, the ranks
/// `r_i = dim G[p^i]/G[p^{i-1}]`, the local pole exponent `a = c_{t+1}` and
/// the global pole exponent `a' = 1 + c_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSequence {
    c: Vec<Rat>,
    r: Vec<u64>,
    a: Rat,
    a_prime: u64,
}

impl InvariantSequence {
    fn of(g: &AbelianPGroup) -> Self {
        let p = g.p() as i128;
        let t = g.exponent_exp() as usize;
        let r: Vec<u64> = (1..=t)
            .map(|i| {
                g.multiplicities()[i - 1..]
                    .iter()
                    .map(|&m| u64::from(m))
                    .sum()
            })
            .collect();
        let mut c = alloc::vec![Rat::from_integer(0)];
        if t > 0 {
            c.push(Rat::from_integer(g.p_rank() as i128));
            for i in 1..=t {
                let m_i = i128::from(g.multiplicities()[i - 1]);
                let step = Rat::new(m_i, p.pow(i as u32));
                let next = c[i] - step;
                c.push(next);
            }
        }
        let a = *c.last().expect("c is non-empty");
        let a_prime = 1 + g.p_rank();
        let seq = InvariantSequence { c, r, a, a_prime };
        seq.assert_integral_scalings(p);
        seq
    }

    fn assert_integral_scalings(&self, p: i128) {
        for (i, ci) in self.c.iter().enumerate() {
            let scaled = ci * Rat::from_integer(p.pow(i as u32));
            assert!(scaled.is_integer(), "c_i * p^i must be an integer");
        }
    }

    /// `c_0, ..., c_{t+1}` (just `c_0 = 0` for the trivial group).
    pub fn c(&self) -> &[Rat] {
        &self.c
    }

    /// `c_i`, constant for `i ≥ t + 1`.
    pub fn c_at(&self, i: usize) -> Rat {
        if i < self.c.len() {
            self.c[i]
        } else {
            self.a
        }
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn a(&self) -> Rat {
        self.a
    }

    pub fn a_prime(&self) -> u64 {
        self.a_prime
    }

    /// `c_j * p^i` as a non-negative integer. The generating-function factor
    /// at level `i` uses `j = i` (numerator) and `j = i + 1` (denominator);
    /// both scalings are integral.
    pub fn c_scaled(&self, j: usize, i: usize, p: u64) -> Result<u64> {
        let scaled = self.c_at(j) * Rat::from_integer((p as i128).pow(i as u32));
        if !scaled.is_integer() {
            return Err(Error::GroupTooLarge);
        }
        u64::try_from(scaled.to_integer()).map_err(|_| Error::GroupTooLarge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    fn group(p: u64, m: &[u32]) -> AbelianPGroup {
        AbelianPGroup::new(p, m.to_vec()).unwrap()
    }

    #[test]
    fn c_sequence_for_c9() {
        let inv = group(3, &[0, 1]).invariant_sequence();
        assert_eq!(
            inv.c(),
            &[rat(0, 1), rat(1, 1), rat(1, 1), rat(8, 9)]
        );
        assert_eq!(inv.a(), rat(8, 9));
        assert_eq!(inv.a_prime(), 2);
        assert_eq!(inv.r(), &[1, 1]);
    }

    #[test]
    fn c_sequence_for_elementary_abelian() {
        let inv = group(3, &[2]).invariant_sequence();
        assert_eq!(inv.c(), &[rat(0, 1), rat(2, 1), rat(4, 3)]);
        assert_eq!(inv.a(), rat(4, 3));
        assert_eq!(inv.a_prime(), 3);
    }

    #[test]
    fn trivial_group_invariants() {
        let inv = group(3, &[]).invariant_sequence();
        assert_eq!(inv.c(), &[rat(0, 1)]);
        assert_eq!(inv.a(), rat(0, 1));
        assert_eq!(inv.a_prime(), 1);
        assert!(inv.r().is_empty());
    }

    #[test]
    fn closed_form_matches_recursion() {
        // c_i = Σ_{j<i} (p-1) p^{-j} r_j + p^{1-i} r_i for i ≥ 1.
        for p in [2u64, 3, 5] {
            for m in [
                alloc::vec![1],
                alloc::vec![2, 1],
                alloc::vec![0, 0, 1],
                alloc::vec![1, 1, 1],
                alloc::vec![3],
            ] {
                let g = AbelianPGroup::new(p, m).unwrap();
                let inv = g.invariant_sequence();
                let t = g.exponent_exp() as usize;
                for i in 1..=t + 1 {
                    let mut closed = Rat::from_integer(0);
                    for j in 1..i {
                        let rj = *inv.r().get(j - 1).unwrap_or(&0) as i128;
                        closed += Rat::new((p as i128 - 1) * rj, (p as i128).pow(j as u32));
                    }
                    let ri = *inv.r().get(i - 1).unwrap_or(&0) as i128;
                    closed += Rat::new(ri, (p as i128).pow(i as u32 - 1));
                    assert_eq!(inv.c_at(i), closed, "p={p} i={i}");
                }
            }
        }
    }

    #[test]
    fn torsion_sizes() {
        // Oracle in lattice tests enumerates elements; here the stated values.
        assert_eq!(group(3, &[0, 1]).torsion_size(1), BigUint::from(3u32));
        assert_eq!(group(3, &[0, 1]).torsion_size(0), BigUint::from(1u32));
        assert_eq!(group(3, &[1, 1]).torsion_size(2), BigUint::from(27u32));
    }

    #[test]
    fn tau_values() {
        assert_eq!(group(3, &[1]).tau(3), 2);
        assert_eq!(group(3, &[1]).tau(0), 0);
        assert_eq!(group(3, &[0, 1]).tau(10), 9);
        assert_eq!(group(2, &[]).tau(17), 0);
    }

    #[test]
    fn tau_is_eventually_arithmetic() {
        // τ(k + p^t) - τ(k) = a p^t for all k.
        for (p, m) in [(2u64, alloc::vec![1, 1]), (3, alloc::vec![0, 2]), (5, alloc::vec![1])] {
            let g = AbelianPGroup::new(p, m).unwrap();
            let inv = g.invariant_sequence();
            let pt = p.pow(g.exponent_exp());
            let jump = inv.a() * Rat::from_integer(pt as i128);
            assert!(jump.is_integer());
            let jump = jump.to_integer() as u64;
            for k in 0..=50 {
                assert_eq!(g.tau(k + pt) - g.tau(k), jump);
            }
        }
    }

    #[test]
    fn hom_counts() {
        let c9 = group(3, &[0, 1]);
        assert_eq!(c9.hom_count_from(3, &[1]).unwrap(), BigUint::from(3u32));
        assert_eq!(c9.hom_count_from(3, &[]).unwrap(), BigUint::from(1u32));
        let c3c3 = group(3, &[2]);
        assert_eq!(
            c3c3.hom_count_from(3, &[1, 1]).unwrap(),
            BigUint::from(81u32)
        );
        assert!(c9.hom_count_from(2, &[1]).is_err());
    }

    #[test]
    fn spec_string_round_trip() {
        let g = AbelianPGroup::from_spec_str("p=3;m=1,0,2").unwrap();
        assert_eq!(g.multiplicities(), &[1, 0, 2]);
        assert_eq!(g.to_spec_string(), "p=3;m=1,0,2");
        let t = AbelianPGroup::from_spec_str("p=3;m=").unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.to_spec_string(), "p=3;m=");
        // trailing zeros are trimmed in the canonical echo
        let g2 = AbelianPGroup::from_spec_str("p=2;m=1,0").unwrap();
        assert_eq!(g2.to_spec_string(), "p=2;m=1");
        assert!(AbelianPGroup::from_spec_str("p=4;m=1").is_err());
        assert!(AbelianPGroup::from_spec_str("m=1").is_err());
    }

    #[test]
    fn prime_power_splits() {
        assert_eq!(prime_power_split(8), Some((2, 3)));
        assert_eq!(prime_power_split(9), Some((3, 2)));
        assert_eq!(prime_power_split(5), Some((5, 1)));
        assert_eq!(prime_power_split(12), None);
        assert_eq!(prime_power_split(1), None);
    }
}
