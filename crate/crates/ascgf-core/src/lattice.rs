//! Subgroup lattice of a finite abelian p-group with Möbius function values.
//!
//! Subgroups are canonicalized by their sorted element sets (feasible under
//! the enumeration bound), containment is subset testing, and the Möbius
//! function is computed by the defining recursion
//! `μ(G,G) = 1`, `μ(H,G) = -Σ_{H < K ≤ G} μ(K,G)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::AbelianPGroup;

/// Default enumeration bound `p^6`.
pub fn default_lattice_bound(p: u64) -> u128 {
    u128::from(p).pow(6)
}

/// One subgroup of the ambient group: its element set (each element an
/// exponent vector on the fixed cyclic generators), its abstract shape as a
/// multiplicity list, and its Möbius value `μ(H, G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Vec<u64>>,
    multiplicities: Vec<u32>,
    moebius: i64,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<u64>] {
        &self.elements
    }

    /// Shape of this subgroup as an abstract abelian p-group.
    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn moebius(&self) -> i64 {
        self.moebius
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: AbelianPGroup,
    subgroups: Vec<Subgroup>, // sorted by order descending; [0] is G itself
}

impl SubgroupLattice {
    pub fn group(&self) -> &AbelianPGroup {
        &self.group
    }

    /// All subgroups, the full group first (decreasing order).
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn add_elt(a: u64, b: u64, moduli: &[u64], radix: &[u64]) -> u64 {
    // elements are mixed-radix encoded exponent vectors
    let mut out = 0u64;
    for (i, &m) in moduli.iter().enumerate() {
        let da = (a / radix[i]) % m;
        let db = (b / radix[i]) % m;
        out += ((da + db) % m) * radix[i];
    }
    out
}

fn scalar_mul(mut k: u64, g: u64, moduli: &[u64], radix: &[u64]) -> u64 {
    let mut acc = 0u64;
    let mut base = g;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_elt(acc, base, moduli, radix);
        }
        base = add_elt(base, base, moduli, radix);
        k >>= 1;
    }
    acc
}

fn decode(code: u64, moduli: &[u64], radix: &[u64]) -> Vec<u64> {
    moduli
        .iter()
        .enumerate()
        .map(|(i, &m)| (code / radix[i]) % m)
        .collect()
}

/// Close a generating set under addition.
fn closure(gens: &[u64], moduli: &[u64], radix: &[u64]) -> Vec<u64> {
    let mut set: BTreeSet<u64> = BTreeSet::new();
    set.insert(0);
    let mut frontier: Vec<u64> = alloc::vec![0];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = add_elt(x, g, moduli, radix);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

fn is_subset(small: &[u64], large: &[u64]) -> bool {
    // both sorted ascending
    let mut it = large.iter();
    'outer: for s in small {
        for l in it.by_ref() {
            match l.cmp(s) {
                core::cmp::Ordering::Less => continue,
                core::cmp::Ordering::Equal => continue 'outer,
                core::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Abstract multiplicity list of a subgroup from element-level order counts:
/// `r_i = log_p |H[p^i]| - log_p |H[p^{i-1}]|`, `m_e = r_e - r_{e+1}`.
fn shape_of(elements: &[u64], p: u64, moduli: &[u64], radix: &[u64]) -> Vec<u32> {
    let mut torsion_logs = alloc::vec![0u32]; // log_p |H[p^0]| = 0
    let mut r = Vec::new();
    let mut i = 0u32;
    loop {
        i += 1;
        let pi = p.pow(i);
        let count = elements
            .iter()
            .filter(|&&x| scalar_mul(pi, x, moduli, radix) == 0)
            .count() as u64;
        let log = count.ilog(p);
        debug_assert_eq!(p.pow(log), count);
        torsion_logs.push(log);
        let ri = torsion_logs[i as usize] - torsion_logs[i as usize - 1];
        r.push(ri);
        if count == elements.len() as u64 {
            break;
        }
    }
    // r is non-increasing; m_e = r_e - r_{e+1}
    let t = r.len();
    let mut m: Vec<u32> = (1..=t)
        .map(|e| r[e - 1] - if e < t { r[e] } else { 0 })
        .collect();
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

/// Enumerate all subgroups of `g` with Möbius values, refusing groups whose
/// order exceeds `bound`.
pub fn subgroup_lattice(g: &AbelianPGroup, bound: u128) -> Result<SubgroupLattice> {
    let order = g.order();
    let order_u128 = order.to_u128().ok_or(Error::LatticeBoundExceeded {
        order: order.clone(),
        bound,
    })?;
    if order_u128 > bound {
        return Err(Error::LatticeBoundExceeded {
            order: order.clone(),
            bound,
        });
    }
    let moduli = g.cyclic_moduli()?;
    // mixed-radix place values for the element encoding
    let mut radix = alloc::vec![1u64; moduli.len()];
    for i in 1..moduli.len() {
        radix[i] = radix[i - 1] * moduli[i - 1];
    }
    let total: u64 = moduli.iter().product::<u64>().max(1);

    // all elements of G, encoded
    let all: Vec<u64> = (0..total).collect();

    // BFS from the trivial subgroup, extending by one generator at a time
    let mut seen: BTreeMap<Vec<u64>, ()> = BTreeMap::new();
    let trivial: Vec<u64> = alloc::vec![0];
    seen.insert(trivial.clone(), ());
    let mut queue: Vec<Vec<u64>> = alloc::vec![trivial];
    let mut found: Vec<Vec<u64>> = Vec::new();
    while let Some(h) = queue.pop() {
        found.push(h.clone());
        for &x in &all {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k = closure(&gens, &moduli, &radix);
            if seen.insert(k.clone(), ()).is_none() {
                queue.push(k);
            }
        }
    }

    // Möbius by decreasing order: μ(G,G) = 1, μ(H,G) = -Σ_{H < K} μ(K,G).
    found.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut moebius = alloc::vec![0i64; found.len()];
    for idx in 0..found.len() {
        if found[idx].len() == total as usize {
            moebius[idx] = 1;
            continue;
        }
        let mut sum = 0i64;
        for k in 0..idx {
            if found[k].len() > found[idx].len() && is_subset(&found[idx], &found[k]) {
                sum += moebius[k];
            }
        }
        moebius[idx] = -sum;
    }

    let subgroups = found
        .into_iter()
        .zip(moebius)
        .map(|(elements, mu)| Subgroup {
            multiplicities: shape_of(&elements, g.p(), &moduli, &radix),
            elements: elements
                .into_iter()
                .map(|code| decode(code, &moduli, &radix))
                .collect(),
            moebius: mu,
        })
        .collect();

    Ok(SubgroupLattice {
        group: g.clone(),
        subgroups,
    })
}
