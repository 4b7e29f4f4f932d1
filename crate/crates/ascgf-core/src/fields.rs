//! Counting field extensions (surjective maps) by inclusion–exclusion over
//! the subgroup lattice: the coefficient of `X^n` is
//! `Σ_{H ≤ G} μ(H, G) · |H| · [X^n] F_{H}(X)`, an unnormalized surjection
//! count. Since every étale series here is rational, the field series is a
//! finite integer combination of factored functions; the combination is
//! reported alongside the expanded series.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::conductor::global_asc_gf;
use crate::error::{Error, Result};
use crate::factored::FactoredGf;
use crate::group::AbelianPGroup;
use crate::lattice::subgroup_lattice;
use crate::series::TruncatedSeries;
use crate::BigRat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCountReport {
    /// Surjection counts by invariant degree; non-negative integers.
    pub series: TruncatedSeries,
    /// The rational combination: `series = Σ weight · expand(gf)`, one piece
    /// per subgroup shape (weights collect `μ(H,G)·|H|` over subgroups of
    /// that shape).
    pub pieces: Vec<(BigInt, FactoredGf)>,
}

pub fn field_count_series(
    group: &AbelianPGroup,
    q: u64,
    order: usize,
    lattice_bound: u128,
) -> Result<FieldCountReport> {
    let lattice = subgroup_lattice(group, lattice_bound)?;

    // weights per abstract subgroup shape; the sum still runs over actual
    // subgroups, only the per-shape series computation is shared
    let mut weights: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for sub in lattice.subgroups() {
        let w = BigInt::from(sub.moebius()) * BigInt::from(sub.order() as u64);
        *weights
            .entry(sub.multiplicities().to_vec())
            .or_insert_with(BigInt::zero) += w;
    }

    let mut series = TruncatedSeries::zero(order);
    let mut pieces = Vec::new();
    for (shape, weight) in weights {
        if weight.is_zero() {
            continue;
        }
        let h = AbelianPGroup::new(group.p(), shape)?;
        let gf = global_asc_gf(&h, q)?;
        series = series.add(
            &gf.expand(order)
                .scale(&BigRat::from_integer(weight.clone())),
        );
        pieces.push((weight, gf));
    }

    // surjection counts must be non-negative integers
    if series.counting_coeffs().is_err() {
        return Err(Error::Internal(alloc::string::String::from(
            "field count series has a negative or fractional coefficient",
        )));
    }
    Ok(FieldCountReport { series, pieces })
}
