//! Exact arithmetic for the generating functions that count étale extensions
//! of rational function fields `F_q(T)` with a fixed finite abelian p-group
//! of characteristic p, organized by conductor-type invariants.
//!
//! Everything in this crate is exact: series coefficients are big rationals
//! (big integers in all counting contexts), rational generating functions are
//! kept in the canonical factored form `∏ (1 - q^α X^β)^e`, and pole radii are
//! compared as exact rational exponents. Floating point never appears here;
//! the CLI crate owns the few numeric report fields.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature just forwards to the `num-*` backends.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod asymptotics;
pub mod conductor;
pub mod error;
pub mod factored;
pub mod fields;
pub mod fit;
pub mod group;
pub mod jump;
pub mod lattice;
pub mod merom;
pub mod multivariate;
pub mod poly;
pub mod series;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use factored::FactoredGf;
pub use group::{AbelianPGroup, InvariantSequence};
pub use lattice::{Subgroup, SubgroupLattice};
pub use multivariate::MultivariateSeries;
pub use poly::Poly;
pub use series::TruncatedSeries;
pub use zeta::PlaceTable;

/// Exact small rational used for invariant sequences and pole radius exponents.
pub type Rat = num_rational::Ratio<i128>;

/// Big rational used for series coefficients and exact constants.
pub type BigRat = num_rational::BigRational;
