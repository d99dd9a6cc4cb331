//! Exact Weyl-group combinatorics for complex semisimple groups of types
//! A–G (E6 is the largest supported exceptional type).
//!
//! The crate decides whether a tuple of dominant weights is a PRV point,
//! a cohomological point, or a regularly extremal point of the tensor
//! product semigroup, and it computes the Belkale–Kumar product on
//! `H*(G/B, Z)` directly from inversion sets. Two brute-force oracles keep
//! the fast paths honest: [`tensoracle`] decomposes tensor products with
//! Freudenthal and Klimyk, and [`cupcalc`] computes Schubert structure
//! constants with divided differences.

#![allow(clippy::needless_range_loop)]

pub mod bkring;
pub mod classify;
pub mod cupcalc;
pub mod error;
pub mod rootsys;
pub mod tensoracle;
pub mod weyl;

pub use classify::{Classifier, ClassifyOptions, StableMultOne, TripleClassification};
pub use cupcalc::{CoinvariantPoly, CupCalculator};
pub use error::{Error, Result};
pub use rootsys::{GroupType, RootSystem, Series, Weight};
pub use weyl::{borel_weil_bott, BwbClass, RootSubset, WeylElement, WeylGroup};
