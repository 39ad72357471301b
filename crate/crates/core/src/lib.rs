//! Integral homology of `nil_n`, the Lie ring of strictly upper-triangular
//! `n × n` integer matrices.
//!
//! The Chevalley–Eilenberg complex splits into weight summands `⟦w⟧`
//! ([`summand`]). Each summand is resolved either by a reduction rule
//! ([`reduce`]) or by an exact Smith normal form ([`snf`], [`homology`]), and
//! the results are summed over symmetry orbits into full tables
//! ([`assemble`]).

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod assemble;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod homology;
pub mod matrix;
pub mod morse;
pub mod reduce;
pub mod reference;
pub mod snf;
pub mod summand;
pub mod weights;

pub use complex::{cone, direct_sum, Cell, ChainGroup, ChainMap, GradedComplex};
pub use error::{Error, Result, UnfinishedOrbit};
pub use exterior::{bracket, FormalSum, Generator, Monomial, MAX_N};
pub use homology::{homology_profile, DegreeHomology, HomologyProfile, PrimePower};
pub use matrix::SparseMatrix;
pub use summand::{build_summand, Summand};
pub use weights::{canonicalize, OrbitCertificate, Permutation, WeightClass, WeightVector};

/// Version tag for cached results; bump whenever a computed value could change.
pub const ENGINE_VERSION: &str = concat!("nilhom-", env!("CARGO_PKG_VERSION"), "-1");
