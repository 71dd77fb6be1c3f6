//! Products of conjugacy classes in the symmetric groups `S_n`.
//!
//! The crate computes how a product of two classes `C_λ · C_μ` splits into
//! classes, in particular the number `eta` of distinct classes it contains.
//! Two independent engines are provided, one enumerating permutations and one
//! using exact character values. The [`constructive`] module builds explicit
//! conjugators that control the fixed points of a product, and
//! [`verification`] scans whole ranges of `n` for the classification of
//! products with few classes.

pub mod error;
pub mod limits;
pub mod partitions;
pub mod class_algebra;
pub mod permutations;
pub mod constructive;
pub mod verification;

pub use error::{Error, Result};
pub use limits::Limits;
pub use partitions::{CycleType, TypePair};
pub use permutations::Permutation;
pub use constructive::{Construction, ConjugatorWitness};
pub use verification::{Statement, VerificationReport, Verifier};
