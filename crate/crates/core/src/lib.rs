//! Exact-computation toolkit for Howe duality over small finite fields.
//!
//! The crate has three layers:
//!
//! * combinatorics: partition / bipartition calculus ([`partition`]) and the
//!   theta and Harish-Chandra series label maps ([`theta`]);
//! * geometry: exact linear algebra over F_q ([`gfq`]), finite symplectic and
//!   even-orthogonal groups, isotropic-subspace varieties, orbits, stabilizers
//!   and the triplet model ([`group`], [`geometry`]);
//! * characters: Schroedinger-model Weil operators, Dixon-Schneider character
//!   tables, Harish-Chandra functors and the theta / eta decompositions
//!   ([`classfn`], [`chartab`], [`weil`], [`functors`], [`duality`]).
//!
//! Everything is sized for desk-scale verification: groups of order up to
//! about 10^5 and Weil operators of dimension q^n <= 100.

pub mod chartab;
pub mod classfn;
pub mod duality;
pub mod error;
pub mod functors;
pub mod geometry;
pub mod gfq;
pub mod group;
pub mod partition;
pub mod theta;
pub mod weil;

pub use error::{Error, Result};
pub use partition::{BiPartition, Partition};
