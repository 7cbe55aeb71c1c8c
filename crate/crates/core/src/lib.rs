//! Finite, fully materialized models of d-cluster categories of type A.
//!
//! The crate constructs the orbit category `C_d(A_n) = D^b(kA_n) / tau^{-1}[d-1]`
//! as concrete data — objects, graded Hom bases, composition constants — and
//! builds the cotorsion-pair calculus on top of it: rigidity and cluster
//! tilting tests, classification of cotorsion pairs by their cores,
//! t-structure and co-t-structure searches, mutation, and Nakaoka hearts.
//! A geometric polygon model cross-validates the categorical engine for d=2.
//!
//! All arithmetic is exact rational. Enumeration sweeps run in parallel with
//! rayon when the default `parallel` feature is enabled, and fall back to
//! sequential iteration otherwise; `sched::Mode` selects explicitly.

pub mod error;
pub mod linalg;
pub mod naming;
pub mod repcore;
pub mod sched;

pub mod derived;
pub mod orbit;
pub mod polygon;

pub mod cotorsion;
pub mod subcalc;

pub mod verify;

pub use error::{CyError, Result};
