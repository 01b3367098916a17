//! Zolotarev graphs and the series dissection operators `U_n`.
//!
//! The dissection operator `U_n` keeps every n-th Taylor coefficient of a
//! power series. Acting on rational functions that are analytic at the
//! origin, its eigenfunctions are governed by the functional graph
//! `a -> n a mod L` on `Z/LZ` (the Zolotarev graph `Z(n, L)`): eigenspace
//! dimensions count cycles, the kernel counts leaves, and diagonalizability
//! is a statement about branches.
//!
//! The crate is organized as:
//!
//! * [`numtheory`] - exact elementary number theory (Moebius, totient,
//!   orders, unit groups, Dirichlet characters).
//! * [`zgraph`] - construction and analysis of `Z(n, L)`: node
//!   classification, cycle census (three independent routes), trees,
//!   distances, isomorphisms, DOT export.
//! * [`series`] - periodic coefficient series with exact rational,
//!   root-of-unity, or complex-double coefficients.
//! * [`specop`] - the operator `U_n` restricted to `R(L, kappa)`: matrix
//!   model, kernel, eigenspace bases and dimensions, spectrum search,
//!   diagonalizability, primitive-root scan.
//! * [`ratfun`] - the rational-function front end: exact Taylor expansion,
//!   dissection, minimal-recurrence reconstruction, cyclotomic level/weight
//!   detection.
//! * [`simult`] - simultaneous eigenfunctions of all `U_n`: character
//!   series over unitary divisors and the dimension of their span.

#![allow(clippy::manual_is_multiple_of)]

pub mod error;
pub mod linalg;
pub mod numtheory;
pub mod ratfun;
pub mod series;
pub mod simult;
pub mod specop;
pub mod zgraph;

pub use error::{Error, Result};
pub use numtheory::{Character, SimplifiedLevel, UnitGroupDecomp};
pub use ratfun::{LevelWeightReport, Poly, RationalFunction};
pub use series::{CycValue, PeriodicSeries};
pub use simult::{CSetReport, CharacterSeries, VBasisReport};
pub use specop::{
    ArtinReport, DiagonalizabilityReport, EigenBasisFunction, EigenReport, KernelReport,
    OperatorMatrix, PhiImageWitness, SpectrumWitness,
};
pub use zgraph::{CycleCensus, NodeClass, NodeReport, ZolotarevGraph};
