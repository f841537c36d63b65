//! Exact computational toolkit for spinor connections with torsion.
//!
//! The crate builds concrete gamma-matrix representations for arbitrary
//! signature `(t, s)` with `t + s <= 12`, constructs charge conjugations and
//! measures their symmetry constants, and on top of that implements the
//! bilinear projections `C_k`, the Fierz expansion, the `ad^C` calculus of
//! form-valued spinor connections (torsion, admissibility, chirality
//! projections), the exterior-fiber bracket identities, and a family of
//! concrete backgrounds (flat, Killing, p-brane) with automatic
//! differentiation for curvature and Bianchi checks.
//!
//! All algebraic identities are verified in exact Gaussian-rational
//! arithmetic; floating point enters only through the analytic coefficient
//! functions of the curved backgrounds.
//!
//! The crate is `no_std` (with `alloc`); IO, configuration files and the
//! command line live in the companion crate `spintor-cli`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod clifford;
pub mod conjugation;
pub mod connection;
pub mod exact;
pub mod exterior;
pub mod fierz;
pub mod geometry;
pub mod jet;
pub mod mat;

pub use clifford::{GammaRep, MultiIndex, PauliSet, Signature};
pub use exact::{Cx, Gi};
pub use mat::{Mat, Mono};
