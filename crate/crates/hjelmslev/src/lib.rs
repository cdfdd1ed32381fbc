//! Computational projective Hjelmslev geometry over finite chain rings of
//! nilpotency index 2 and order at most 25.
//!
//! The crate builds the planes PHG(2, R) for the nine rings
//! ℤ₄, 𝕊₂, ℤ₉, 𝕊₃, 𝔾₄, 𝕊₄, 𝕋₄, ℤ₂₅, 𝕊₅, verifies and constructs
//! (k, n)-arcs and blocking sets, evaluates the standard and refined upper
//! bounds for the maximum arc sizes m_n(R), runs probability-guided and
//! group-prescribed searches, and reproduces the tables of best known
//! values.

pub mod arcs;
pub mod bounds;
pub mod classical;
pub mod cli;
pub mod constructions;
pub mod extension;
pub mod files;
pub mod fixtures;
pub mod plane;
pub mod search;
pub mod tables;
pub mod gf;
pub mod ring;
