//! Exact combinatorics of Hurwitz spaces of Galois covers of curves.
//!
//! The crate is organised by topic:
//!
//! * [`group`]: permutation groups, classes, cyclic subgroups, characters.
//! * [`hurwitz`]: ramification data, transfers, genus formulas, monodromy types.
//! * [`nielsen`]: Nielsen tuples, braid orbits, Nielsen and Hurwitz numbers.
//! * [`cw`]: Chevalley–Weil decompositions and their inversion.
//! * [`graphs`]: modular graphs with group actions, quotients, boundary strata.
//! * [`taut`]: binary forms, tautological relations, Hodge integrals.
//! * [`cli`]: the command-line front end.
#![forbid(unsafe_code)]

pub mod arith;
pub mod cli;
pub mod cw;
pub mod error;
pub mod graphs;
pub mod group;
pub mod hurwitz;
pub mod nielsen;
pub mod taut;

pub use error::{Error, Result};
