//! Exact arithmetic for infinitesimal dilogarithms and the cluster
//! identities they satisfy.
//!
//! The layers build on each other: [`fields`] (Q and F_p), [`series`]
//! (truncated power series), [`bloch`] (the Bloch differential and wedge
//! ledgers), [`dilog`] (the dilogarithms), [`cluster`] (Y-seed mutation) and
//! [`verify`] (randomized and exhaustive identity checks).

pub mod bloch;
pub mod cluster;
pub mod dilog;
pub mod error;
pub mod exec;
pub mod fields;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
