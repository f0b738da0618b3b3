//! Simulator and verification suite for MGPD steganography — hiding a
//! classical key-directed channel inside the syndrome statistics of the
//! Steane (7,1,3) code by flipping generator projection directions.
//!
//! The crate has three layers:
//!
//! * a symbolic layer ([`pauli`], [`steane`], [`channel`]) that runs the
//!   protocol as fast Pauli-frame arithmetic,
//! * a dense layer ([`dense`], [`verify`]) that re-derives the same physics
//!   from 128-dimensional matrices, with no shared code paths, and
//! * an analysis layer ([`protocol`], [`adversary`], [`metrics`]) covering
//!   the embedding budget, eavesdropper attack/detection statistics, and
//!   closed-form comparison curves.

pub mod adversary;
pub mod channel;
pub mod dense;
pub mod error;
pub mod metrics;
pub mod pauli;
pub mod protocol;
pub mod reference;
pub mod report;
pub mod stats;
pub mod steane;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
