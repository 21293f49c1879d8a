//! Generalized Lucas matrices over prime fields and the Affine-Hill
//! public-key scheme built on them.
//!
//! * [`numtheory`]: modular exponentiation, primitive roots, inverses.
//! * [`sequences`]: two-ended k-step Fibonacci and Lucas sequences.
//! * [`matrices`]: GFM/GLM construction and mod-p matrix algebra.
//! * [`protocol`]: key setup, session agreement, text codec, encrypt/decrypt.
//! * [`analysis`]: keyspace size `|GL_lambda(F_p)|`.
//! * [`exchange`]: length-prefixed frames and a loopback two-party demo.

pub mod analysis;
pub mod error;
pub mod exchange;
pub mod matrices;
pub mod numtheory;
pub mod protocol;
pub mod sequences;

pub use error::{Error, Result};
