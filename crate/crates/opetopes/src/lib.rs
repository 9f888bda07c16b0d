//! A symbolic kernel for opetopes built as allowable Kelly-Mac Lane graphs.
//!
//! The crate constructs the categories of k-opetopes dimension by dimension:
//! an opetope is a frame of lower-dimensional opetopes together with a
//! configuration graph wiring the inputs into the output, validated by a
//! tree criterion and by actually composing the configuration. An
//! independent slice-multicategory implementation cross-checks the counts.

pub mod crosscheck;
pub mod error;
pub mod face;
pub mod graph;
pub mod json;
pub mod labelled;
pub mod opetope;
pub mod samples;
pub mod slice;
pub mod shape;

pub use error::{Error, Result};

