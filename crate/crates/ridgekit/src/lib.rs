#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod activations;
pub mod error;
pub mod harness;
pub mod network;
pub mod profile;
pub mod quad;
pub mod ridgelet;
pub mod sampler;
pub mod spaces;
pub mod targets;
