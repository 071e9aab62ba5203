#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod identities;
pub mod kernels;
pub mod quad;
pub mod specfun;
pub mod transforms;
