//! Orlicz norms of finite-support random variables, the (HJ) growth condition, and
//! desk-scale checks of Hoffmann-Jørgensen type inequalities and concentration bounds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod concentration;
pub mod dist;
pub mod error;
pub mod lab;
pub mod norm;
pub mod numeric;
pub mod orlicz;
pub mod cli;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
pub use dist::{Family, FiniteDist, NormTag};
pub use norm::{Method, NormEstimate};
pub use orlicz::{OrliczFunction, OrliczSpec, Scale};
