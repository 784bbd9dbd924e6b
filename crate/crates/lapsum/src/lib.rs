//! Evaluation of convergent infinite series through inverse Laplace
//! transforms: the summand g(k) is replaced by its inverse transform G(t),
//! and the series becomes an integral of G against one of 24 kernels.
//! Independent summation oracles and a dual series route cross-validate
//! every value.

pub mod catalog;
pub mod cli;
pub mod engine;
pub mod error;
pub mod expr;
pub mod gamma;
pub mod ilt;
pub mod kernel;
pub mod oracles;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
