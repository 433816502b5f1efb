//! Numerical toolkit for deformed oscillator algebras.

pub mod catalog;
pub mod cli;
pub mod coherent;
pub mod config;
pub mod error;
pub mod fockrep;
pub mod kerr;
pub mod qcalc;
pub mod qhermite;
pub mod repclass;
pub mod verify;

pub use error::{Error, Result};
