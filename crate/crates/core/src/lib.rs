//! Exact computations with decorated adelic, adelic and rational Grassmannians
//! of a finite-dimensional algebra R over Q.

pub mod adelic;
pub mod algebra;
pub mod bareiss;
pub mod bispectral;
pub mod catalog;
pub mod diffop;
pub mod error;
pub mod examples;
pub mod io;
pub mod linalg;
pub mod module;
pub mod pipeline;
pub mod poly;
pub mod props;
pub mod quasi;
pub mod quasidet;
pub mod rational;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
