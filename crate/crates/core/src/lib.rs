//! Numerical core of the shallow-water scheme laboratory.
//!
//! Implements three shock-capturing schemes for the 1-D Saint-Venant system —
//! the second-order finite-volume central-upwind (CU) scheme, the third-order
//! finite-difference Rusanov-Burstein-Mirin (RBM) scheme, and the fifth-order
//! finite-difference alternative WENO (A-WENO) scheme — together with the
//! combined RBM–CU / RBM–A-WENO schemes driven by a weak-local-residual shock
//! detector, and the three-imbedded-grid machinery for measuring experimental
//! pointwise, integral, and W⁻¹,¹ convergence rates.
//!
//! The crate is `no_std`-compatible (`default-features = false,
//! features = ["libm"]`); all IO, benchmark definitions, and file formats live
//! in the companion `swlab` crate.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("swlab-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod combined;
pub mod error;
mod float;
pub mod grid;
pub mod rates;
pub mod reconstruction;
pub mod scheme;
pub mod swe;
pub mod time_march;

pub use error::{Error, Result};
pub use grid::{Grid1D, GridLevel, ImbeddedTriple};
pub use scheme::Boundary;
pub use swe::SwState;

/// Evolving solution: one state per cell (averages) or per cell center
/// (point values), depending on the scheme that owns it.
pub type Field = alloc::vec::Vec<SwState>;
