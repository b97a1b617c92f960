//! Coefficient-bound machinery for m-fold symmetric bi-univalent function
//! classes defined through the Ruscheweyh derivative.
//!
//! The crate is layered bottom-up:
//!
//! - [`series`]: truncated complex power series and m-fold functions;
//! - [`inversion`]: compositional inverses, generic and closed-form;
//! - [`operators`]: the Ruscheweyh derivative with exact integer factors;
//! - [`functional`]: the class functional, its closed-form coefficients and
//!   sampled membership margins;
//! - [`bounds`]: closed-form coefficient bounds, corollaries and reductions;
//! - [`sampling`]: Carathéodory sampling and the bound-certification harness;
//! - [`exemplars`]: composition-checked catalog of example functions;
//! - [`verify`] and [`cli`]: batch identity suites and the command-line surface.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod exemplars;
pub mod functional;
pub mod inversion;
pub mod operators;
pub mod params;
pub mod report;
pub mod sampling;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{ClassKind, ClassParams};
pub use series::{MFoldFn, TruncatedSeries};
