//! Arithmetic, cusp geometry and Eisenstein series of Hilbert modular surfaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`] and [`ideal`]: exact arithmetic in real quadratic fields.
//! - [`lvalues`]: Dedekind zeta values, the completed zeta function and the
//!   residue/volume comparison.
//! - [`cusp`]: the unit-periodic smooth fan at the cusp, the boundary cell
//!   complex and its integral homology.
//! - [`eisenstein`]: Fourier expansions and lattice sums of Eisenstein series.
//! - [`gk`]: a symbolic model of the Eisenstein (g,K)-complex in any degree.
//!
//! Heavy loops go through [`exec`], which runs on rayon when the `parallel`
//! feature is enabled and sequentially otherwise.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod cusp;
pub mod eisenstein;
pub mod error;
pub mod exec;
pub mod field;
pub mod gk;
pub mod ideal;
pub mod lvalues;

pub use error::{Error, Result};
pub use field::{FieldElement, IntElement, QuadraticField};
pub use ideal::{FractionalIdeal, PrimeFactor, PrimeKind};
