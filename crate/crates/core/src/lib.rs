//! Numerical toolkit for Faber polynomials and Bohr-radius brackets of
//! planar condensers.
//!
//! A compact continuum `K` in the plane is described by the truncated
//! Laurent expansion of the inverse exterior Riemann map ([`laurent`]).
//! On top of that the crate builds Faber polynomials and their tail data
//! ([`faber`]), sup-norm models — exact formulas, analytic bounds and
//! sampled estimates ([`norms`]) — and upper/lower brackets for the Bohr
//! radius of the associated condenser ([`bohr`]). A small gallery of
//! built-in condensers with known maps lives in [`gallery`]; the checks
//! behind the `reproduce` command are in [`reproduce`].
//!
//! Every public operation is a pure function over immutable inputs; results
//! are deterministic and independent of call order, so batch work can be
//! fanned out across threads freely.

// `!(x > 0.0)` is used throughout to reject NaN along with the out-of-range
// values; rewriting through partial_cmp would lose that.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bohr;
pub mod dd;
pub mod error;
pub mod faber;
pub mod gallery;
pub mod laurent;
pub mod norms;
pub mod reproduce;
pub mod tables;

pub use error::{Error, Result};
pub use laurent::{ExteriorMap, LaurentSeries, MapDocument, Window};
