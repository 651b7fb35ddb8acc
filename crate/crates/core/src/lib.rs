//! Fit decile expenditure tables with Fermi-Dirac and polynomial models.
//!
//! A [`cdf::DecileSeries`] is turned into a cumulative point set
//! ([`cdf::CdfPoints`]), fitted by [`fit::fit_fermi_dirac`] or
//! [`fit::fit_polynomial`], and scored with the coefficient of determination.
//! [`io`] reads decile tables from CSV and renders tabular reports and plot
//! data.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cdf;
pub mod fit;
pub mod io;
pub mod model;

pub use cdf::{CdfPoints, DecileSeries, Point};
pub use fit::{FitConfig, FitError, FitResult};
pub use model::{FermiParams, ModelKind, ModelParams, PolyCoeffs};
