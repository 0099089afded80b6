//! Numeric layer and simulators for the probability `p_c` that the running
//! maximum of a reflected walk is attained on a complete excursion (one that
//! has returned to zero before the horizon).
//!
//! The value is computed by four mutually checking routes:
//!
//! 1. a digamma closed form, `ψ(1/4) − ψ(1/2) + 1 + π/2`;
//! 2. a semi-infinite integral of the alternating kernel `A` against a
//!    `1/sinh` weight;
//! 3. an expectation of the meander-maximum function `F` over the law of
//!    `b*·√(g/(1−g))`;
//! 4. Monte Carlo, both on discrete random-walk paths and through the exact
//!    one-dimensional laws of the continuous limit.
//!
//! The supporting laws (arcsine, Kolmogorov–Smirnov, meander maximum) are
//! exposed as a reusable layer in [`distributions`], and [`path_engine`]
//! analyzes user-supplied score sequences.

pub mod cli;
pub mod distributions;
pub mod error;
pub mod path_engine;
pub mod pc_routes;
pub mod quadrature;
pub mod specfun;

pub use error::NumericError;
pub use specfun::EvalControl;
