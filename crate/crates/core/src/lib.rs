//! Extropy, varextropy and the inaccuracy / discrimination measures built on
//! them, with lower bounds, order-statistic identities, kernel density
//! estimation and a goodness-of-fit comparison pipeline.
//!
//! ```
//! use varj::{measures, Distribution};
//!
//! let x = Distribution::exponential(5.0).unwrap();
//! let y = Distribution::exponential(4.0).unwrap();
//! let v = measures::varj_inaccuracy(&x, &y, false).unwrap();
//! assert!((v.value - 0.3038936372).abs() < 1e-9);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod datasets;
pub mod distributions;
pub mod error;
pub mod estimation;
pub mod exec;
pub mod genfun;
pub mod gof;
pub mod measures;
pub mod montecarlo;
pub mod order_stats;
pub mod quadrature;
pub mod special;

pub use distributions::{fit_mle, Distribution, Family, Interval, Sample};
pub use error::{Error, Result};
pub use estimation::DensityEstimate;
pub use measures::{DensityLike, Measure, MeasureReport, Method};
