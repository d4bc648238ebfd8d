//! High-precision toolkit around the Taylor expansion of the completed
//! zeta function at the central point: Turán moments by quadrature, the
//! three coefficient families and their exact conversions, series
//! reconstructions of classical constants, zero-sum identities, and
//! truncated-series evaluation of xi and zeta on the critical strip.

pub mod coefficients;
pub mod complex;
pub mod context;
pub mod constants;
pub mod error;
pub mod moments;
pub mod numerics;
pub mod quadrature;
pub mod report;
pub mod sturm;
pub mod xi;
pub mod zeros;

pub use complex::ComplexValue;
pub use context::{BoundKind, PrecisionContext, Real, SeriesResult};
pub use error::{Error, Result};
