//! Exact arithmetic in `Z[L]`, `Z[[L]]/L^N` and multivariate truncated
//! series over `Z[[L]]/L^N`.

mod lpoly;
mod mseries;
pub mod render;
mod series;

pub use lpoly::LPolynomial;
pub use mseries::{Exponent, MultiTruncatedSeries};
pub use series::TruncatedLSeries;

/// Default `L`-adic working precision.
pub const DEFAULT_ORDER: usize = 32;
/// Default total `t`-degree bound for multivariate generating functions.
pub const DEFAULT_TDEG: u32 = 12;
