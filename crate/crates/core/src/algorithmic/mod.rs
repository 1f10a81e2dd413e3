//! Machine-relative Kolmogorov complexity.
//!
//! Complexities here are code lengths under a fixed [`Compressor`]: a total
//! injective map on bit strings with decidable domain and image. The
//! prefix-free lift, complexity at precision `r`, single-machine Schnorr
//! dimension bounds and the computably-often-compressibility check are all
//! relative to such a machine.

mod bits;
mod cocompress;
mod compressor;
mod precision;
mod prefix_free;

pub use bits::{elias_gamma, read_elias_gamma, Bits};
pub use cocompress::co_compressible_check;
pub use compressor::{compress_len, Compressor, Dictionary, Identity, RunLength};
pub use precision::{
    grid_encoding, precision_complexity, schnorr_dims, PrecisionPoint, PrecisionQuery, SchnorrEstimate,
};
pub use prefix_free::{bplus, transform_bound, PrefixFreeMachine};
