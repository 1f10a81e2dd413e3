//! Exact, allocation-only core for computing with effective dimension.
//!
//! Everything here is `no_std` (with `alloc`) and works on exact rationals:
//!
//! - [`ball`]: formal balls induced by Cauchy-name prefixes and their decidable
//!   inclusion/disjointness relations.
//! - [`cover`]: finite open covers, multiplicity, shrinkings, refinements,
//!   nerves, κ-mappings, general position, (ε;η)-certificates and the
//!   piecewise-linear Menger push.
//! - [`fractal`]: digit-stream Menger compacta `M^m_n(z)`, Nöbeling membership
//!   and the explicit generic-point construction.
//! - [`dimension`]: exact cell counts, box-dimension and Assouad-exponent
//!   estimates.
//! - [`algorithmic`]: compressors, the prefix-free lift, complexity at
//!   precision and c.o.-compressibility.
//! - [`inverse_limit`]: piecewise-linear interval maps, orbit classification
//!   and branch coding of inverse-limit points.
//! - [`condensation`]: samplers for condensation-of-singularities spaces and
//!   the chain descriptor.
//!
//! IO, file formats and the command line live in the `effdim` crate.

#![no_std]

extern crate alloc;

pub mod algorithmic;
pub mod ball;
pub mod condensation;
pub mod cover;
pub mod dimension;
mod error;
pub mod fractal;
pub mod inverse_limit;
pub mod linalg;
pub mod rational;

pub use ball::{FormalBall, NamePrefix, RationalPoint, Relation, SpaceDescriptor};
pub use error::{Error, Result};
pub use rational::Rational;
