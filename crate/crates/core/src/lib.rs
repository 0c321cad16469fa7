//! Geodesic ball packings in regular prism tilings of the universal cover of
//! `SL(2, R)`.
//!
//! The space is modelled projectively as the interior of the one-sheeted
//! hyperboloid `-x0² - x1² + x2² + x3² < 0`. The crate provides
//!
//! - [`projective`]: points, coordinates and the isometries `S`, `T`, `R`;
//! - [`geodesics`]: the metric, the exponential map at the origin and
//!   geodesic distance;
//! - [`ball`]: volumes of geodesic balls;
//! - [`prism`]: prism tilings `(p, q)`, their side curves, volumes and groups;
//! - [`packing`]: optimal inscribed balls and packing densities;
//! - [`cli`]: the table, sweep and check commands behind the `sl2r` binary.

// `!(x < y)` is used on purpose so that NaN falls on the rejecting side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball;
pub mod cli;
pub mod error;
pub mod geodesics;
pub mod numeric;
pub mod packing;
pub mod prism;
pub mod projective;

pub use ball::{ball_volume, BallVolumeResult};
pub use error::{Error, Result};
pub use geodesics::{distance, exp_map, GeographicalCoords, ToleranceConfig};
pub use packing::{argmax_density, packing_density, sweep, PackingResult};
pub use prism::{validate, PrismParams};
