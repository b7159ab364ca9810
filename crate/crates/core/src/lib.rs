//! Dephasing of a matter-wave interferometer by a scale-invariant stochastic
//! gravitational-wave background, and the critical sphere size above which
//! the interference fringes wash out.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod oracle;
pub mod critical;
mod quadrature;
mod root;
pub mod spectral;
pub mod variance;

pub use error::{Error, Result};
pub use model::{
    BandwidthModel, FilterShape, GWBackground, InterferometerConfig, PhysicalConstants, SphereSpec,
    VarianceMethodTag, VarianceResult,
};
pub use variance::{QuadratureSettings, TailPolicy, VarianceMethod};
