//! Spectral analysis of a particle in the box [-L/2, L/2] with a point
//! interaction alpha δ(x - x0).
//!
//! Every function takes a [`Setup`] and a signed spectral parameter `nu`:
//! `nu > 0` is the oscillatory branch with E = c (nu/2)^2, `nu = 0` the
//! linear branch, and `nu < 0` the bound branch with E = -c (nu/2)^2.
//! The code is generic over the float type; `f64` is the default.

pub mod error;
pub mod fourier;
pub mod lattice;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod special;
pub mod spectrum;
pub mod wavefn;

pub use error::{Error, Result};
pub use lattice::{CaseTag, IntervalDescriptor, LatticePoint, PointKind};
pub use model::{Real, Setup, X0Spec};

pub type Setup64 = Setup<f64>;
pub type Setup32 = Setup<f32>;
pub type X0Spec64 = X0Spec<f64>;
