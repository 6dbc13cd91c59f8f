//! Differential geometry of surfaces of revolution in the semi-isotropic
//! 3-space `dx^2 - dy^2`, with the Laplace operators of both fundamental forms
//! and the order-zero Bessel functions needed to describe their eigen-surfaces.

pub mod bessel;
pub mod classify;
pub mod error;
pub mod expr;
pub mod interval;
pub mod jet;
pub mod profile;
pub mod si;
pub mod surface;

pub use error::{Error, Result};
pub use interval::Interval;
pub use profile::ProfileCurve;
pub use si::{CausalClass, Motion, Vec3SI};
pub use surface::{RevolutionKind, RevolutionSurface};
